#ifndef SCMAUDIT_TESTS_HELPERS_HPP
#define SCMAUDIT_TESTS_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scmaudit/collector.hpp"
#include "scmaudit/corpus.hpp"
#include "scmaudit/errors.hpp"
#include "scmaudit/scm.hpp"

namespace scmaudit::testing {

/// Full 180-image grid for one occupation, image ids "<occupation>-NNN".
inline std::vector<ImageRecord> full_grid(const std::string& occupation) {
    std::vector<ImageRecord> records;
    int n = 0;
    for (int s = 0; s < kScenariosPerOccupation; ++s)
        for (Gender g : kAllGenders)
            for (Race r : kAllRaces)
                for (ClothingColor c : kAllColors) {
                    ImageRecord rec;
                    char buf[16];
                    std::snprintf(buf, sizeof(buf), "-%03d", n++);
                    rec.image_id = occupation + buf;
                    rec.occupation = occupation;
                    rec.scenario_index = s;
                    rec.gender = g;
                    rec.race = r;
                    rec.color = c;
                    records.push_back(std::move(rec));
                }
    return records;
}

/// Independent least-squares check for project(): builds the 2x2 normal
/// equations numerically from the basis vectors (no unit-norm assumption)
/// and solves them by Gaussian elimination with partial pivoting.
inline ScmCoordinates normal_equations_oracle(std::span<const double> x,
                                              const ScmBasis& basis) {
    auto dot = [](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    double g[2][3] = {
        {dot(basis.warmth_dir, basis.warmth_dir),
         dot(basis.warmth_dir, basis.competence_dir), dot(x, basis.warmth_dir)},
        {dot(basis.competence_dir, basis.warmth_dir),
         dot(basis.competence_dir, basis.competence_dir),
         dot(x, basis.competence_dir)}};
    if (std::fabs(g[1][0]) > std::fabs(g[0][0]))
        for (int j = 0; j < 3; ++j) std::swap(g[0][j], g[1][j]);
    const double factor = g[1][0] / g[0][0];
    for (int j = 0; j < 3; ++j) g[1][j] -= factor * g[0][j];
    const double beta = g[1][2] / g[1][1];
    const double alpha = (g[0][2] - g[0][1] * beta) / g[0][0];
    return ScmCoordinates{alpha, beta};
}

/// Deterministic gaussian vectors for fixtures.
inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dim,
                                         double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    std::vector<double> v(dim);
    for (double& x : v) x = normal(rng);
    return v;
}

inline std::vector<double> unit(std::vector<double> v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

/// Random valid basis with |dot| safely below 1.
inline ScmBasis random_basis(std::mt19937_64& rng, std::size_t dim) {
    ScmBasis basis;
    basis.warmth_dir = unit(random_vector(rng, dim));
    while (true) {
        basis.competence_dir = unit(random_vector(rng, dim));
        double d = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            d += basis.warmth_dir[i] * basis.competence_dir[i];
        if (std::fabs(d) < 0.99) {
            basis.dot = d;
            break;
        }
    }
    basis.warmth_words = {"w"};
    basis.competence_words = {"c"};
    return basis;
}

/// Scripted endpoint: canned text keyed by attributes, optional failure
/// schedule, call counting.
class MockEndpoint : public ChatEndpoint {
  public:
    std::string describe(const ImageRecord& image, const std::string& model_id,
                         const CollectorConfig&) override {
        ++calls;
        if (fail_remaining > 0) {
            --fail_remaining;
            throw EndpointError("scripted failure");
        }
        if (!fail_image_id.empty() && image.image_id == fail_image_id)
            throw EndpointError("scripted failure for " + fail_image_id);
        return canned_text(image, model_id);
    }

    virtual std::string canned_text(const ImageRecord& image,
                                    const std::string& model_id) {
        return "the " + image.occupation + " " + to_string(image.gender) + " " +
               to_string(image.race) + " " + to_string(image.color) + " scene " +
               std::to_string(image.scenario_index) + " by " + model_id;
    }

    int calls = 0;
    int fail_remaining = 0;
    std::string fail_image_id;
};

}  // namespace scmaudit::testing

#endif  // SCMAUDIT_TESTS_HELPERS_HPP
