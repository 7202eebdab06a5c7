#include "scmaudit/scm.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "scmaudit/errors.hpp"

namespace scmaudit {

namespace {
constexpr double kCollinearEps = 1e-9;
}

const std::vector<std::string>& default_warmth_words() {
    static const std::vector<std::string> words{
        "friendly", "well-intentioned", "trustworthy",
        "warm",     "good-natured",     "sincere"};
    return words;
}

const std::vector<std::string>& default_competence_words() {
    static const std::vector<std::string> words{
        "competent", "confident",   "capable",
        "efficient", "intelligent", "skillful"};
    return words;
}

double dot_product(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dot product over " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    const double na = std::sqrt(dot_product(a, a));
    const double nb = std::sqrt(dot_product(b, b));
    if (na == 0.0 || nb == 0.0)
        throw DegenerateBasis("cosine of zero vector");
    return dot_product(a, b) / (na * nb);
}

namespace {

std::vector<double> unit_mean_embedding(const std::vector<std::string>& words,
                                        Embedder& embedder, const char* which) {
    if (words.empty())
        throw EmptyWordSet(std::string(which) + " word set is empty");
    std::vector<double> mean(embedder.dimension(), 0.0);
    for (const auto& word : words) {
        const EmbeddingVector vec = embedder.embed(word);
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += vec.values[i];
    }
    for (double& v : mean) v /= static_cast<double>(words.size());
    const double norm = std::sqrt(dot_product(mean, mean));
    if (norm == 0.0)
        throw DegenerateBasis(std::string(which) + " mean embedding is zero");
    for (double& v : mean) v /= norm;
    return mean;
}

}  // namespace

ScmBasis build_basis(const std::vector<std::string>& warmth_words,
                     const std::vector<std::string>& competence_words,
                     Embedder& embedder) {
    ScmBasis basis;
    basis.warmth_words = warmth_words;
    basis.competence_words = competence_words;
    basis.warmth_dir = unit_mean_embedding(warmth_words, embedder, "warmth");
    basis.competence_dir = unit_mean_embedding(competence_words, embedder, "competence");
    basis.dot = dot_product(basis.warmth_dir, basis.competence_dir);
    if (std::fabs(basis.dot) >= 1.0 - kCollinearEps)
        throw CollinearBasis("warmth/competence directions have |dot| = " +
                             std::to_string(std::fabs(basis.dot)));
    return basis;
}

ScmCoordinates project(std::span<const double> x, const ScmBasis& basis) {
    if (x.size() != basis.dimension())
        throw DimensionMismatch("input has dimension " + std::to_string(x.size()) +
                                ", basis has " + std::to_string(basis.dimension()));
    const double d = basis.dot;
    const double denom = 1.0 - d * d;
    if (denom < kCollinearEps)
        throw DegenerateBasis("1 - d^2 = " + std::to_string(denom));
    const double dw = dot_product(x, basis.warmth_dir);
    const double dc = dot_product(x, basis.competence_dir);
    return ScmCoordinates{(dw - d * dc) / denom, (dc - d * dw) / denom};
}

std::vector<double> residual(std::span<const double> x, const ScmBasis& basis) {
    const ScmCoordinates coords = project(x, basis);
    std::vector<double> res(x.begin(), x.end());
    for (std::size_t i = 0; i < res.size(); ++i)
        res[i] -= coords.warmth * basis.warmth_dir[i] +
                  coords.competence * basis.competence_dir[i];
    return res;
}

ScmCoordinates score_description(const std::string& text, const ScmBasis& basis,
                                 Embedder& embedder) {
    return project(embedder.embed(text).values, basis);
}

void save_basis(const ScmBasis& basis, const std::string& path) {
    nlohmann::json doc;
    doc["dimension"] = basis.dimension();
    doc["warmth_words"] = basis.warmth_words;
    doc["competence_words"] = basis.competence_words;
    doc["warmth_dir"] = basis.warmth_dir;
    doc["competence_dir"] = basis.competence_dir;
    doc["dot"] = basis.dot;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write basis file '" + path + "'");
    out << doc.dump(2) << '\n';
}

ScmBasis load_basis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open basis file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
        ScmBasis basis;
        basis.warmth_words = doc.at("warmth_words").get<std::vector<std::string>>();
        basis.competence_words =
            doc.at("competence_words").get<std::vector<std::string>>();
        basis.warmth_dir = doc.at("warmth_dir").get<std::vector<double>>();
        basis.competence_dir = doc.at("competence_dir").get<std::vector<double>>();
        basis.dot = doc.at("dot").get<double>();
        if (basis.competence_dir.size() != basis.warmth_dir.size() ||
            basis.warmth_dir.size() != doc.at("dimension").get<std::size_t>())
            throw DimensionMismatch("basis file dimensions disagree");
        return basis;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed basis file '" + path + "': " + e.what());
    }
}

}  // namespace scmaudit
