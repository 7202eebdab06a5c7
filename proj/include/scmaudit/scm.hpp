#ifndef SCMAUDIT_SCM_HPP
#define SCMAUDIT_SCM_HPP

#include <span>
#include <string>
#include <vector>

#include "scmaudit/embedding.hpp"

namespace scmaudit {

/// Canonical six-word warmth and competence seed sets.
const std::vector<std::string>& default_warmth_words();
const std::vector<std::string>& default_competence_words();

/// Unit warmth/competence directions spanning the projection plane.
struct ScmBasis {
    std::vector<double> warmth_dir;      // unit vector
    std::vector<double> competence_dir;  // unit vector
    double dot = 0.0;                    // warmth_dir . competence_dir
    std::vector<std::string> warmth_words;
    std::vector<std::string> competence_words;

    std::size_t dimension() const { return warmth_dir.size(); }
};

struct ScmCoordinates {
    double warmth = 0.0;
    double competence = 0.0;
};

/// Normalized mean embedding of each word set. Throws EmptyWordSet,
/// CollinearBasis (|dot| >= 1 - 1e-9), or propagates embedder errors.
ScmBasis build_basis(const std::vector<std::string>& warmth_words,
                     const std::vector<std::string>& competence_words,
                     Embedder& embedder);

/// Oblique projection of x onto the warmth/competence plane:
///   warmth     = (x.u_w - d * x.u_c) / (1 - d^2)
///   competence = (x.u_c - d * x.u_w) / (1 - d^2)
/// These are the least-squares coefficients of x on {u_w, u_c}.
ScmCoordinates project(std::span<const double> x, const ScmBasis& basis);

/// x minus its projection; orthogonal to both basis directions.
std::vector<double> residual(std::span<const double> x, const ScmBasis& basis);

ScmCoordinates score_description(const std::string& text, const ScmBasis& basis,
                                 Embedder& embedder);

/// Full-precision basis export for reproducible runs.
void save_basis(const ScmBasis& basis, const std::string& path);
ScmBasis load_basis(const std::string& path);

double dot_product(std::span<const double> a, std::span<const double> b);
double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace scmaudit

#endif  // SCMAUDIT_SCM_HPP
