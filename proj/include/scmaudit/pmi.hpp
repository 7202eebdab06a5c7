#ifndef SCMAUDIT_PMI_HPP
#define SCMAUDIT_PMI_HPP

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "scmaudit/analysis.hpp"
#include "scmaudit/scm.hpp"

namespace scmaudit {

/// Lowercases, splits on non-alphabetic boundaries, keeps intra-word hyphens
/// and tokens of length >= 2.
std::vector<std::string> tokenize(const std::string& text);

struct TokenCounts {
    std::unordered_map<std::string, long> counts;
    long total = 0;

    void add(const std::vector<std::string>& tokens);
    long count(const std::string& word) const;
};

/// PMI(w; a) = log2(P(w|a) / P(w)) with token frequencies. Throws ZeroCount
/// when the word is absent from the aspect subcorpus.
double compute_pmi(const std::string& word, const TokenCounts& aspect,
                   const TokenCounts& corpus);

struct WordSimilarity {
    double cos_warmth = 0.0;
    double cos_competence = 0.0;
};

WordSimilarity word_similarity(const std::string& word, const ScmBasis& basis,
                               Embedder& embedder);

/// Words whose embedding direction is within 60 degrees of either axis:
/// max(|cos_w|, |cos_c|) >= threshold (boundary inclusive).
std::set<std::string> filter_words(const std::set<std::string>& vocab,
                                   const ScmBasis& basis, Embedder& embedder,
                                   double threshold = 0.5);

struct PmiEntry {
    std::string word;
    Axis axis = Axis::color;
    std::string level;
    double pmi = 0.0;
    long count_in_aspect = 0;
    long count_total = 0;
    double cos_w = 0.0;
    double cos_c = 0.0;
};

/// Descending PMI; ties broken by descending aspect count, then word.
std::vector<PmiEntry> top_k(std::vector<PmiEntry> entries, std::size_t k = 20);

/// Intersection of per-model top-k word lists.
std::set<std::string> common_words(
    const std::vector<std::vector<PmiEntry>>& per_model_lists);

/// Ranked SCM-relevant words for one (axis, level) aspect of one model's
/// description corpus.
std::vector<PmiEntry> pmi_table(const std::vector<std::string>& aspect_texts,
                                const std::vector<std::string>& all_texts,
                                Axis axis, const std::string& level,
                                const ScmBasis& basis, Embedder& embedder,
                                double threshold = 0.5, std::size_t k = 20);

}  // namespace scmaudit

#endif  // SCMAUDIT_PMI_HPP
