#include "scmaudit/pmi.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "scmaudit/errors.hpp"

namespace scmaudit {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    auto is_letter = [](unsigned char c) { return std::isalpha(c) != 0; };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_letter(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '-' && !current.empty() && i + 1 < text.size() &&
                   is_letter(static_cast<unsigned char>(text[i + 1]))) {
            current.push_back('-');
        } else if (!current.empty()) {
            if (current.size() >= 2) tokens.push_back(current);
            current.clear();
        }
    }
    if (current.size() >= 2) tokens.push_back(current);
    return tokens;
}

void TokenCounts::add(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) counts[t]++;
    total += static_cast<long>(tokens.size());
}

long TokenCounts::count(const std::string& word) const {
    auto it = counts.find(word);
    return it == counts.end() ? 0 : it->second;
}

double compute_pmi(const std::string& word, const TokenCounts& aspect,
                   const TokenCounts& corpus) {
    const long in_corpus = corpus.count(word);
    if (in_corpus == 0 || corpus.total == 0)
        throw ZeroCount("'" + word + "' does not occur in the corpus");
    const long in_aspect = aspect.count(word);
    if (in_aspect == 0 || aspect.total == 0)
        throw ZeroCount("'" + word + "' does not occur in the aspect subcorpus");
    const double p_w_a = static_cast<double>(in_aspect) / aspect.total;
    const double p_w = static_cast<double>(in_corpus) / corpus.total;
    return std::log2(p_w_a / p_w);
}

WordSimilarity word_similarity(const std::string& word, const ScmBasis& basis,
                               Embedder& embedder) {
    const EmbeddingVector vec = embedder.embed(word);
    return WordSimilarity{cosine_similarity(vec.values, basis.warmth_dir),
                          cosine_similarity(vec.values, basis.competence_dir)};
}

std::set<std::string> filter_words(const std::set<std::string>& vocab,
                                   const ScmBasis& basis, Embedder& embedder,
                                   double threshold) {
    std::set<std::string> retained;
    for (const auto& word : vocab) {
        const WordSimilarity sim = word_similarity(word, basis, embedder);
        if (std::fabs(sim.cos_warmth) >= threshold ||
            std::fabs(sim.cos_competence) >= threshold)
            retained.insert(word);
    }
    return retained;
}

std::vector<PmiEntry> top_k(std::vector<PmiEntry> entries, std::size_t k) {
    std::sort(entries.begin(), entries.end(),
              [](const PmiEntry& a, const PmiEntry& b) {
                  if (a.pmi != b.pmi) return a.pmi > b.pmi;
                  if (a.count_in_aspect != b.count_in_aspect)
                      return a.count_in_aspect > b.count_in_aspect;
                  return a.word < b.word;
              });
    if (entries.size() > k) entries.resize(k);
    return entries;
}

std::set<std::string> common_words(
    const std::vector<std::vector<PmiEntry>>& per_model_lists) {
    std::set<std::string> common;
    bool first = true;
    for (const auto& list : per_model_lists) {
        std::set<std::string> words;
        for (const auto& entry : list) words.insert(entry.word);
        if (first) {
            common = std::move(words);
            first = false;
        } else {
            std::set<std::string> kept;
            std::set_intersection(common.begin(), common.end(), words.begin(),
                                  words.end(), std::inserter(kept, kept.begin()));
            common = std::move(kept);
        }
    }
    return common;
}

std::vector<PmiEntry> pmi_table(const std::vector<std::string>& aspect_texts,
                                const std::vector<std::string>& all_texts,
                                Axis axis, const std::string& level,
                                const ScmBasis& basis, Embedder& embedder,
                                double threshold, std::size_t k) {
    TokenCounts aspect, corpus;
    for (const auto& text : aspect_texts) aspect.add(tokenize(text));
    std::set<std::string> vocab;
    for (const auto& text : all_texts) {
        const auto tokens = tokenize(text);
        corpus.add(tokens);
        vocab.insert(tokens.begin(), tokens.end());
    }

    const std::set<std::string> retained =
        filter_words(vocab, basis, embedder, threshold);

    std::vector<PmiEntry> entries;
    for (const auto& word : retained) {
        if (aspect.count(word) == 0) continue;  // zero-count entries excluded
        PmiEntry entry;
        entry.word = word;
        entry.axis = axis;
        entry.level = level;
        entry.pmi = compute_pmi(word, aspect, corpus);
        entry.count_in_aspect = aspect.count(word);
        entry.count_total = corpus.count(word);
        const WordSimilarity sim = word_similarity(word, basis, embedder);
        entry.cos_w = sim.cos_warmth;
        entry.cos_c = sim.cos_competence;
        entries.push_back(std::move(entry));
    }
    return top_k(std::move(entries), k);
}

}  // namespace scmaudit
