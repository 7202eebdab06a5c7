#ifndef SCMAUDIT_SENTIMENT_HPP
#define SCMAUDIT_SENTIMENT_HPP

#include <string>
#include <unordered_map>

namespace scmaudit {

struct SentimentScore {
    double compound = 0.0;  // in [-1, 1]
};

/// Scorer contract used by the analysis pipeline.
class SentimentScorer {
  public:
    virtual ~SentimentScorer() = default;
    virtual SentimentScore score(const std::string& text) const = 0;
};

/// VADER-compatible lexicon-and-rules scorer. Reproduces the published rule
/// set: booster words, negation (including "n't", "never so", "at least"),
/// ALL-CAPS emphasis, "but" re-weighting, special-case idioms, and !/?
/// punctuation amplification, normalized to [-1, 1] with alpha = 15.
class VaderScorer : public SentimentScorer {
  public:
    /// Loads a lexicon file with tab-separated "token<TAB>valence" lines.
    /// Throws ScorerUnavailable if the file is missing or empty.
    explicit VaderScorer(const std::string& lexicon_path);

    SentimentScore score(const std::string& text) const override;

    std::size_t lexicon_size() const { return lexicon_.size(); }

  private:
    std::unordered_map<std::string, double> lexicon_;
};

}  // namespace scmaudit

#endif  // SCMAUDIT_SENTIMENT_HPP
