#ifndef SCMAUDIT_REPORT_HPP
#define SCMAUDIT_REPORT_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scmaudit/analysis.hpp"
#include "scmaudit/collector.hpp"
#include "scmaudit/corpus.hpp"
#include "scmaudit/embedding.hpp"
#include "scmaudit/pmi.hpp"
#include "scmaudit/scm.hpp"
#include "scmaudit/sentiment.hpp"

namespace scmaudit {

struct EmbedderConfig {
    std::string kind = "toy";  // toy | frozen | remote
    std::size_t dimension = 8;
    std::uint64_t seed = 0;
    std::string path;  // frozen store
    std::string host;  // remote
    int port = 0;
    std::string route = "/embed";
};

struct EndpointConfig {
    std::string host;
    int port = 0;
    std::string path = "/v1/chat/completions";
    std::string api_key_env = "SCMAUDIT_API_KEY";
};

struct RunConfig {
    std::string manifest_path;
    std::string store_path;        // description store (JSONL)
    std::string output_dir;
    std::vector<std::string> model_ids;
    std::optional<EndpointConfig> endpoint;  // absent: analysis-only run
    CollectorConfig collector;
    EmbedderConfig embedder;
    std::string lexicon_path = "data/sentiment_lexicon.txt";
    std::vector<std::string> warmth_words = default_warmth_words();
    std::vector<std::string> competence_words = default_competence_words();
    double alpha = 0.05;
    double cosine_threshold = 0.5;
    std::size_t top_k = 20;
    bool strict_pairing = true;
};

RunConfig load_run_config(const std::string& path);

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config);

/// Scores every stored description of the configured models: sentiment
/// compound plus warmth/competence coordinates.
std::vector<ScoreRecord> score_descriptions(
    const std::vector<DescriptionRecord>& descriptions, const ScmBasis& basis,
    Embedder& embedder, const SentimentScorer& scorer);

/// Human-readable summary table: contrast rows grouped by metric, one column
/// per model, t-statistics with significance stars, and a "# of significant
/// stereotypes" footer per metric block.
std::string render_table2(
    const std::map<std::string, std::vector<PairedTestResult>>& per_model,
    double alpha = 0.05);

struct PipelineArtifacts {
    ManifestReport manifest_report;
    CollectionSummary collection;
    std::vector<ScoreRecord> scores;
    std::map<std::string, std::vector<PairedTestResult>> batteries;
    std::map<std::string, CorrelationResult> correlations;
    bool had_failures = false;
};

/// Runs validate -> collect -> score -> analyze -> pmi -> report, writing
/// every artifact under config.output_dir. Deterministic given frozen
/// descriptions and embeddings. Stage errors are rethrown as PipelineError
/// with the stage name; artifacts written before the failure remain.
PipelineArtifacts run_pipeline(const RunConfig& config,
                               ChatEndpoint* endpoint = nullptr);

}  // namespace scmaudit

#endif  // SCMAUDIT_REPORT_HPP
