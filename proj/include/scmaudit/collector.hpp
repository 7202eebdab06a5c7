#ifndef SCMAUDIT_COLLECTOR_HPP
#define SCMAUDIT_COLLECTOR_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "scmaudit/corpus.hpp"

namespace scmaudit {

/// Default description-collection protocol: one open-ended prompt,
/// deterministic decoding.
struct CollectorConfig {
    std::string prompt = "Describe this person objectively.";
    double temperature = 0.0;
    int max_tokens = 1024;
    int retry_limit = 3;
    int concurrency = 4;
    int backoff_initial_ms = 250;
};

/// One generated description of one image under one model configuration.
struct DescriptionRecord {
    std::string image_id;
    std::string model_id;
    std::string prompt;
    std::string text;
    double temperature = 0.0;
    int max_tokens = 0;
    std::string collected_at;  // ISO-8601 UTC
};

/// Produces one description for an image; implementations own transport.
class ChatEndpoint {
  public:
    virtual ~ChatEndpoint() = default;

    /// Single attempt, no retries. Throws EndpointError / ImageUnreadable.
    virtual std::string describe(const ImageRecord& image,
                                 const std::string& model_id,
                                 const CollectorConfig& config) = 0;
};

/// OpenAI-compatible chat-completions endpoint. Sends one user message with
/// an image part (base64 data URL from image.uri) followed by a text part.
/// The API key is read from an environment variable, never from config files.
class OpenAiEndpoint : public ChatEndpoint {
  public:
    OpenAiEndpoint(std::string host, int port,
                   std::string path = "/v1/chat/completions",
                   std::string api_key_env = "SCMAUDIT_API_KEY");

    std::string describe(const ImageRecord& image, const std::string& model_id,
                         const CollectorConfig& config) override;

    /// Request body for one (image, model) pair; exposed for testing the
    /// wire format.
    static std::string build_request_json(const std::string& image_data_url,
                                          const std::string& model_id,
                                          const CollectorConfig& config);

    static std::string image_data_url(const std::string& uri);

  private:
    std::string host_;
    int port_;
    std::string path_;
    std::string api_key_env_;
};

std::string base64_encode(const std::uint8_t* data, std::size_t size);

/// Append-only JSONL store keyed by (image_id, model_id, prompt digest).
/// Thread-safe for concurrent appends.
class DescriptionStore {
  public:
    DescriptionStore() = default;

    /// Binds the store to a file, loading existing records.
    explicit DescriptionStore(std::string path);

    std::optional<DescriptionRecord> find(const std::string& image_id,
                                          const std::string& model_id,
                                          const std::string& prompt) const;

    /// Persists and indexes; a duplicate key is rejected.
    void append(const DescriptionRecord& record);

    std::size_t size() const;
    std::vector<DescriptionRecord> all() const;

  private:
    std::optional<std::string> path_;
    std::map<std::string, DescriptionRecord> records_;
    mutable std::mutex mutex_;
};

/// Cached collection with bounded retries and exponential backoff.
DescriptionRecord collect_description(const ImageRecord& image,
                                      const std::string& model_id,
                                      ChatEndpoint& endpoint,
                                      DescriptionStore& store,
                                      const CollectorConfig& config);

struct CollectionSummary {
    int completed = 0;
    int cached = 0;
    int failed = 0;
    std::vector<std::pair<std::string, std::string>> failures;  // (image, model)
};

/// Attempts every (image, model) pair with config.concurrency workers.
/// Failures are enumerated in the summary, never fatal. Idempotent on
/// re-run through the cache.
CollectionSummary collect_all(const std::vector<ImageRecord>& records,
                              const std::vector<std::string>& model_ids,
                              ChatEndpoint& endpoint, DescriptionStore& store,
                              const CollectorConfig& config);

}  // namespace scmaudit

#endif  // SCMAUDIT_COLLECTOR_HPP
