#ifndef SCMAUDIT_EMBEDDING_HPP
#define SCMAUDIT_EMBEDDING_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace scmaudit {

std::uint64_t text_digest(const std::string& text);
std::string digest_hex(std::uint64_t digest);

struct EmbeddingVector {
    std::vector<double> values;
    std::uint64_t source_text_hash = 0;

    std::size_t dimension() const { return values.size(); }
};

/// Deterministic text-embedding contract. Identical text yields a
/// bitwise-identical vector within one backend configuration.
class Embedder {
  public:
    virtual ~Embedder() = default;

    virtual std::string backend_id() const = 0;
    virtual std::size_t dimension() const = 0;

    /// Throws EmptyText for whitespace-only input, DimensionMismatch if the
    /// backend returns the wrong dimension, BackendUnavailable on failure.
    EmbeddingVector embed(const std::string& text);

    virtual std::vector<EmbeddingVector> embed_batch(
        const std::vector<std::string>& texts);

  protected:
    virtual std::vector<double> embed_raw(const std::string& text) = 0;
};

/// Test backend: each whitespace token maps to a hash-seeded pseudorandom
/// unit vector; a text embeds to the mean of its token vectors, so texts
/// sharing tokens have genuinely correlated embeddings.
class ToyEmbedder : public Embedder {
  public:
    explicit ToyEmbedder(std::size_t dimension, std::uint64_t seed = 0);

    std::string backend_id() const override;
    std::size_t dimension() const override { return dimension_; }

  protected:
    std::vector<double> embed_raw(const std::string& text) override;

  private:
    std::size_t dimension_;
    std::uint64_t seed_;
};

/// Fixed in-memory text -> vector table. Unknown text raises
/// BackendUnavailable.
class StaticEmbedder : public Embedder {
  public:
    StaticEmbedder(std::size_t dimension,
                   std::map<std::string, std::vector<double>> table,
                   std::string id = "static");

    std::string backend_id() const override { return id_; }
    std::size_t dimension() const override { return dimension_; }

  protected:
    std::vector<double> embed_raw(const std::string& text) override;

  private:
    std::size_t dimension_;
    std::map<std::string, std::vector<double>> table_;
    std::string id_;
};

/// File-backed frozen embeddings: one record per line,
/// "<16-hex text digest> v1 v2 ... vD".
class FrozenEmbedder : public Embedder {
  public:
    explicit FrozenEmbedder(const std::string& path);

    std::string backend_id() const override;
    std::size_t dimension() const override { return dimension_; }

    static void write_store(const std::string& path,
                            const std::vector<std::string>& texts,
                            Embedder& source);

  protected:
    std::vector<double> embed_raw(const std::string& text) override;

  private:
    std::size_t dimension_ = 0;
    std::string path_;
    std::unordered_map<std::uint64_t, std::vector<double>> table_;
};

/// Thread-safe memoizing wrapper keyed by (backend_id, text digest), with
/// optional file persistence in the frozen-store format.
class CachingEmbedder : public Embedder {
  public:
    explicit CachingEmbedder(std::shared_ptr<Embedder> inner,
                             std::optional<std::string> cache_path = std::nullopt);

    std::string backend_id() const override { return inner_->backend_id(); }
    std::size_t dimension() const override { return inner_->dimension(); }

    std::size_t backend_calls() const { return backend_calls_; }

  protected:
    std::vector<double> embed_raw(const std::string& text) override;

  private:
    std::shared_ptr<Embedder> inner_;
    std::optional<std::string> cache_path_;
    std::unordered_map<std::uint64_t, std::vector<double>> cache_;
    std::mutex mutex_;
    std::size_t backend_calls_ = 0;
};

/// HTTP backend: POST {"texts": [...]} -> {"vectors": [[...]]}. The expected
/// dimension is declared in configuration.
class RemoteEmbedder : public Embedder {
  public:
    RemoteEmbedder(std::string host, int port, std::string path,
                   std::size_t dimension);

    std::string backend_id() const override;
    std::size_t dimension() const override { return dimension_; }

    std::vector<EmbeddingVector> embed_batch(
        const std::vector<std::string>& texts) override;

  protected:
    std::vector<double> embed_raw(const std::string& text) override;

  private:
    std::vector<std::vector<double>> request(const std::vector<std::string>& texts);

    std::string host_;
    int port_;
    std::string path_;
    std::size_t dimension_;
};

}  // namespace scmaudit

#endif  // SCMAUDIT_EMBEDDING_HPP
