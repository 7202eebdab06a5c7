#include "scmaudit/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "scmaudit/errors.hpp"

namespace scmaudit {

namespace {

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t text_digest(const std::string& text) {
    // FNV-1a 64-bit
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

EmbeddingVector Embedder::embed(const std::string& text) {
    if (trimmed(text).empty()) throw EmptyText("embed() requires non-empty text");
    std::vector<double> values = embed_raw(text);
    if (values.size() != dimension())
        throw DimensionMismatch("backend returned dimension " +
                                std::to_string(values.size()) + ", expected " +
                                std::to_string(dimension()));
    for (double v : values)
        if (!std::isfinite(v))
            throw BackendUnavailable("backend returned non-finite value");
    return EmbeddingVector{std::move(values), text_digest(text)};
}

std::vector<EmbeddingVector> Embedder::embed_batch(
    const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed(t));
    return out;
}

// ---------------------------------------------------------------------------
// ToyEmbedder

ToyEmbedder::ToyEmbedder(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {}

std::string ToyEmbedder::backend_id() const {
    return "toy-d" + std::to_string(dimension_) + "-s" + std::to_string(seed_);
}

std::vector<double> ToyEmbedder::embed_raw(const std::string& text) {
    std::vector<double> sum(dimension_, 0.0);
    std::istringstream is(text);
    std::string token;
    std::size_t n_tokens = 0;
    while (is >> token) {
        std::uint64_t state = splitmix64(text_digest(token) ^ seed_);
        std::vector<double> vec(dimension_);
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < dimension_; ++i) {
            // Box-Muller over two splitmix64 uniforms
            state = splitmix64(state);
            const double u1 = (static_cast<double>(state >> 11) + 0.5) / 9007199254740992.0;
            state = splitmix64(state);
            const double u2 = static_cast<double>(state >> 11) / 9007199254740992.0;
            vec[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            norm_sq += vec[i] * vec[i];
        }
        const double norm = std::sqrt(norm_sq);
        for (std::size_t i = 0; i < dimension_; ++i) sum[i] += vec[i] / norm;
        ++n_tokens;
    }
    if (n_tokens == 0) throw EmptyText("no tokens");
    for (double& v : sum) v /= static_cast<double>(n_tokens);
    return sum;
}

// ---------------------------------------------------------------------------
// StaticEmbedder

StaticEmbedder::StaticEmbedder(std::size_t dimension,
                               std::map<std::string, std::vector<double>> table,
                               std::string id)
    : dimension_(dimension), table_(std::move(table)), id_(std::move(id)) {}

std::vector<double> StaticEmbedder::embed_raw(const std::string& text) {
    auto it = table_.find(text);
    if (it == table_.end())
        throw BackendUnavailable("no static embedding for '" + text + "'");
    return it->second;
}

// ---------------------------------------------------------------------------
// FrozenEmbedder

FrozenEmbedder::FrozenEmbedder(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) throw BackendUnavailable("cannot open frozen store '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string hex;
        is >> hex;
        std::vector<double> values;
        double v;
        while (is >> v) values.push_back(v);
        if (values.empty())
            throw BackendUnavailable("malformed frozen record: " + line);
        if (dimension_ == 0) dimension_ = values.size();
        if (values.size() != dimension_)
            throw DimensionMismatch("frozen store mixes dimensions in '" + path + "'");
        table_[std::stoull(hex, nullptr, 16)] = std::move(values);
    }
    if (table_.empty())
        throw BackendUnavailable("frozen store '" + path + "' is empty");
}

std::string FrozenEmbedder::backend_id() const { return "frozen:" + path_; }

std::vector<double> FrozenEmbedder::embed_raw(const std::string& text) {
    auto it = table_.find(text_digest(text));
    if (it == table_.end())
        throw BackendUnavailable("text not present in frozen store '" + path_ + "'");
    return it->second;
}

void FrozenEmbedder::write_store(const std::string& path,
                                 const std::vector<std::string>& texts,
                                 Embedder& source) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write frozen store '" + path + "'");
    out.precision(17);
    for (const auto& text : texts) {
        const EmbeddingVector vec = source.embed(text);
        out << digest_hex(vec.source_text_hash);
        for (double v : vec.values) out << ' ' << v;
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// CachingEmbedder

CachingEmbedder::CachingEmbedder(std::shared_ptr<Embedder> inner,
                                 std::optional<std::string> cache_path)
    : inner_(std::move(inner)), cache_path_(std::move(cache_path)) {
    if (cache_path_) {
        std::ifstream in(*cache_path_);
        std::string line;
        while (in && std::getline(in, line)) {
            line = trimmed(line);
            if (line.empty()) continue;
            std::istringstream is(line);
            std::string hex;
            is >> hex;
            std::vector<double> values;
            double v;
            while (is >> v) values.push_back(v);
            if (values.size() == inner_->dimension())
                cache_[std::stoull(hex, nullptr, 16)] = std::move(values);
        }
    }
}

std::vector<double> CachingEmbedder::embed_raw(const std::string& text) {
    const std::uint64_t digest = text_digest(text);
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(digest);
        if (it != cache_.end()) return it->second;
    }
    std::vector<double> values = inner_->embed(text).values;
    std::lock_guard lock(mutex_);
    auto [it, inserted] = cache_.emplace(digest, std::move(values));
    if (inserted) {
        ++backend_calls_;
        if (cache_path_) {
            std::ofstream out(*cache_path_, std::ios::app);
            out.precision(17);
            out << digest_hex(digest);
            for (double v : it->second) out << ' ' << v;
            out << '\n';
        }
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// RemoteEmbedder

RemoteEmbedder::RemoteEmbedder(std::string host, int port, std::string path,
                               std::size_t dimension)
    : host_(std::move(host)), port_(port), path_(std::move(path)),
      dimension_(dimension) {}

std::string RemoteEmbedder::backend_id() const {
    return "remote:" + host_ + ":" + std::to_string(port_) + path_;
}

std::vector<std::vector<double>> RemoteEmbedder::request(
    const std::vector<std::string>& texts) {
    httplib::Client client(host_, port_);
    nlohmann::json body;
    body["texts"] = texts;
    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res || res->status != 200)
        throw BackendUnavailable("embedding endpoint " + host_ + ":" +
                                 std::to_string(port_) + path_ + " failed" +
                                 (res ? " with status " + std::to_string(res->status)
                                      : ""));
    try {
        const auto parsed = nlohmann::json::parse(res->body);
        return parsed.at("vectors").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw BackendUnavailable(std::string("bad embedding response: ") + e.what());
    }
}

std::vector<double> RemoteEmbedder::embed_raw(const std::string& text) {
    auto vectors = request({text});
    if (vectors.size() != 1)
        throw BackendUnavailable("expected one vector, got " +
                                 std::to_string(vectors.size()));
    return vectors[0];
}

std::vector<EmbeddingVector> RemoteEmbedder::embed_batch(
    const std::vector<std::string>& texts) {
    for (const auto& t : texts)
        if (trimmed(t).empty()) throw EmptyText("embed_batch element is empty");
    if (texts.empty()) return {};
    auto vectors = request(texts);
    if (vectors.size() != texts.size())
        throw BackendUnavailable("vector count does not match text count");
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (vectors[i].size() != dimension_)
            throw DimensionMismatch("remote vector has dimension " +
                                    std::to_string(vectors[i].size()));
        for (double v : vectors[i])
            if (!std::isfinite(v))
                throw BackendUnavailable("remote vector has non-finite entry");
        out.push_back(EmbeddingVector{std::move(vectors[i]), text_digest(texts[i])});
    }
    return out;
}

}  // namespace scmaudit
