#include "scmaudit/collector.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "scmaudit/embedding.hpp"  // text_digest
#include "scmaudit/errors.hpp"

namespace scmaudit {

namespace {

std::string record_key(const std::string& image_id, const std::string& model_id,
                       const std::string& prompt) {
    return image_id + "\x1f" + model_id + "\x1f" + digest_hex(text_digest(prompt));
}

std::string utc_now() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const DescriptionRecord& rec) {
    return nlohmann::json{{"image_id", rec.image_id}, {"model_id", rec.model_id},
                          {"prompt", rec.prompt},     {"text", rec.text},
                          {"temperature", rec.temperature},
                          {"max_tokens", rec.max_tokens},
                          {"collected_at", rec.collected_at}};
}

DescriptionRecord from_json(const nlohmann::json& doc) {
    DescriptionRecord rec;
    rec.image_id = doc.at("image_id").get<std::string>();
    rec.model_id = doc.at("model_id").get<std::string>();
    rec.prompt = doc.at("prompt").get<std::string>();
    rec.text = doc.at("text").get<std::string>();
    rec.temperature = doc.at("temperature").get<double>();
    rec.max_tokens = doc.at("max_tokens").get<int>();
    rec.collected_at = doc.value("collected_at", "");
    return rec;
}

}  // namespace

std::string base64_encode(const std::uint8_t* data, std::size_t size) {
    static const char alphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    for (std::size_t i = 0; i < size; i += 3) {
        std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
        if (i + 1 < size) chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
        if (i + 2 < size) chunk |= data[i + 2];
        out.push_back(alphabet[(chunk >> 18) & 0x3f]);
        out.push_back(alphabet[(chunk >> 12) & 0x3f]);
        out.push_back(i + 1 < size ? alphabet[(chunk >> 6) & 0x3f] : '=');
        out.push_back(i + 2 < size ? alphabet[chunk & 0x3f] : '=');
    }
    return out;
}

// ---------------------------------------------------------------------------
// OpenAiEndpoint

OpenAiEndpoint::OpenAiEndpoint(std::string host, int port, std::string path,
                               std::string api_key_env)
    : host_(std::move(host)), port_(port), path_(std::move(path)),
      api_key_env_(std::move(api_key_env)) {}

std::string OpenAiEndpoint::image_data_url(const std::string& uri) {
    std::ifstream in(uri, std::ios::binary);
    if (!in) throw ImageUnreadable("cannot open image '" + uri + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.empty()) throw ImageUnreadable("image '" + uri + "' is empty");
    std::string mime = "image/png";
    if (uri.size() >= 4) {
        const std::string ext = uri.substr(uri.rfind('.') == std::string::npos
                                               ? uri.size()
                                               : uri.rfind('.'));
        if (ext == ".jpg" || ext == ".jpeg") mime = "image/jpeg";
        else if (ext == ".ppm") mime = "image/x-portable-pixmap";
        else if (ext == ".webp") mime = "image/webp";
    }
    return "data:" + mime + ";base64," + base64_encode(bytes.data(), bytes.size());
}

std::string OpenAiEndpoint::build_request_json(const std::string& image_data_url,
                                               const std::string& model_id,
                                               const CollectorConfig& config) {
    // image part first, text prompt second
    nlohmann::json body{
        {"model", model_id},
        {"temperature", config.temperature},
        {"max_tokens", config.max_tokens},
        {"messages",
         {{{"role", "user"},
           {"content",
            {{{"type", "image_url"}, {"image_url", {{"url", image_data_url}}}},
             {{"type", "text"}, {"text", config.prompt}}}}}}}};
    return body.dump();
}

std::string OpenAiEndpoint::describe(const ImageRecord& image,
                                     const std::string& model_id,
                                     const CollectorConfig& config) {
    if (image.uri.empty())
        throw ImageUnreadable("record " + image.image_id + " has no uri");
    const std::string body =
        build_request_json(image_data_url(image.uri), model_id, config);

    httplib::Client client(host_, port_);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(api_key_env_.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + key);
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res)
        throw EndpointError("no response from " + host_ + ":" +
                            std::to_string(port_));
    if (res->status != 200)
        throw EndpointError("status " + std::to_string(res->status) + ": " +
                            res->body);
    try {
        const auto doc = nlohmann::json::parse(res->body);
        return doc.at("choices").at(0).at("message").at("content")
            .get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw EndpointError(std::string("malformed completion response: ") +
                            e.what());
    }
}

// ---------------------------------------------------------------------------
// DescriptionStore

DescriptionStore::DescriptionStore(std::string path) : path_(std::move(path)) {
    std::ifstream in(*path_);
    std::string line;
    while (in && std::getline(in, line)) {
        if (line.empty()) continue;
        const DescriptionRecord rec = from_json(nlohmann::json::parse(line));
        records_[record_key(rec.image_id, rec.model_id, rec.prompt)] = rec;
    }
}

std::optional<DescriptionRecord> DescriptionStore::find(
    const std::string& image_id, const std::string& model_id,
    const std::string& prompt) const {
    std::lock_guard lock(mutex_);
    auto it = records_.find(record_key(image_id, model_id, prompt));
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void DescriptionStore::append(const DescriptionRecord& record) {
    std::lock_guard lock(mutex_);
    const std::string key =
        record_key(record.image_id, record.model_id, record.prompt);
    if (records_.count(key))
        throw DuplicateImageId("description already stored for " +
                               record.image_id + "/" + record.model_id);
    if (path_) {
        std::ofstream out(*path_, std::ios::app);
        if (!out) throw ConfigError("cannot append to store '" + *path_ + "'");
        out << to_json(record).dump() << '\n';
    }
    records_[key] = record;
}

std::size_t DescriptionStore::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

std::vector<DescriptionRecord> DescriptionStore::all() const {
    std::lock_guard lock(mutex_);
    std::vector<DescriptionRecord> out;
    out.reserve(records_.size());
    for (const auto& [key, rec] : records_) out.push_back(rec);
    return out;
}

// ---------------------------------------------------------------------------
// collection

DescriptionRecord collect_description(const ImageRecord& image,
                                      const std::string& model_id,
                                      ChatEndpoint& endpoint,
                                      DescriptionStore& store,
                                      const CollectorConfig& config) {
    if (auto cached = store.find(image.image_id, model_id, config.prompt))
        return *cached;

    std::string text;
    std::string last_error;
    bool ok = false;
    for (int attempt = 0; attempt <= config.retry_limit; ++attempt) {
        if (attempt > 0 && config.backoff_initial_ms > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(
                config.backoff_initial_ms << (attempt - 1)));
        try {
            text = endpoint.describe(image, model_id, config);
            ok = true;
            break;
        } catch (const ImageUnreadable&) {
            throw;  // not transient
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    if (!ok)
        throw EndpointError("giving up on " + image.image_id + "/" + model_id +
                            " after " + std::to_string(config.retry_limit + 1) +
                            " attempts: " + last_error);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw EmptyResponse(image.image_id + "/" + model_id);

    DescriptionRecord rec;
    rec.image_id = image.image_id;
    rec.model_id = model_id;
    rec.prompt = config.prompt;
    rec.text = text;
    rec.temperature = config.temperature;
    rec.max_tokens = config.max_tokens;
    rec.collected_at = utc_now();
    store.append(rec);
    return rec;
}

CollectionSummary collect_all(const std::vector<ImageRecord>& records,
                              const std::vector<std::string>& model_ids,
                              ChatEndpoint& endpoint, DescriptionStore& store,
                              const CollectorConfig& config) {
    struct Task {
        const ImageRecord* image;
        const std::string* model_id;
    };
    std::vector<Task> tasks;
    tasks.reserve(records.size() * model_ids.size());
    for (const auto& model_id : model_ids)
        for (const auto& rec : records) tasks.push_back(Task{&rec, &model_id});

    CollectionSummary summary;
    std::mutex summary_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1)) {
            const Task& task = tasks[i];
            const bool was_cached =
                store.find(task.image->image_id, *task.model_id, config.prompt)
                    .has_value();
            try {
                collect_description(*task.image, *task.model_id, endpoint, store,
                                    config);
                std::lock_guard lock(summary_mutex);
                if (was_cached)
                    summary.cached++;
                else
                    summary.completed++;
            } catch (const Error&) {
                std::lock_guard lock(summary_mutex);
                summary.failed++;
                summary.failures.emplace_back(task.image->image_id, *task.model_id);
            }
        }
    };

    const int n_workers = std::max(1, std::min<int>(config.concurrency,
                                                    static_cast<int>(tasks.size())));
    std::vector<std::thread> threads;
    for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    std::sort(summary.failures.begin(), summary.failures.end());
    return summary;
}

}  // namespace scmaudit
