#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "scmaudit/collector.hpp"
#include "scmaudit/errors.hpp"
#include "helpers.hpp"

using namespace scmaudit;

namespace {

ImageRecord sample_image(const std::string& id = "img-1") {
    ImageRecord rec;
    rec.image_id = id;
    rec.occupation = "chef";
    rec.scenario_index = 2;
    rec.gender = Gender::female;
    rec.race = Race::latino;
    rec.color = ClothingColor::blue;
    return rec;
}

}  // namespace

TEST_CASE("base64 encodes the RFC test vectors") {
    auto enc = [](const std::string& s) {
        return base64_encode(reinterpret_cast<const std::uint8_t*>(s.data()),
                             s.size());
    };
    CHECK(enc("") == "");
    CHECK(enc("f") == "Zg==");
    CHECK(enc("fo") == "Zm8=");
    CHECK(enc("foo") == "Zm9v");
    CHECK(enc("foobar") == "Zm9vYmFy");
}

TEST_CASE("request json carries the protocol defaults, image part first") {
    CollectorConfig config;
    const auto body = nlohmann::json::parse(OpenAiEndpoint::build_request_json(
        "data:image/png;base64,AAAA", "mock-model", config));
    CHECK(body["model"] == "mock-model");
    CHECK(body["temperature"] == 0.0);
    CHECK(body["max_tokens"] == 1024);
    REQUIRE(body["messages"].size() == 1);
    const auto& msg = body["messages"][0];
    CHECK(msg["role"] == "user");
    REQUIRE(msg["content"].size() == 2);
    CHECK(msg["content"][0]["type"] == "image_url");
    CHECK(msg["content"][0]["image_url"]["url"] == "data:image/png;base64,AAAA");
    CHECK(msg["content"][1]["type"] == "text");
    CHECK(msg["content"][1]["text"] == "Describe this person objectively.");
}

TEST_CASE("image_data_url rejects unreadable files") {
    CHECK_THROWS_AS(OpenAiEndpoint::image_data_url("/nonexistent/image.png"),
                    ImageUnreadable);
}

TEST_CASE("description store round-trips through its file") {
    const std::string path = "/tmp/scmaudit_store_test.jsonl";
    std::remove(path.c_str());
    DescriptionRecord rec;
    rec.image_id = "img-1";
    rec.model_id = "m";
    rec.prompt = "Describe this person objectively.";
    rec.text = "a person";
    rec.temperature = 0.0;
    rec.max_tokens = 1024;
    rec.collected_at = "2024-01-01T00:00:00Z";
    {
        DescriptionStore store(path);
        store.append(rec);
        CHECK(store.size() == 1);
        CHECK_THROWS(store.append(rec));  // duplicate key
    }
    DescriptionStore reloaded(path);
    CHECK(reloaded.size() == 1);
    const auto found = reloaded.find("img-1", "m", rec.prompt);
    REQUIRE(found.has_value());
    CHECK(found->text == "a person");
    CHECK(found->collected_at == rec.collected_at);
    CHECK(!reloaded.find("img-1", "m", "other prompt").has_value());
    std::remove(path.c_str());
}

TEST_CASE("collect_description returns the endpoint text and caches it") {
    testing::MockEndpoint endpoint;
    DescriptionStore store;
    CollectorConfig config;
    const auto rec =
        collect_description(sample_image(), "mock-model", endpoint, store, config);
    CHECK(rec.text == endpoint.canned_text(sample_image(), "mock-model"));
    CHECK(rec.prompt == config.prompt);
    CHECK(endpoint.calls == 1);

    // cache contract: second call must not touch the endpoint
    const auto again =
        collect_description(sample_image(), "mock-model", endpoint, store, config);
    CHECK(endpoint.calls == 1);
    CHECK(again.text == rec.text);
    CHECK(again.collected_at == rec.collected_at);
}

TEST_CASE("collect_description retries transient failures with backoff") {
    testing::MockEndpoint endpoint;
    endpoint.fail_remaining = 3;
    DescriptionStore store;
    CollectorConfig config;
    config.backoff_initial_ms = 1;
    const auto rec =
        collect_description(sample_image(), "mock-model", endpoint, store, config);
    CHECK(endpoint.calls == 4);  // 3 failures + 1 success within retry_limit
    CHECK(!rec.text.empty());
}

TEST_CASE("collect_description surfaces persistent failure") {
    testing::MockEndpoint endpoint;
    endpoint.fail_remaining = 100;
    DescriptionStore store;
    CollectorConfig config;
    config.backoff_initial_ms = 1;
    CHECK_THROWS_AS(
        collect_description(sample_image(), "mock-model", endpoint, store, config),
        EndpointError);
    CHECK(endpoint.calls == config.retry_limit + 1);
    CHECK(store.size() == 0);
}

TEST_CASE("empty endpoint text is rejected, not cached") {
    class EmptyEndpoint : public testing::MockEndpoint {
        std::string canned_text(const ImageRecord&, const std::string&) override {
            return "   ";
        }
    } endpoint;
    DescriptionStore store;
    CollectorConfig config;
    config.backoff_initial_ms = 1;
    CHECK_THROWS_AS(
        collect_description(sample_image(), "m", endpoint, store, config),
        EmptyResponse);
    CHECK(store.size() == 0);
}

TEST_CASE("collect_all covers every image-model pair and is idempotent") {
    const auto records = testing::full_grid("chef");
    testing::MockEndpoint endpoint;
    DescriptionStore store;
    CollectorConfig config;
    config.backoff_initial_ms = 1;
    const auto first =
        collect_all(records, {"model-a", "model-b"}, endpoint, store, config);
    CHECK(first.completed == 360);
    CHECK(first.cached == 0);
    CHECK(first.failed == 0);
    CHECK(store.size() == 360);
    CHECK(endpoint.calls == 360);

    const auto second =
        collect_all(records, {"model-a", "model-b"}, endpoint, store, config);
    CHECK(second.completed == 0);
    CHECK(second.cached == 360);
    CHECK(endpoint.calls == 360);
}

TEST_CASE("collect_all records failures without aborting") {
    const auto records = testing::full_grid("chef");
    testing::MockEndpoint endpoint;
    endpoint.fail_image_id = "chef-007";
    DescriptionStore store;
    CollectorConfig config;
    config.retry_limit = 0;
    config.backoff_initial_ms = 1;
    const auto summary = collect_all(records, {"m"}, endpoint, store, config);
    CHECK(summary.completed == 179);
    CHECK(summary.failed == 1);
    REQUIRE(summary.failures.size() == 1);
    CHECK(summary.failures[0].first == "chef-007");
    CHECK(summary.failures[0].second == "m");
    CHECK(store.size() == 179);

    // retrying after the transient condition clears fills the gap
    endpoint.fail_image_id.clear();
    const auto retry = collect_all(records, {"m"}, endpoint, store, config);
    CHECK(retry.completed == 1);
    CHECK(retry.cached == 179);
    CHECK(store.size() == 180);
}

TEST_CASE("collect_all honors distinct prompts as distinct cache keys") {
    const auto image = sample_image();
    testing::MockEndpoint endpoint;
    DescriptionStore store;
    CollectorConfig config;
    collect_description(image, "m", endpoint, store, config);
    CollectorConfig other = config;
    other.prompt = "Describe the scene.";
    collect_description(image, "m", endpoint, store, other);
    CHECK(store.size() == 2);
    CHECK(endpoint.calls == 2);
}
