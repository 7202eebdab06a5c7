// scmaudit: audit vision-language-model image descriptions for
// warmth/competence, sentiment, and word-association disparities across
// counterfactual image attributes.
//
// Exit codes: 0 success, 1 completed with findings or partial failures,
// 2 configuration or usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "scmaudit/collector.hpp"
#include "scmaudit/corpus.hpp"
#include "scmaudit/errors.hpp"
#include "scmaudit/report.hpp"

namespace fs = std::filesystem;
using namespace scmaudit;

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kConfigError = 2;

void print_manifest_report(const ManifestReport& report) {
    std::printf("images: %zu\n", report.total_images);
    std::printf("complete occupations: %d\n", report.occupations_complete);
    std::printf("missing grid cells: %zu\n", report.missing_keys.size());
    for (const auto& key : report.missing_keys)
        std::printf("  missing %s\n", key.to_string().c_str());
    std::printf("duplicate grid cells: %zu\n", report.duplicate_keys.size());
    for (const auto& key : report.duplicate_keys)
        std::printf("  duplicate %s\n", key.to_string().c_str());
}

int cmd_validate(const std::string& manifest_path, bool check_rgb) {
    const auto records = load_manifest_file(manifest_path);
    const ManifestReport report = validate_manifest(records);
    print_manifest_report(report);
    if (check_rgb) {
        const ToneReport tone = rgb_tone_check(records, read_ppm);
        std::printf("red vs white (%d pairs): %+.2f%% %+.2f%% %+.2f%%\n",
                    tone.red_vs_white.n_pairs,
                    tone.red_vs_white.channel_change_pct[0],
                    tone.red_vs_white.channel_change_pct[1],
                    tone.red_vs_white.channel_change_pct[2]);
        std::printf("blue vs white (%d pairs): %+.2f%% %+.2f%% %+.2f%%\n",
                    tone.blue_vs_white.n_pairs,
                    tone.blue_vs_white.channel_change_pct[0],
                    tone.blue_vs_white.channel_change_pct[1],
                    tone.blue_vs_white.channel_change_pct[2]);
    }
    const bool clean =
        report.missing_keys.empty() && report.duplicate_keys.empty();
    return clean ? kOk : kFindings;
}

int run_stages(const std::string& config_path, bool with_endpoint,
               bool endpoint_required) {
    const RunConfig cfg = load_run_config(config_path);
    std::unique_ptr<OpenAiEndpoint> endpoint;
    if (with_endpoint && cfg.endpoint) {
        endpoint = std::make_unique<OpenAiEndpoint>(
            cfg.endpoint->host, cfg.endpoint->port, cfg.endpoint->path,
            cfg.endpoint->api_key_env);
    } else if (endpoint_required) {
        throw ConfigError("this command needs an 'endpoint' block in " +
                          config_path);
    }
    const PipelineArtifacts artifacts = run_pipeline(cfg, endpoint.get());

    print_manifest_report(artifacts.manifest_report);
    if (endpoint)
        std::printf("collected: %d new, %d cached, %d failed\n",
                    artifacts.collection.completed, artifacts.collection.cached,
                    artifacts.collection.failed);
    std::printf("scored descriptions: %zu\n", artifacts.scores.size());
    std::printf("artifacts written to %s\n", cfg.output_dir.c_str());
    std::cout << '\n'
              << std::ifstream((fs::path(cfg.output_dir) / "table2.txt"))
                     .rdbuf()
              << '\n';
    return artifacts.had_failures ? kFindings : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Audit image descriptions from vision-language models for "
        "social-stereotype signals"};
    app.require_subcommand(1);

    std::string manifest_path;
    bool check_rgb = false;
    auto* validate = app.add_subcommand(
        "validate", "Check a manifest for grid completeness and duplicates");
    validate->add_option("--manifest", manifest_path, "Manifest CSV/TSV path")
        ->required();
    validate->add_flag("--rgb", check_rgb,
                       "Also compare clothing-color channels in PPM images");

    std::string config_path;
    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Run configuration JSON")
            ->required();
    };
    auto* collect = app.add_subcommand(
        "collect", "Request and cache one description per image and model");
    add_config(collect);
    auto* run = app.add_subcommand(
        "run", "Full pipeline: validate, collect, score, analyze, report");
    add_config(run);
    for (const auto& [name, help] :
         {std::pair<const char*, const char*>{
              "score", "Score cached descriptions (analysis only)"},
          {"analyze", "Run the significance battery on cached descriptions"},
          {"pmi", "Word-association tables from cached descriptions"},
          {"report", "Render the summary table from cached descriptions"}})
        add_config(app.add_subcommand(name, help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kOk : kConfigError;
    }

    try {
        if (validate->parsed()) return cmd_validate(manifest_path, check_rgb);
        if (run->parsed() || collect->parsed())
            return run_stages(config_path, /*with_endpoint=*/true,
                              /*endpoint_required=*/collect->parsed());
        // score / analyze / pmi / report replay the pipeline offline from the
        // description store
        return run_stages(config_path, /*with_endpoint=*/false,
                          /*endpoint_required=*/false);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kConfigError;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFindings;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFindings;
    }
}
