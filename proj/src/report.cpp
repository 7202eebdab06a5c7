#include "scmaudit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scmaudit/errors.hpp"

namespace scmaudit {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("malformed config '" + path + "': " + e.what());
    }
    try {
        RunConfig cfg;
        cfg.manifest_path = doc.at("manifest").get<std::string>();
        cfg.store_path = doc.at("store").get<std::string>();
        cfg.output_dir = doc.at("output_dir").get<std::string>();
        cfg.model_ids = doc.at("models").get<std::vector<std::string>>();
        if (doc.contains("endpoint")) {
            EndpointConfig ep;
            const auto& e = doc["endpoint"];
            ep.host = e.at("host").get<std::string>();
            ep.port = e.at("port").get<int>();
            ep.path = e.value("path", ep.path);
            ep.api_key_env = e.value("api_key_env", ep.api_key_env);
            cfg.endpoint = ep;
        }
        if (doc.contains("collector")) {
            const auto& c = doc["collector"];
            cfg.collector.prompt = c.value("prompt", cfg.collector.prompt);
            cfg.collector.temperature =
                c.value("temperature", cfg.collector.temperature);
            cfg.collector.max_tokens = c.value("max_tokens", cfg.collector.max_tokens);
            cfg.collector.retry_limit =
                c.value("retry_limit", cfg.collector.retry_limit);
            cfg.collector.concurrency =
                c.value("concurrency", cfg.collector.concurrency);
        }
        if (doc.contains("embedder")) {
            const auto& e = doc["embedder"];
            cfg.embedder.kind = e.value("kind", cfg.embedder.kind);
            cfg.embedder.dimension = e.value("dimension", cfg.embedder.dimension);
            cfg.embedder.seed = e.value("seed", cfg.embedder.seed);
            cfg.embedder.path = e.value("path", cfg.embedder.path);
            cfg.embedder.host = e.value("host", cfg.embedder.host);
            cfg.embedder.port = e.value("port", cfg.embedder.port);
            cfg.embedder.route = e.value("route", cfg.embedder.route);
        }
        cfg.lexicon_path = doc.value("lexicon", cfg.lexicon_path);
        if (doc.contains("warmth_words"))
            cfg.warmth_words = doc["warmth_words"].get<std::vector<std::string>>();
        if (doc.contains("competence_words"))
            cfg.competence_words =
                doc["competence_words"].get<std::vector<std::string>>();
        cfg.alpha = doc.value("alpha", cfg.alpha);
        cfg.cosine_threshold = doc.value("cosine_threshold", cfg.cosine_threshold);
        cfg.top_k = doc.value("top_k", cfg.top_k);
        cfg.strict_pairing = doc.value("strict_pairing", cfg.strict_pairing);
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path + "' is missing fields: " + e.what());
    }
}

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config) {
    if (config.kind == "toy")
        return std::make_unique<ToyEmbedder>(config.dimension, config.seed);
    if (config.kind == "frozen")
        return std::make_unique<FrozenEmbedder>(config.path);
    if (config.kind == "remote")
        return std::make_unique<RemoteEmbedder>(config.host, config.port,
                                                config.route, config.dimension);
    throw ConfigError("unknown embedder kind '" + config.kind + "'");
}

std::vector<ScoreRecord> score_descriptions(
    const std::vector<DescriptionRecord>& descriptions, const ScmBasis& basis,
    Embedder& embedder, const SentimentScorer& scorer) {
    std::vector<ScoreRecord> scores;
    scores.reserve(descriptions.size());
    for (const auto& desc : descriptions) {
        ScoreRecord score;
        score.image_id = desc.image_id;
        score.model_id = desc.model_id;
        score.sentiment = scorer.score(desc.text).compound;
        const ScmCoordinates coords = score_description(desc.text, basis, embedder);
        score.warmth = coords.warmth;
        score.competence = coords.competence;
        scores.push_back(std::move(score));
    }
    std::sort(scores.begin(), scores.end(),
              [](const ScoreRecord& a, const ScoreRecord& b) {
                  return std::tie(a.model_id, a.image_id) <
                         std::tie(b.model_id, b.image_id);
              });
    return scores;
}

namespace {

std::string format_cell(const PairedTestResult& r) {
    if (r.degenerate) return "degen";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%s", r.t_stat,
                  to_string(r.stars).c_str());
    return buf;
}

json result_to_json(const PairedTestResult& r) {
    return json{{"metric", to_string(r.metric)},
                {"axis", to_string(r.contrast.axis)},
                {"level_a", r.contrast.level_a},
                {"level_b", r.contrast.level_b},
                {"n_pairs", r.n_pairs},
                {"t", r.t_stat},
                {"p", r.p_value},
                {"stars", to_string(r.stars)},
                {"degenerate", r.degenerate}};
}

json key_to_json(const AttributeKey& key) {
    return json{{"occupation", key.occupation},
                {"scenario_index", key.scenario_index},
                {"gender", to_string(key.gender)},
                {"race", to_string(key.race)},
                {"color", to_string(key.color)}};
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace

std::string render_table2(
    const std::map<std::string, std::vector<PairedTestResult>>& per_model,
    double alpha) {
    std::vector<std::string> models;
    for (const auto& [model, results] : per_model) models.push_back(model);

    const std::size_t label_width = 32;
    const std::size_t cell_width = 12;
    std::ostringstream os;

    auto pad = [](const std::string& s, std::size_t width) {
        return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
    };

    os << pad("contrast", label_width);
    for (const auto& model : models) os << pad(model, cell_width);
    os << '\n';

    for (Metric metric : kAllMetrics) {
        os << "== " << to_string(metric) << " ==\n";
        const std::vector<Contrast> contrasts = enumerate_tests();
        for (const Contrast& contrast : contrasts) {
            os << pad(to_string(contrast.axis) + "  " + contrast.label(),
                      label_width);
            for (const auto& model : models) {
                const auto& results = per_model.at(model);
                auto it = std::find_if(results.begin(), results.end(),
                                       [&](const PairedTestResult& r) {
                                           return r.metric == metric &&
                                                  r.contrast == contrast;
                                       });
                os << pad(it == results.end() ? "-" : format_cell(*it), cell_width);
            }
            os << '\n';
        }
        os << pad("# of significant stereotypes", label_width);
        for (const auto& model : models) {
            const auto counts = count_significant(per_model.at(model), alpha);
            os << pad(std::to_string(counts.at(metric)) + "/" +
                          std::to_string(contrasts.size()),
                      cell_width);
        }
        os << '\n';
    }
    os << "stars: * p<0.05  ** p<0.01  *** p<0.001\n";
    return os.str();
}

PipelineArtifacts run_pipeline(const RunConfig& config, ChatEndpoint* endpoint) {
    PipelineArtifacts artifacts;
    fs::create_directories(config.output_dir);
    const fs::path out_dir(config.output_dir);

    auto stage = [](const char* name, auto&& fn) {
        try {
            fn();
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            throw PipelineError(std::string("stage ") + name + ": " + e.what());
        }
    };

    // validate
    std::vector<ImageRecord> records;
    stage("validate", [&] {
        records = load_manifest_file(config.manifest_path);
        artifacts.manifest_report = validate_manifest(records);
        json report{{"total_images", artifacts.manifest_report.total_images},
                    {"occupations_complete",
                     artifacts.manifest_report.occupations_complete},
                    {"missing_keys", json::array()},
                    {"duplicate_keys", json::array()}};
        for (const auto& key : artifacts.manifest_report.missing_keys)
            report["missing_keys"].push_back(key_to_json(key));
        for (const auto& key : artifacts.manifest_report.duplicate_keys)
            report["duplicate_keys"].push_back(key_to_json(key));
        write_file(out_dir / "manifest_report.json", report.dump(2) + "\n");
    });

    // collect
    DescriptionStore store(config.store_path);
    stage("collect", [&] {
        if (endpoint != nullptr) {
            artifacts.collection = collect_all(records, config.model_ids, *endpoint,
                                               store, config.collector);
            if (artifacts.collection.failed > 0) artifacts.had_failures = true;
            json summary{{"completed", artifacts.collection.completed},
                         {"cached", artifacts.collection.cached},
                         {"failed", artifacts.collection.failed},
                         {"failures", json::array()}};
            for (const auto& [image, model] : artifacts.collection.failures)
                summary["failures"].push_back({{"image_id", image},
                                               {"model_id", model}});
            write_file(out_dir / "collection_summary.json", summary.dump(2) + "\n");
        } else if (store.size() == 0) {
            throw ConfigError("no endpoint configured and description store '" +
                              config.store_path + "' is empty");
        }
    });

    // score
    std::unique_ptr<Embedder> embedder = make_embedder(config.embedder);
    ScmBasis basis;
    stage("score", [&] {
        basis = build_basis(config.warmth_words, config.competence_words, *embedder);
        save_basis(basis, (out_dir / "basis.json").string());
        const VaderScorer scorer(config.lexicon_path);

        std::vector<DescriptionRecord> descriptions;
        for (const auto& desc : store.all()) {
            const bool known_model =
                std::find(config.model_ids.begin(), config.model_ids.end(),
                          desc.model_id) != config.model_ids.end();
            if (known_model && desc.prompt == config.collector.prompt)
                descriptions.push_back(desc);
        }
        artifacts.scores = score_descriptions(descriptions, basis, *embedder, scorer);

        std::ostringstream os;
        for (const auto& s : artifacts.scores)
            os << json{{"image_id", s.image_id}, {"model_id", s.model_id},
                       {"sentiment", s.sentiment}, {"warmth", s.warmth},
                       {"competence", s.competence}}
                      .dump()
               << '\n';
        write_file(out_dir / "scores.jsonl", os.str());
    });

    // analyze
    stage("analyze", [&] {
        const std::vector<ImageRecord> pairing_records =
            config.strict_pairing ? filter_complete(records) : records;
        const PairingMode mode = config.strict_pairing ? PairingMode::strict
                                                       : PairingMode::lenient;
        json battery_doc;
        json significance_doc;
        for (const auto& model_id : config.model_ids) {
            auto results =
                run_battery(artifacts.scores, pairing_records, model_id, mode);
            json cells = json::array();
            for (const auto& r : results) cells.push_back(result_to_json(r));
            battery_doc[model_id] = std::move(cells);
            json counts;
            for (const auto& [metric, count] :
                 count_significant(results, config.alpha))
                counts[to_string(metric)] = count;
            significance_doc[model_id] = std::move(counts);
            artifacts.batteries[model_id] = std::move(results);
        }
        write_file(out_dir / "battery.json", battery_doc.dump(2) + "\n");
        write_file(out_dir / "significance.json", significance_doc.dump(2) + "\n");

        json corr_doc;
        const std::array<std::pair<Metric, Metric>, 3> metric_pairs{
            {{Metric::sentiment, Metric::warmth},
             {Metric::sentiment, Metric::competence},
             {Metric::warmth, Metric::competence}}};
        for (const auto& [mx, my] : metric_pairs) {
            const std::string name = to_string(mx) + "_vs_" + to_string(my);
            try {
                const CorrelationResult corr =
                    metric_correlation(artifacts.scores, mx, my);
                corr_doc[name] = {{"r", corr.r}, {"p", corr.p}, {"n", corr.n}};
                artifacts.correlations[name] = corr;
            } catch (const Error& e) {
                corr_doc[name] = {{"error", e.what()}};
            }
        }
        write_file(out_dir / "correlations.json", corr_doc.dump(2) + "\n");
    });

    // pmi
    stage("pmi", [&] {
        std::map<std::string, const ImageRecord*> image_index;
        for (const auto& rec : records) image_index[rec.image_id] = &rec;

        struct AspectDef {
            Axis axis;
            std::string level;
        };
        std::vector<AspectDef> aspects;
        const AttributeLevels levels;
        for (const auto& c : levels.colors) aspects.push_back({Axis::color, c});
        for (const auto& g : levels.genders) aspects.push_back({Axis::gender, g});
        for (const auto& r : levels.races) aspects.push_back({Axis::race, r});

        json pmi_doc;
        std::map<std::string, std::vector<std::vector<PmiEntry>>> per_aspect_lists;
        for (const auto& model_id : config.model_ids) {
            std::vector<std::string> all_texts;
            std::map<std::string, std::vector<std::string>> aspect_texts;
            for (const auto& desc : store.all()) {
                if (desc.model_id != model_id ||
                    desc.prompt != config.collector.prompt)
                    continue;
                auto it = image_index.find(desc.image_id);
                if (it == image_index.end()) continue;
                const ImageRecord& rec = *it->second;
                all_texts.push_back(desc.text);
                aspect_texts[to_string(Axis::color) + ":" + to_string(rec.color)]
                    .push_back(desc.text);
                aspect_texts[to_string(Axis::gender) + ":" + to_string(rec.gender)]
                    .push_back(desc.text);
                aspect_texts[to_string(Axis::race) + ":" + to_string(rec.race)]
                    .push_back(desc.text);
            }
            json model_doc;
            for (const auto& aspect : aspects) {
                const std::string key =
                    to_string(aspect.axis) + ":" + aspect.level;
                const auto texts_it = aspect_texts.find(key);
                const std::vector<std::string> empty;
                const auto entries = pmi_table(
                    texts_it == aspect_texts.end() ? empty : texts_it->second,
                    all_texts, aspect.axis, aspect.level, basis, *embedder,
                    config.cosine_threshold, config.top_k);
                json list = json::array();
                for (const auto& e : entries)
                    list.push_back({{"word", e.word}, {"pmi", e.pmi},
                                    {"count_in_aspect", e.count_in_aspect},
                                    {"count_total", e.count_total},
                                    {"cos_w", e.cos_w}, {"cos_c", e.cos_c}});
                model_doc[key] = std::move(list);
                per_aspect_lists[key].push_back(entries);
            }
            pmi_doc["models"][model_id] = std::move(model_doc);
        }
        for (const auto& [key, lists] : per_aspect_lists) {
            json words = json::array();
            for (const auto& w : common_words(lists)) words.push_back(w);
            pmi_doc["common_words"][key] = std::move(words);
        }
        write_file(out_dir / "pmi.json", pmi_doc.dump(2) + "\n");
    });

    // report
    stage("report", [&] {
        write_file(out_dir / "table2.txt",
                   render_table2(artifacts.batteries, config.alpha));
        std::ostringstream os;
        os << "manifest: " << artifacts.manifest_report.total_images << " images, "
           << artifacts.manifest_report.occupations_complete
           << " complete occupations, "
           << artifacts.manifest_report.missing_keys.size() << " missing keys, "
           << artifacts.manifest_report.duplicate_keys.size()
           << " duplicate keys\n";
        os << "descriptions: " << store.size() << " stored\n";
        os << "scores: " << artifacts.scores.size() << " records\n";
        for (const auto& [name, corr] : artifacts.correlations) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "correlation %s: r=%.3f p=%.3g n=%d\n",
                          name.c_str(), corr.r, corr.p, corr.n);
            os << buf;
        }
        write_file(out_dir / "summary.txt", os.str());
    });

    if (!artifacts.manifest_report.missing_keys.empty() ||
        !artifacts.manifest_report.duplicate_keys.empty())
        artifacts.had_failures = true;
    return artifacts;
}

}  // namespace scmaudit
