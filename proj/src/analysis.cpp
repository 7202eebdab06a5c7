#include "scmaudit/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "scmaudit/errors.hpp"
#include "scmaudit/fsum.hpp"

namespace scmaudit {

std::string to_string(Metric m) {
    switch (m) {
        case Metric::sentiment: return "sentiment";
        case Metric::warmth: return "warmth";
        case Metric::competence: return "competence";
    }
    return "?";
}

std::string to_string(Axis a) {
    switch (a) {
        case Axis::color: return "color";
        case Axis::gender: return "gender";
        case Axis::race: return "race";
    }
    return "?";
}

std::string to_string(Stars s) {
    switch (s) {
        case Stars::none: return "";
        case Stars::one: return "*";
        case Stars::two: return "**";
        case Stars::three: return "***";
    }
    return "";
}

double ScoreRecord::metric(Metric m) const {
    switch (m) {
        case Metric::sentiment: return sentiment;
        case Metric::warmth: return warmth;
        case Metric::competence: return competence;
    }
    return 0.0;
}

std::vector<Contrast> enumerate_tests(const AttributeLevels& levels) {
    std::vector<Contrast> out;
    auto add_axis = [&out](Axis axis, const std::vector<std::string>& lv) {
        for (std::size_t i = 0; i < lv.size(); ++i)
            for (std::size_t j = i + 1; j < lv.size(); ++j)
                out.push_back(Contrast{axis, lv[i], lv[j]});
    };
    add_axis(Axis::color, levels.colors);
    add_axis(Axis::gender, levels.genders);
    add_axis(Axis::race, levels.races);
    return out;
}

namespace {

// target-attribute value of a record as a level string
std::string level_of(const ImageRecord& rec, Axis axis) {
    switch (axis) {
        case Axis::color: return to_string(rec.color);
        case Axis::gender: return to_string(rec.gender);
        case Axis::race: return to_string(rec.race);
    }
    return {};
}

void check_level(Axis axis, const std::string& level) {
    switch (axis) {
        case Axis::color: parse_color(level); return;
        case Axis::gender: parse_gender(level); return;
        case Axis::race: parse_race(level); return;
    }
}

// pairing context: every attribute except the target axis
std::string context_key(const ImageRecord& rec, Axis axis) {
    std::string key = rec.occupation + "|" + std::to_string(rec.scenario_index);
    if (axis != Axis::gender) key += "|" + to_string(rec.gender);
    if (axis != Axis::race) key += "|" + to_string(rec.race);
    if (axis != Axis::color) key += "|" + to_string(rec.color);
    return key;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> build_pairs(
    const std::vector<ImageRecord>& records, Axis axis,
    const std::string& level_a, const std::string& level_b, PairingMode mode) {
    try {
        check_level(axis, level_a);
        check_level(axis, level_b);
    } catch (const UnknownAttributeValue& e) {
        throw UnknownLevel(e.what());
    }
    if (level_a == level_b)
        throw UnknownLevel("contrast levels must differ, got '" + level_a + "' twice");

    std::map<std::string, std::pair<const ImageRecord*, const ImageRecord*>> contexts;
    for (const auto& rec : records) {
        const std::string lv = level_of(rec, axis);
        if (lv != level_a && lv != level_b) continue;
        auto& slot = contexts[context_key(rec, axis)];
        auto*& side = lv == level_a ? slot.first : slot.second;
        // first record by image_id wins if the grid carries duplicates
        if (side == nullptr || rec.image_id < side->image_id) side = &rec;
    }

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [key, slot] : contexts) {
        if (slot.first == nullptr || slot.second == nullptr) {
            if (mode == PairingMode::strict)
                throw IncompleteGrid("context " + key + " lacks a '" +
                                     (slot.first ? level_b : level_a) +
                                     "' counterpart");
            continue;
        }
        pairs.emplace_back(slot.first->image_id, slot.second->image_id);
    }
    return pairs;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw LengthMismatch(std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    const std::size_t n = a.size();
    if (n < 2) throw TooFewPairs("need at least 2 pairs, got " + std::to_string(n));

    std::vector<double> diffs(n);
    for (std::size_t i = 0; i < n; ++i) diffs[i] = a[i] - b[i];
    const double mean = exact_sum(diffs) / static_cast<double>(n);

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = diffs[i] - mean;
        sq[i] = dev * dev;
    }
    const double var = exact_sum(sq) / static_cast<double>(n - 1);
    if (var == 0.0) throw DegenerateVariance("all paired differences identical");

    const double t = mean / std::sqrt(var / static_cast<double>(n));
    const boost::math::students_t dist(static_cast<double>(n - 1));
    const double p = 2.0 * boost::math::cdf(dist, -std::fabs(t));
    return TTestResult{t, p, static_cast<int>(n)};
}

Stars stars_for(double p_value) {
    if (p_value < 0.001) return Stars::three;
    if (p_value < 0.01) return Stars::two;
    if (p_value < 0.05) return Stars::one;
    return Stars::none;
}

std::vector<PairedTestResult> run_battery(const std::vector<ScoreRecord>& scores,
                                          const std::vector<ImageRecord>& records,
                                          const std::string& model_id,
                                          PairingMode mode,
                                          const AttributeLevels& levels) {
    std::map<std::string, const ScoreRecord*> by_image;
    for (const auto& s : scores)
        if (s.model_id == model_id) by_image[s.image_id] = &s;

    auto lookup = [&](const std::string& image_id) -> const ScoreRecord& {
        auto it = by_image.find(image_id);
        if (it == by_image.end())
            throw MissingScores("no score for image '" + image_id + "' under model '" +
                                model_id + "'");
        return *it->second;
    };

    std::vector<PairedTestResult> results;
    for (Metric metric : kAllMetrics) {
        for (const Contrast& contrast : enumerate_tests(levels)) {
            const auto pairs =
                build_pairs(records, contrast.axis, contrast.level_a,
                            contrast.level_b, mode);
            std::vector<double> a, b;
            a.reserve(pairs.size());
            b.reserve(pairs.size());
            for (const auto& [id_a, id_b] : pairs) {
                a.push_back(lookup(id_a).metric(metric));
                b.push_back(lookup(id_b).metric(metric));
            }
            PairedTestResult result;
            result.metric = metric;
            result.contrast = contrast;
            result.n_pairs = static_cast<int>(pairs.size());
            try {
                const TTestResult tt = paired_t_test(a, b);
                result.t_stat = tt.t;
                result.p_value = tt.p;
                result.stars = stars_for(tt.p);
            } catch (const DegenerateVariance&) {
                result.degenerate = true;
            } catch (const TooFewPairs&) {
                result.degenerate = true;
            }
            results.push_back(std::move(result));
        }
    }
    return results;
}

std::map<Metric, int> count_significant(const std::vector<PairedTestResult>& results,
                                        double alpha) {
    std::map<Metric, int> counts;
    for (Metric m : kAllMetrics) counts[m] = 0;
    for (const auto& r : results)
        if (!r.degenerate && r.p_value < alpha) counts[r.metric]++;
    return counts;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch(std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()));
    const std::size_t n = x.size();
    if (n < 3) throw TooFewPairs("need at least 3 points, got " + std::to_string(n));

    const double mx = exact_sum(x) / static_cast<double>(n);
    const double my = exact_sum(y) / static_cast<double>(n);
    std::vector<double> xy(n), xx(n), yy(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        xy[i] = dx * dy;
        xx[i] = dx * dx;
        yy[i] = dy * dy;
    }
    const double sxx = exact_sum(xx);
    const double syy = exact_sum(yy);
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateVariance("constant input to correlation");
    double r = exact_sum(xy) / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);

    double p = 0.0;
    const double denom = 1.0 - r * r;
    if (denom > 0.0) {
        const double t = r * std::sqrt(static_cast<double>(n - 2) / denom);
        const boost::math::students_t dist(static_cast<double>(n - 2));
        p = 2.0 * boost::math::cdf(dist, -std::fabs(t));
    }
    return CorrelationResult{r, p, static_cast<int>(n)};
}

CorrelationResult metric_correlation(const std::vector<ScoreRecord>& scores,
                                     Metric mx, Metric my) {
    std::vector<double> x, y;
    x.reserve(scores.size());
    y.reserve(scores.size());
    for (const auto& s : scores) {
        x.push_back(s.metric(mx));
        y.push_back(s.metric(my));
    }
    return pearson(x, y);
}

}  // namespace scmaudit
