#ifndef SCMAUDIT_ANALYSIS_HPP
#define SCMAUDIT_ANALYSIS_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scmaudit/corpus.hpp"

namespace scmaudit {

enum class Metric { sentiment, warmth, competence };
enum class Axis { color, gender, race };
enum class Stars { none, one, two, three };
enum class PairingMode { strict, lenient };

std::string to_string(Metric m);
std::string to_string(Axis a);
std::string to_string(Stars s);

constexpr std::array<Metric, 3> kAllMetrics{Metric::sentiment, Metric::warmth,
                                            Metric::competence};

/// Per-description metric values, one record per (image_id, model_id).
struct ScoreRecord {
    std::string image_id;
    std::string model_id;
    double sentiment = 0.0;
    double warmth = 0.0;
    double competence = 0.0;

    double metric(Metric m) const;
};

/// One attribute contrast; t is reported as level_a minus level_b.
struct Contrast {
    Axis axis = Axis::color;
    std::string level_a;
    std::string level_b;

    auto operator<=>(const Contrast&) const = default;
    std::string label() const { return level_a + " vs " + level_b; }
};

struct PairedTestResult {
    Metric metric = Metric::sentiment;
    Contrast contrast;
    int n_pairs = 0;
    double t_stat = 0.0;
    double p_value = 1.0;
    Stars stars = Stars::none;
    bool degenerate = false;
};

/// Attribute levels driving contrast enumeration, in report row order.
struct AttributeLevels {
    std::vector<std::string> colors{"blue", "red", "white"};
    std::vector<std::string> genders{"male", "female"};
    std::vector<std::string> races{"asian", "black", "indian",
                                   "latino", "middle_eastern", "white"};
};

/// All unordered level pairs per axis in declared order; the default grid
/// yields 3 color + 1 gender + 15 race = 19 contrasts.
std::vector<Contrast> enumerate_tests(const AttributeLevels& levels = {});

/// Matched counterfactual pairs differing only in the target attribute.
/// Strict mode throws IncompleteGrid on a missing counterpart; lenient mode
/// drops that context.
std::vector<std::pair<std::string, std::string>> build_pairs(
    const std::vector<ImageRecord>& records, Axis axis,
    const std::string& level_a, const std::string& level_b,
    PairingMode mode = PairingMode::strict);

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    int n = 0;
};

/// Two-sided paired t-test: t = mean(a-b) / (sd(a-b)/sqrt(n)) with sample
/// sd, p from Student's t with n-1 degrees of freedom. Sums use exact
/// summation, so the result is independent of pair order and exactly
/// antisymmetric under swapping a and b.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

Stars stars_for(double p_value);

/// One result per metric x contrast (57 cells with default attributes).
/// Degenerate contrasts are flagged, not raised.
std::vector<PairedTestResult> run_battery(
    const std::vector<ScoreRecord>& scores,
    const std::vector<ImageRecord>& records, const std::string& model_id,
    PairingMode mode = PairingMode::strict, const AttributeLevels& levels = {});

std::map<Metric, int> count_significant(const std::vector<PairedTestResult>& results,
                                        double alpha = 0.05);

struct CorrelationResult {
    double r = 0.0;
    double p = 1.0;
    int n = 0;
};

/// Pearson correlation between two metrics over all score records, with
/// two-sided p-value.
CorrelationResult metric_correlation(const std::vector<ScoreRecord>& scores,
                                     Metric x, Metric y);

CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

}  // namespace scmaudit

#endif  // SCMAUDIT_ANALYSIS_HPP
