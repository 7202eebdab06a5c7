#include "scmaudit/sentiment.hpp"

#include <algorithm>
#include <array>
#include <cfenv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "scmaudit/errors.hpp"

namespace scmaudit {

namespace {

constexpr double kBoostIncr = 0.293;
constexpr double kBoostDecr = -0.293;
constexpr double kCapsIncr = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kNormAlpha = 15.0;

const std::unordered_set<std::string>& negate_words() {
    static const std::unordered_set<std::string> words{
        "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt",
        "doesnt", "ain't", "aren't", "can't", "couldn't", "daren't", "didn't",
        "doesn't", "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt",
        "mustnt", "neither", "don't", "hadn't", "hasn't", "haven't", "isn't",
        "mightn't", "mustn't", "neednt", "needn't", "never", "none", "nope",
        "nor", "not", "nothing", "nowhere", "oughtnt", "shant", "shouldnt",
        "uhuh", "wasnt", "werent", "oughtn't", "shan't", "shouldn't", "uh-uh",
        "wasn't", "weren't", "without", "wont", "wouldnt", "won't", "wouldn't",
        "rarely", "seldom", "despite"};
    return words;
}

const std::unordered_map<std::string, double>& booster_dict() {
    static const std::unordered_map<std::string, double> dict{
        {"absolutely", kBoostIncr}, {"amazingly", kBoostIncr},
        {"awfully", kBoostIncr}, {"completely", kBoostIncr},
        {"considerable", kBoostIncr}, {"considerably", kBoostIncr},
        {"decidedly", kBoostIncr}, {"deeply", kBoostIncr},
        {"effing", kBoostIncr}, {"enormous", kBoostIncr},
        {"enormously", kBoostIncr}, {"entirely", kBoostIncr},
        {"especially", kBoostIncr}, {"exceptional", kBoostIncr},
        {"exceptionally", kBoostIncr}, {"extreme", kBoostIncr},
        {"extremely", kBoostIncr}, {"fabulously", kBoostIncr},
        {"flipping", kBoostIncr}, {"flippin", kBoostIncr},
        {"frackin", kBoostIncr}, {"fracking", kBoostIncr},
        {"fricking", kBoostIncr}, {"frickin", kBoostIncr},
        {"frigging", kBoostIncr}, {"friggin", kBoostIncr},
        {"fully", kBoostIncr}, {"fuckin", kBoostIncr}, {"fucking", kBoostIncr},
        {"fuggin", kBoostIncr}, {"fugging", kBoostIncr},
        {"greatly", kBoostIncr}, {"hella", kBoostIncr}, {"highly", kBoostIncr},
        {"hugely", kBoostIncr}, {"incredible", kBoostIncr},
        {"incredibly", kBoostIncr}, {"intensely", kBoostIncr},
        {"major", kBoostIncr}, {"majorly", kBoostIncr}, {"more", kBoostIncr},
        {"most", kBoostIncr}, {"particularly", kBoostIncr},
        {"purely", kBoostIncr}, {"quite", kBoostIncr}, {"really", kBoostIncr},
        {"remarkably", kBoostIncr}, {"so", kBoostIncr},
        {"substantially", kBoostIncr}, {"thoroughly", kBoostIncr},
        {"total", kBoostIncr}, {"totally", kBoostIncr},
        {"tremendous", kBoostIncr}, {"tremendously", kBoostIncr},
        {"uber", kBoostIncr}, {"unbelievably", kBoostIncr},
        {"unusually", kBoostIncr}, {"utter", kBoostIncr},
        {"utterly", kBoostIncr}, {"very", kBoostIncr},
        {"almost", kBoostDecr}, {"barely", kBoostDecr}, {"hardly", kBoostDecr},
        {"just enough", kBoostDecr}, {"kind of", kBoostDecr},
        {"kinda", kBoostDecr}, {"kindof", kBoostDecr}, {"kind-of", kBoostDecr},
        {"less", kBoostDecr}, {"little", kBoostDecr}, {"marginal", kBoostDecr},
        {"marginally", kBoostDecr}, {"occasional", kBoostDecr},
        {"occasionally", kBoostDecr}, {"partly", kBoostDecr},
        {"scarce", kBoostDecr}, {"scarcely", kBoostDecr},
        {"slight", kBoostDecr}, {"slightly", kBoostDecr},
        {"somewhat", kBoostDecr}, {"sort of", kBoostDecr},
        {"sorta", kBoostDecr}, {"sortof", kBoostDecr}, {"sort-of", kBoostDecr}};
    return dict;
}

const std::unordered_map<std::string, double>& special_cases() {
    static const std::unordered_map<std::string, double> dict{
        {"the shit", 3.0},       {"the bomb", 3.0},
        {"bad ass", 1.5},        {"badass", 1.5},
        {"bus stop", 0.0},       {"yeah right", -2.0},
        {"kiss of death", -1.5}, {"to die for", 3.0},
        {"beating heart", 3.1},  {"broken heart", -2.9}};
    return dict;
}

std::string ascii_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

// at least one cased character, and every cased character uppercase
bool is_all_caps(const std::string& word) {
    bool has_cased = false;
    for (unsigned char c : word) {
        if (std::islower(c)) return false;
        if (std::isupper(c)) has_cased = true;
    }
    return has_cased;
}

bool is_punct(char c) {
    static const std::string_view punct = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
    return punct.find(c) != std::string_view::npos;
}

std::string strip_punc_if_word(const std::string& token) {
    std::size_t b = 0, e = token.size();
    while (b < e && is_punct(token[b])) ++b;
    while (e > b && is_punct(token[e - 1])) --e;
    if (e - b <= 2) return token;  // keeps emoticons like ":)" intact
    return token.substr(b, e - b);
}

std::vector<std::string> words_and_emoticons(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string token;
    while (is >> token) out.push_back(strip_punc_if_word(token));
    return out;
}

bool allcap_differential(const std::vector<std::string>& words) {
    std::size_t allcaps = 0;
    for (const auto& w : words)
        if (is_all_caps(w)) ++allcaps;
    const std::size_t diff = words.size() - allcaps;
    return diff > 0 && diff < words.size();
}

bool negated(const std::string& word_lower) {
    if (negate_words().count(word_lower)) return true;
    return word_lower.find("n't") != std::string::npos;
}

double scalar_inc_dec(const std::string& word, double valence, bool is_cap_diff) {
    double scalar = 0.0;
    auto it = booster_dict().find(ascii_lower(word));
    if (it != booster_dict().end()) {
        scalar = it->second;
        if (valence < 0) scalar = -scalar;
        if (is_all_caps(word) && is_cap_diff)
            scalar += valence > 0 ? kCapsIncr : -kCapsIncr;
    }
    return scalar;
}

double normalize_score(double score) {
    const double norm = score / std::sqrt(score * score + kNormAlpha);
    return std::clamp(norm, -1.0, 1.0);
}

double round4(double x) {
    return std::nearbyint(x * 10000.0) / 10000.0;
}

struct Context {
    const std::unordered_map<std::string, double>& lexicon;
    const std::vector<std::string>& words;
    std::vector<std::string> words_lower;
    bool is_cap_diff = false;
};

double negation_check(double valence, const Context& ctx, int start, std::size_t i) {
    const auto& w = ctx.words_lower;
    if (start == 0) {
        if (negated(w[i - 1])) valence *= kNegationScalar;
    }
    if (start == 1) {
        if (w[i - 2] == "never" && (w[i - 1] == "so" || w[i - 1] == "this")) {
            valence *= 1.25;
        } else if (w[i - 2] == "without" && w[i - 1] == "doubt") {
            // no change
        } else if (negated(w[i - 2])) {
            valence *= kNegationScalar;
        }
    }
    if (start == 2) {
        // precedence kept as published: (never and so/this[i-2]) or so/this[i-1]
        if ((w[i - 3] == "never" && (w[i - 2] == "so" || w[i - 2] == "this")) ||
            (w[i - 1] == "so" || w[i - 1] == "this")) {
            valence *= 1.25;
        } else if (w[i - 3] == "without" &&
                   (w[i - 2] == "doubt" || w[i - 1] == "doubt")) {
            // no change
        } else if (negated(w[i - 3])) {
            valence *= kNegationScalar;
        }
    }
    return valence;
}

double special_idioms_check(double valence, const Context& ctx, std::size_t i) {
    const auto& w = ctx.words_lower;
    const std::string onezero = w[i - 1] + " " + w[i];
    const std::string twoonezero = w[i - 2] + " " + w[i - 1] + " " + w[i];
    const std::string twoone = w[i - 2] + " " + w[i - 1];
    const std::string threetwoone = w[i - 3] + " " + w[i - 2] + " " + w[i - 1];
    const std::string threetwo = w[i - 3] + " " + w[i - 2];

    for (const auto* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
        auto it = special_cases().find(*seq);
        if (it != special_cases().end()) {
            valence = it->second;
            break;
        }
    }
    if (w.size() - 1 > i) {
        const std::string zeroone = w[i] + " " + w[i + 1];
        auto it = special_cases().find(zeroone);
        if (it != special_cases().end()) valence = it->second;
    }
    if (w.size() - 1 > i + 1) {
        const std::string zeroonetwo = w[i] + " " + w[i + 1] + " " + w[i + 2];
        auto it = special_cases().find(zeroonetwo);
        if (it != special_cases().end()) valence = it->second;
    }
    for (const auto* gram : {&threetwoone, &threetwo, &twoone}) {
        auto it = booster_dict().find(*gram);
        if (it != booster_dict().end()) valence += it->second;
    }
    return valence;
}

double least_check(double valence, const Context& ctx, std::size_t i) {
    const auto& w = ctx.words_lower;
    if (i > 1 && !ctx.lexicon.count(w[i - 1]) && w[i - 1] == "least") {
        if (w[i - 2] != "at" && w[i - 2] != "very") valence *= kNegationScalar;
    } else if (i > 0 && !ctx.lexicon.count(w[i - 1]) && w[i - 1] == "least") {
        valence *= kNegationScalar;
    }
    return valence;
}

double token_valence(const Context& ctx, std::size_t i) {
    const std::string& item = ctx.words[i];
    const std::string& item_lower = ctx.words_lower[i];
    auto lex_it = ctx.lexicon.find(item_lower);
    if (lex_it == ctx.lexicon.end()) return 0.0;

    double valence = lex_it->second;
    const auto& w = ctx.words_lower;

    // "no" negating an adjacent lexicon word rather than standing alone
    if (item_lower == "no" && i != w.size() - 1 && ctx.lexicon.count(w[i + 1]))
        valence = 0.0;
    if ((i > 0 && w[i - 1] == "no") || (i > 1 && w[i - 2] == "no") ||
        (i > 2 && w[i - 3] == "no" && (w[i - 1] == "or" || w[i - 1] == "nor")))
        valence = lex_it->second * kNegationScalar;

    if (is_all_caps(item) && ctx.is_cap_diff)
        valence += valence > 0 ? kCapsIncr : -kCapsIncr;

    for (int start = 0; start < 3; ++start) {
        if (i > static_cast<std::size_t>(start) &&
            !ctx.lexicon.count(w[i - (start + 1)])) {
            double s = scalar_inc_dec(ctx.words[i - (start + 1)], valence,
                                      ctx.is_cap_diff);
            if (start == 1 && s != 0.0) s *= 0.95;
            if (start == 2 && s != 0.0) s *= 0.9;
            valence += s;
            valence = negation_check(valence, ctx, start, i);
            if (start == 2) valence = special_idioms_check(valence, ctx, i);
        }
    }
    return least_check(valence, ctx, i);
}

// Replicates the published "but" re-weighting exactly, including its
// first-match index() lookup over duplicate values.
void but_check(const std::vector<std::string>& words_lower,
               std::vector<double>& sentiments) {
    auto it = std::find(words_lower.begin(), words_lower.end(), "but");
    if (it == words_lower.end()) return;
    const std::size_t bi = static_cast<std::size_t>(it - words_lower.begin());
    for (std::size_t pos = 0; pos < sentiments.size(); ++pos) {
        const double sentiment = sentiments[pos];
        const std::size_t si = static_cast<std::size_t>(
            std::find(sentiments.begin(), sentiments.end(), sentiment) -
            sentiments.begin());
        if (si < bi)
            sentiments[si] = sentiment * 0.5;
        else if (si > bi)
            sentiments[si] = sentiment * 1.5;
    }
}

double punctuation_emphasis(const std::string& text) {
    long ep = std::count(text.begin(), text.end(), '!');
    if (ep > 4) ep = 4;
    double amplifier = static_cast<double>(ep) * 0.292;
    const long qm = std::count(text.begin(), text.end(), '?');
    if (qm > 1) amplifier += qm <= 3 ? static_cast<double>(qm) * 0.18 : 0.96;
    return amplifier;
}

}  // namespace

VaderScorer::VaderScorer(const std::string& lexicon_path) {
    std::ifstream in(lexicon_path);
    if (!in)
        throw ScorerUnavailable("cannot open lexicon '" + lexicon_path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        const std::string token = ascii_lower(line.substr(0, tab));
        const std::string rest = line.substr(tab + 1);
        try {
            lexicon_[token] = std::stod(rest);
        } catch (const std::exception&) {
            throw ScorerUnavailable("malformed lexicon line: " + line);
        }
    }
    if (lexicon_.empty())
        throw ScorerUnavailable("lexicon '" + lexicon_path + "' has no entries");
}

SentimentScore VaderScorer::score(const std::string& text) const {
    Context ctx{lexicon_, words_and_emoticons(text), {}, false};
    ctx.words_lower.reserve(ctx.words.size());
    for (const auto& w : ctx.words) ctx.words_lower.push_back(ascii_lower(w));
    ctx.is_cap_diff = allcap_differential(ctx.words);

    std::vector<double> sentiments;
    sentiments.reserve(ctx.words.size());
    for (std::size_t i = 0; i < ctx.words.size(); ++i) {
        if (booster_dict().count(ctx.words_lower[i])) {
            sentiments.push_back(0.0);
            continue;
        }
        if (i < ctx.words.size() - 1 && ctx.words_lower[i] == "kind" &&
            ctx.words_lower[i + 1] == "of") {
            sentiments.push_back(0.0);
            continue;
        }
        sentiments.push_back(token_valence(ctx, i));
    }
    but_check(ctx.words_lower, sentiments);

    if (sentiments.empty()) return SentimentScore{0.0};

    double sum = 0.0;
    for (double s : sentiments) sum += s;  // left-to-right, as published
    const double punct = punctuation_emphasis(text);
    if (sum > 0)
        sum += punct;
    else if (sum < 0)
        sum -= punct;
    return SentimentScore{round4(normalize_score(sum))};
}

}  // namespace scmaudit
