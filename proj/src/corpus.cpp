#include "scmaudit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scmaudit/errors.hpp"

namespace scmaudit {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// "African American", "african_american" and "African-American" all normalize
// to the same token.
std::string canon(const std::string& token) {
    std::string t = lower(trim(token));
    for (char& c : t)
        if (c == ' ' || c == '-') c = '_';
    return t;
}

}  // namespace

std::string to_string(Gender g) {
    return g == Gender::male ? "male" : "female";
}

std::string to_string(Race r) {
    switch (r) {
        case Race::asian: return "asian";
        case Race::black: return "black";
        case Race::indian: return "indian";
        case Race::latino: return "latino";
        case Race::middle_eastern: return "middle_eastern";
        case Race::white: return "white";
    }
    return "?";
}

std::string to_string(ClothingColor c) {
    switch (c) {
        case ClothingColor::white: return "white";
        case ClothingColor::red: return "red";
        case ClothingColor::blue: return "blue";
    }
    return "?";
}

Gender parse_gender(const std::string& token) {
    const std::string t = canon(token);
    if (t == "male" || t == "man" || t == "m") return Gender::male;
    if (t == "female" || t == "woman" || t == "f") return Gender::female;
    throw UnknownAttributeValue("gender '" + token + "'");
}

Race parse_race(const std::string& token) {
    const std::string t = canon(token);
    if (t == "asian") return Race::asian;
    if (t == "black" || t == "african_american") return Race::black;
    if (t == "indian") return Race::indian;
    if (t == "latino") return Race::latino;
    if (t == "middle_eastern") return Race::middle_eastern;
    if (t == "white" || t == "caucasian") return Race::white;
    throw UnknownAttributeValue("race '" + token + "'");
}

ClothingColor parse_color(const std::string& token) {
    const std::string t = canon(token);
    if (t == "white") return ClothingColor::white;
    if (t == "red") return ClothingColor::red;
    if (t == "blue") return ClothingColor::blue;
    throw UnknownAttributeValue("color '" + token + "'");
}

AttributeKey attribute_key(const ImageRecord& rec) {
    return AttributeKey{rec.occupation, rec.scenario_index, rec.gender, rec.race,
                        rec.color};
}

std::string AttributeKey::to_string() const {
    std::ostringstream os;
    os << occupation << "/s" << scenario_index << "/" << scmaudit::to_string(gender)
       << "/" << scmaudit::to_string(race) << "/" << scmaudit::to_string(color);
    return os.str();
}

std::vector<ImageRecord> load_manifest(std::istream& source) {
    std::string header;
    if (!std::getline(source, header)) return {};
    header = trim(header);
    if (header.empty()) return {};

    const char delim = header.find('\t') != std::string::npos ? '\t' : ',';

    auto split = [delim](const std::string& line) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream is(line);
        while (std::getline(is, field, delim)) fields.push_back(trim(field));
        return fields;
    };

    const std::vector<std::string> cols = split(header);
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < cols.size(); ++i) idx[lower(cols[i])] = i;

    for (const char* required :
         {"image_id", "occupation", "scenario_index", "gender", "race", "color"}) {
        if (!idx.count(required))
            throw ConfigError("manifest missing column '" + std::string(required) + "'");
    }
    const bool has_uri = idx.count("uri") > 0;

    std::vector<ImageRecord> records;
    std::set<std::string> seen_ids;
    std::string line;
    while (std::getline(source, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        auto get = [&](const char* name) -> std::string {
            const std::size_t i = idx.at(name);
            return i < fields.size() ? fields[i] : std::string{};
        };
        ImageRecord rec;
        rec.image_id = get("image_id");
        if (rec.image_id.empty())
            throw ConfigError("manifest row without image_id: " + line);
        if (!seen_ids.insert(rec.image_id).second)
            throw DuplicateImageId(rec.image_id);
        rec.occupation = get("occupation");
        rec.scenario_index = std::stoi(get("scenario_index"));
        if (rec.scenario_index < 0 || rec.scenario_index >= kScenariosPerOccupation)
            throw UnknownAttributeValue("scenario_index '" + get("scenario_index") + "'");
        rec.gender = parse_gender(get("gender"));
        rec.race = parse_race(get("race"));
        rec.color = parse_color(get("color"));
        if (has_uri) rec.uri = get("uri");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ImageRecord> load_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open manifest '" + path + "'");
    return load_manifest(in);
}

namespace {

struct OccupationTally {
    std::map<AttributeKey, int> counts;
};

std::map<std::string, OccupationTally> tally_by_occupation(
    const std::vector<ImageRecord>& records) {
    std::map<std::string, OccupationTally> out;
    for (const auto& rec : records)
        out[rec.occupation].counts[attribute_key(rec)]++;
    return out;
}

}  // namespace

ManifestReport validate_manifest(const std::vector<ImageRecord>& records) {
    ManifestReport report;
    report.total_images = records.size();

    for (const auto& [occupation, tally] : tally_by_occupation(records)) {
        bool clean = true;
        for (int s = 0; s < kScenariosPerOccupation; ++s)
            for (Gender g : kAllGenders)
                for (Race r : kAllRaces)
                    for (ClothingColor c : kAllColors) {
                        const AttributeKey key{occupation, s, g, r, c};
                        auto it = tally.counts.find(key);
                        if (it == tally.counts.end()) {
                            report.missing_keys.push_back(key);
                            clean = false;
                        } else if (it->second > 1) {
                            report.duplicate_keys.push_back(key);
                            clean = false;
                        }
                    }
        if (clean) report.occupations_complete++;
    }
    return report;
}

std::vector<std::string> complete_occupations(const std::vector<ImageRecord>& records) {
    std::vector<std::string> out;
    for (const auto& [occupation, tally] : tally_by_occupation(records)) {
        if (tally.counts.size() != static_cast<std::size_t>(kImagesPerOccupation))
            continue;
        const bool dup = std::any_of(tally.counts.begin(), tally.counts.end(),
                                     [](const auto& kv) { return kv.second > 1; });
        if (!dup) out.push_back(occupation);
    }
    return out;
}

std::vector<ImageRecord> filter_complete(const std::vector<ImageRecord>& records) {
    const auto keep = complete_occupations(records);
    std::vector<ImageRecord> out;
    for (const auto& rec : records)
        if (std::find(keep.begin(), keep.end(), rec.occupation) != keep.end())
            out.push_back(rec);
    return out;
}

RgbImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnreadableImage("cannot open '" + path + "'");
    std::string magic;
    in >> magic;
    if (magic != "P6") throw UnreadableImage("'" + path + "' is not a P6 PPM");
    int width = 0, height = 0, maxval = 0;
    in >> width >> height >> maxval;
    if (!in || width <= 0 || height <= 0 || maxval != 255)
        throw UnreadableImage("bad PPM header in '" + path + "'");
    in.get();  // single whitespace byte after maxval
    RgbImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(static_cast<std::size_t>(width) * height * 3);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw UnreadableImage("truncated pixel data in '" + path + "'");
    return img;
}

namespace {

std::array<double, 3> channel_means(const RgbImage& img) {
    std::array<double, 3> sums{0.0, 0.0, 0.0};
    const std::size_t n = img.pixels.size() / 3;
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) sums[c] += img.pixels[3 * i + c];
    for (int c = 0; c < 3; ++c) sums[c] /= static_cast<double>(n);
    return sums;
}

}  // namespace

ToneReport rgb_tone_check(const std::vector<ImageRecord>& records,
                          const PixelReader& reader) {
    // white counterpart lookup keyed on everything but color
    std::map<std::tuple<std::string, int, Gender, Race>, const ImageRecord*> whites;
    for (const auto& rec : records)
        if (rec.color == ClothingColor::white)
            whites[{rec.occupation, rec.scenario_index, rec.gender, rec.race}] = &rec;

    ToneReport report;
    report.red_vs_white.colored = ClothingColor::red;
    report.blue_vs_white.colored = ClothingColor::blue;

    std::array<std::array<double, 3>, 2> sums{};  // [red, blue]
    std::array<int, 2> counts{0, 0};

    for (const auto& rec : records) {
        if (rec.color == ClothingColor::white) continue;
        auto it = whites.find({rec.occupation, rec.scenario_index, rec.gender, rec.race});
        if (it == whites.end())
            throw MissingCounterpart("no white counterpart for " + rec.image_id);
        const auto colored = channel_means(reader(rec.uri));
        const auto white = channel_means(reader(it->second->uri));
        const int slot = rec.color == ClothingColor::red ? 0 : 1;
        for (int c = 0; c < 3; ++c) {
            if (white[c] == 0.0)
                throw UnreadableImage("zero-mean channel in white counterpart of " +
                                      rec.image_id);
            sums[slot][c] += (colored[c] - white[c]) / white[c] * 100.0;
        }
        counts[slot]++;
    }

    report.red_vs_white.n_pairs = counts[0];
    report.blue_vs_white.n_pairs = counts[1];
    for (int c = 0; c < 3; ++c) {
        if (counts[0] > 0) report.red_vs_white.channel_change_pct[c] = sums[0][c] / counts[0];
        if (counts[1] > 0) report.blue_vs_white.channel_change_pct[c] = sums[1][c] / counts[1];
    }
    return report;
}

}  // namespace scmaudit
