#ifndef SCMAUDIT_CORPUS_HPP
#define SCMAUDIT_CORPUS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace scmaudit {

enum class Gender { male, female };
enum class Race { asian, black, indian, latino, middle_eastern, white };
enum class ClothingColor { white, red, blue };

constexpr int kScenariosPerOccupation = 5;
constexpr std::array<Gender, 2> kAllGenders{Gender::male, Gender::female};
constexpr std::array<Race, 6> kAllRaces{Race::asian, Race::black, Race::indian,
                                        Race::latino, Race::middle_eastern,
                                        Race::white};
constexpr std::array<ClothingColor, 3> kAllColors{
    ClothingColor::white, ClothingColor::red, ClothingColor::blue};

/// Images one fully populated occupation contributes:
/// 5 scenarios x 2 genders x 6 races x 3 colors.
constexpr int kImagesPerOccupation = 180;

std::string to_string(Gender g);
std::string to_string(Race r);
std::string to_string(ClothingColor c);

/// Parsers are case-insensitive and map the dataset aliases
/// African-American -> black and Caucasian -> white.
Gender parse_gender(const std::string& token);
Race parse_race(const std::string& token);
ClothingColor parse_color(const std::string& token);

/// One benchmark image with its five controlled attributes.
struct ImageRecord {
    std::string image_id;
    std::string occupation;
    int scenario_index = 0;  // in [0, 4]
    Gender gender = Gender::male;
    Race race = Race::asian;
    ClothingColor color = ClothingColor::white;
    std::string uri;  // empty for analysis-only manifests
};

/// The five attributes identifying one grid cell.
struct AttributeKey {
    std::string occupation;
    int scenario_index = 0;
    Gender gender = Gender::male;
    Race race = Race::asian;
    ClothingColor color = ClothingColor::white;

    auto operator<=>(const AttributeKey&) const = default;
    std::string to_string() const;
};

AttributeKey attribute_key(const ImageRecord& rec);

struct ManifestReport {
    int occupations_complete = 0;
    std::vector<AttributeKey> missing_keys;
    std::vector<AttributeKey> duplicate_keys;
    std::size_t total_images = 0;
};

/// Parses a delimited manifest (header: image_id, occupation, scenario_index,
/// gender, race, color, uri). Tab or comma separated, detected from the
/// header line. The uri column is optional.
std::vector<ImageRecord> load_manifest(std::istream& source);
std::vector<ImageRecord> load_manifest_file(const std::string& path);

ManifestReport validate_manifest(const std::vector<ImageRecord>& records);

/// Occupations with a full, duplicate-free 180-image grid.
std::vector<std::string> complete_occupations(const std::vector<ImageRecord>& records);

/// Records restricted to complete occupations (strict-mode pairing input).
std::vector<ImageRecord> filter_complete(const std::vector<ImageRecord>& records);

/// Interleaved 8-bit RGB pixel data.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // size == 3 * width * height
};

using PixelReader = std::function<RgbImage(const std::string& uri)>;

/// Binary PPM (P6) reader usable as a PixelReader.
RgbImage read_ppm(const std::string& path);

/// Mean percent change per RGB channel between colored images and their
/// white counterparts, averaged over matched pairs.
struct ToneContrast {
    ClothingColor colored = ClothingColor::red;
    int n_pairs = 0;
    std::array<double, 3> channel_change_pct{0.0, 0.0, 0.0};
};

struct ToneReport {
    ToneContrast red_vs_white;
    ToneContrast blue_vs_white;
};

ToneReport rgb_tone_check(const std::vector<ImageRecord>& records,
                          const PixelReader& reader);

}  // namespace scmaudit

#endif  // SCMAUDIT_CORPUS_HPP
