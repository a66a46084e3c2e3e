// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foodkg/kg/graph.hpp"

namespace foodkg::kg {

inline constexpr std::size_t kAllergenCount = 14;
inline constexpr std::size_t kSfpCount = 9;
inline constexpr std::size_t kSeasonCount = 4;
inline constexpr std::size_t kDietCount = 19; // 18 restrictions + unrestricted
inline constexpr std::string_view kUnrestricted = "unrestricted";

struct NumberedCategory {
    int id = 0;
    std::string name;
};

struct DietCategory {
    std::string id;
    std::string name;
    std::string group;
};

/// Closed vocabularies the graph is seeded with.
struct SeedCatalog {
    std::vector<NumberedCategory> allergens;
    std::vector<NumberedCategory> sfp_categories;
    std::vector<std::string> seasons;
    std::vector<DietCategory> diets;
    /// (a, b): anything suitable for diet a is also suitable for diet b.
    std::vector<std::pair<std::string, std::string>> diet_implications;
    std::vector<std::string> cuisines;

    /// The 18 diet ids other than "unrestricted", in catalog order.
    std::vector<std::string> restriction_ids() const;
    bool is_diet(std::string_view id) const;
    bool is_season(std::string_view id) const;
    bool is_cuisine(std::string_view id) const;
    const DietCategory* diet(std::string_view id) const;
};

/// Directory holding the bundled data files. FOODKG_DATA_DIR in the
/// environment overrides the compiled-in location.
std::filesystem::path default_data_dir();

/// Loads seed_categories.json and, when present next to it, cuisines.txt.
/// Throws ParseError unless the counts are exactly 14 / 9 / 4 / 19 and
/// "unrestricted" is among the diets.
SeedCatalog load_seed_catalog(const std::filesystem::path& seed_file,
                              const std::optional<std::filesystem::path>& cuisine_file = std::nullopt);

SeedCatalog default_seed_catalog();

/// Adds the category nodes. Allergen and SFP nodes are keyed by their
/// number ("7"), diets by id ("gluten_free"), seasons by name.
void seed_graph(GraphWriter& writer, const SeedCatalog& catalog);
Graph make_seeded_graph(const SeedCatalog& catalog);

} // namespace foodkg::kg
