// SPDX-License-Identifier: Apache-2.0

#include "foodkg/kg/seed.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "foodkg/common/io.hpp"
#include "foodkg/common/text.hpp"

#ifndef FOODKG_DATA_DIR
#define FOODKG_DATA_DIR "data"
#endif

namespace foodkg::kg {

using nlohmann::json;

std::vector<std::string> SeedCatalog::restriction_ids() const
{
    std::vector<std::string> ids;
    for (const auto& d : diets) {
        if (d.id != kUnrestricted)
            ids.push_back(d.id);
    }
    return ids;
}

bool SeedCatalog::is_diet(std::string_view id) const
{
    return diet(id) != nullptr;
}

const DietCategory* SeedCatalog::diet(std::string_view id) const
{
    const auto it = std::find_if(diets.begin(), diets.end(), [&](const auto& d) { return d.id == id; });
    return it == diets.end() ? nullptr : &*it;
}

bool SeedCatalog::is_season(std::string_view id) const
{
    return std::find(seasons.begin(), seasons.end(), id) != seasons.end();
}

bool SeedCatalog::is_cuisine(std::string_view id) const
{
    return std::find(cuisines.begin(), cuisines.end(), id) != cuisines.end();
}

std::filesystem::path default_data_dir()
{
    if (const char* env = std::getenv("FOODKG_DATA_DIR"); env && *env)
        return env;
    return FOODKG_DATA_DIR;
}

SeedCatalog load_seed_catalog(const std::filesystem::path& seed_file,
                              const std::optional<std::filesystem::path>& cuisine_file)
{
    SeedCatalog catalog;
    try {
        const json j = json::parse(read_file(seed_file));
        for (const auto& a : j.at("allergens"))
            catalog.allergens.push_back({a.at("id").get<int>(), a.at("name").get<std::string>()});
        for (const auto& s : j.at("sfp_categories"))
            catalog.sfp_categories.push_back({s.at("id").get<int>(), s.at("name").get<std::string>()});
        catalog.seasons = j.at("seasons").get<std::vector<std::string>>();
        for (const auto& d : j.at("diets")) {
            catalog.diets.push_back({d.at("id").get<std::string>(), d.value("name", d.at("id").get<std::string>()),
                                     d.value("group", "")});
        }
        for (const auto& pair : j.value("diet_implications", json::array()))
            catalog.diet_implications.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError("seed catalog " + seed_file.string() + ": " + e.what());
    }

    if (catalog.allergens.size() != kAllergenCount)
        throw ParseError("seed catalog must define exactly 14 allergen categories");
    if (catalog.sfp_categories.size() != kSfpCount)
        throw ParseError("seed catalog must define exactly 9 food pyramid categories");
    if (catalog.seasons.size() != kSeasonCount)
        throw ParseError("seed catalog must define exactly 4 seasons");
    if (catalog.diets.size() != kDietCount || !catalog.is_diet(kUnrestricted))
        throw ParseError("seed catalog must define 18 diet restrictions plus 'unrestricted'");
    for (std::size_t i = 0; i < catalog.allergens.size(); ++i) {
        if (catalog.allergens[i].id != static_cast<int>(i + 1))
            throw ParseError("allergen categories must be numbered 1..14 in order");
    }
    for (std::size_t i = 0; i < catalog.sfp_categories.size(); ++i) {
        if (catalog.sfp_categories[i].id != static_cast<int>(i + 1))
            throw ParseError("food pyramid categories must be numbered 1..9 in order");
    }
    for (const auto& [a, b] : catalog.diet_implications) {
        if (!catalog.is_diet(a) || !catalog.is_diet(b))
            throw ParseError("diet implication names an unknown diet: " + a + " -> " + b);
    }

    auto cuisines_path = cuisine_file.value_or(seed_file.parent_path() / "cuisines.txt");
    if (std::filesystem::exists(cuisines_path)) {
        std::istringstream in(read_file(cuisines_path));
        std::string line;
        std::set<std::string> seen;
        while (std::getline(in, line)) {
            line = text::trim(line);
            if (line.empty() || line.starts_with('#'))
                continue;
            if (seen.insert(line).second)
                catalog.cuisines.push_back(line);
        }
    }
    return catalog;
}

SeedCatalog default_seed_catalog()
{
    return load_seed_catalog(default_data_dir() / "seed_categories.json");
}

void seed_graph(GraphWriter& writer, const SeedCatalog& catalog)
{
    for (const auto& a : catalog.allergens) {
        writer.add_node(NodeKind::AllergenCategory, a.name, {{"category_id", static_cast<double>(a.id)}},
                        std::to_string(a.id));
    }
    for (const auto& s : catalog.sfp_categories) {
        writer.add_node(NodeKind::SwissFoodPyramidCategory, s.name, {{"category_id", static_cast<double>(s.id)}},
                        std::to_string(s.id));
    }
    for (const auto& s : catalog.seasons)
        writer.add_node(NodeKind::Season, s);
    for (const auto& d : catalog.diets) {
        Props props{{"diet_id", d.id}};
        if (!d.group.empty())
            props.emplace("group", d.group);
        writer.add_node(NodeKind::DietRestriction, d.name, std::move(props), d.id);
    }
}

Graph make_seeded_graph(const SeedCatalog& catalog)
{
    Graph g;
    g.batch([&](GraphWriter& w) { seed_graph(w, catalog); });
    return g;
}

} // namespace foodkg::kg
