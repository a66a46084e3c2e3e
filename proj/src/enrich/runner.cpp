// SPDX-License-Identifier: Apache-2.0

#include "foodkg/enrich/runner.hpp"

#include <algorithm>
#include <set>

#include "foodkg/common/parallel.hpp"
#include "foodkg/common/text.hpp"

namespace foodkg::enrich {

using nlohmann::json;

EnrichmentResult enrich_corpus(const std::vector<ingest::RawRecipe>& recipes, TaskContext& ctx,
                               std::size_t max_in_flight)
{
    const auto english = parallel_map(recipes, max_in_flight,
                                      [&](const ingest::RawRecipe& r) { return translate_recipe(r, ctx); });

    std::set<std::string> line_set;
    for (const auto& r : english)
        line_set.insert(r.ingredient_lines.begin(), r.ingredient_lines.end());
    const std::vector<std::string> lines(line_set.begin(), line_set.end());
    const auto split = parallel_map(lines, max_in_flight,
                                    [&](const std::string& line) { return split_ingredient_line(line, ctx); });
    std::map<std::string, SplitIngredient> split_by_line;
    for (std::size_t i = 0; i < lines.size(); ++i)
        split_by_line.emplace(lines[i], split[i]);

    const auto tags =
        parallel_map(english, max_in_flight, [&](const ingest::RawRecipe& r) { return tag_recipe(r, ctx); });

    EnrichmentResult result;
    EnrichmentReport& report = result.report;
    std::set<std::string> names;
    for (std::size_t i = 0; i < english.size(); ++i) {
        const auto& src = english[i];
        CanonicalRecipe r;
        r.id = src.id;
        r.name = src.name;
        r.description = src.description;
        r.keywords = src.keywords;
        r.source_language = recipes[i].language;
        r.ingredient_lines = src.ingredient_lines;
        r.instructions = src.instructions;
        r.nutrition = src.nutrition;
        for (const auto& listed : src.utensils) {
            auto u = text::normalize_name(listed);
            if (!u.empty() && std::find(r.utensils.begin(), r.utensils.end(), u) == r.utensils.end())
                r.utensils.push_back(std::move(u));
        }
        r.tags = tags[i];
        for (const auto& line : src.ingredient_lines) {
            const SplitIngredient& s = split_by_line.at(line);
            for (const auto& u : s.utensils)
                if (std::find(r.utensils.begin(), r.utensils.end(), u) == r.utensils.end())
                    r.utensils.push_back(u);
            ++report.ingredient_lines;
            if (s.utensil_only()) {
                ++report.utensil_only_lines;
                continue;
            }
            r.ingredients.push_back(s);
            names.insert(s.name);
        }
        report.translated += recipes[i].language != ingest::Language::en;
        report.recipes_without_cuisine += !r.tags.cuisine.has_value();
        result.recipes.push_back(std::move(r));
    }

    const std::vector<std::string> name_list(names.begin(), names.end());
    const auto labels = parallel_map(name_list, max_in_flight,
                                     [&](const std::string& name) { return label_ingredient(name, ctx); });
    for (std::size_t i = 0; i < name_list.size(); ++i) {
        const auto& l = labels[i];
        report.allergen_assignments += l.allergens.size();
        report.sfp_assigned += l.sfp.has_value();
        if (const auto it = l.diets.find("diabetic"); it != l.diets.end() && it->second)
            report.low_confidence_diabetic.push_back(name_list[i]);
        result.ingredients.emplace(name_list[i], l);
    }

    for (auto& r : result.recipes) {
        std::vector<std::map<std::string, bool>> flags;
        for (const auto& ing : r.ingredients)
            flags.push_back(result.ingredients.at(ing.name).diets);
        auto propagated = propagate_recipe_diets(flags, ctx.catalog);
        r.diets = std::move(propagated.flags);
        r.diets_degenerate = propagated.degenerate;
        report.degenerate_diet_recipes += propagated.degenerate;
    }
    report.recipes = result.recipes.size();
    report.unique_ingredients = result.ingredients.size();
    return result;
}

void to_json(json& j, const CanonicalRecipe& r)
{
    j = json{{"id", r.id},
             {"name", r.name},
             {"description", r.description},
             {"keywords", r.keywords},
             {"source_language", ingest::to_string(r.source_language)},
             {"ingredient_lines", r.ingredient_lines},
             {"ingredients", r.ingredients},
             {"utensils", r.utensils},
             {"instructions", r.instructions},
             {"nutrition", r.nutrition},
             {"tags", r.tags},
             {"diets", r.diets},
             {"diets_degenerate", r.diets_degenerate}};
}

void from_json(const json& j, CanonicalRecipe& r)
{
    r.id = j.at("id").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.description = j.at("description").get<std::string>();
    r.keywords = j.at("keywords").get<std::vector<std::string>>();
    r.source_language = ingest::parse_language(j.at("source_language").get<std::string>()).value_or(ingest::Language::en);
    r.ingredient_lines = j.at("ingredient_lines").get<std::vector<std::string>>();
    r.ingredients = j.at("ingredients").get<std::vector<SplitIngredient>>();
    r.utensils = j.at("utensils").get<std::vector<std::string>>();
    r.instructions = j.at("instructions").get<std::vector<std::string>>();
    r.nutrition = j.at("nutrition").get<std::map<std::string, double>>();
    r.tags = j.at("tags").get<RecipeTags>();
    r.diets = j.at("diets").get<std::map<std::string, bool>>();
    r.diets_degenerate = j.at("diets_degenerate").get<bool>();
}

void to_json(json& j, const EnrichmentReport& r)
{
    j = json{{"recipes", r.recipes},
             {"translated", r.translated},
             {"ingredient_lines", r.ingredient_lines},
             {"utensil_only_lines", r.utensil_only_lines},
             {"unique_ingredients", r.unique_ingredients},
             {"allergen_assignments", r.allergen_assignments},
             {"sfp_assigned", r.sfp_assigned},
             {"recipes_without_cuisine", r.recipes_without_cuisine},
             {"degenerate_diet_recipes", r.degenerate_diet_recipes},
             {"low_confidence_diabetic", r.low_confidence_diabetic}};
}

void from_json(const json& j, EnrichmentReport& r)
{
    r.recipes = j.at("recipes").get<std::size_t>();
    r.translated = j.at("translated").get<std::size_t>();
    r.ingredient_lines = j.at("ingredient_lines").get<std::size_t>();
    r.utensil_only_lines = j.at("utensil_only_lines").get<std::size_t>();
    r.unique_ingredients = j.at("unique_ingredients").get<std::size_t>();
    r.allergen_assignments = j.at("allergen_assignments").get<std::size_t>();
    r.sfp_assigned = j.at("sfp_assigned").get<std::size_t>();
    r.recipes_without_cuisine = j.at("recipes_without_cuisine").get<std::size_t>();
    r.degenerate_diet_recipes = j.at("degenerate_diet_recipes").get<std::size_t>();
    r.low_confidence_diabetic = j.at("low_confidence_diabetic").get<std::vector<std::string>>();
}

void to_json(json& j, const EnrichmentResult& r)
{
    j = json{{"recipes", r.recipes}, {"ingredients", r.ingredients}, {"report", r.report}};
}

void from_json(const json& j, EnrichmentResult& r)
{
    r.recipes = j.at("recipes").get<std::vector<CanonicalRecipe>>();
    r.ingredients = j.at("ingredients").get<std::map<std::string, IngredientLabels>>();
    r.report = j.at("report").get<EnrichmentReport>();
}

} // namespace foodkg::enrich
