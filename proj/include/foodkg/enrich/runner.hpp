// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/enrich/tasks.hpp"
#include "foodkg/ingest/recipe.hpp"

namespace foodkg::enrich {

/// A recipe after translation, splitting, tagging and diet propagation.
struct CanonicalRecipe {
    std::string id;
    std::string name;
    std::string description;
    std::vector<std::string> keywords;
    ingest::Language source_language = ingest::Language::en;
    /// English ingredient lines, parallel to the input.
    std::vector<std::string> ingredient_lines;
    /// Split lines that name an ingredient, in line order.
    std::vector<SplitIngredient> ingredients;
    /// Listed utensils followed by those split out of ingredient lines.
    std::vector<std::string> utensils;
    std::vector<std::string> instructions;
    std::map<std::string, double> nutrition;
    RecipeTags tags;
    /// Intersection over ingredients for the 18 restrictions, plus
    /// "unrestricted".
    std::map<std::string, bool> diets;
    bool diets_degenerate = false;

    bool operator==(const CanonicalRecipe&) const = default;
};

struct EnrichmentReport {
    std::size_t recipes = 0;
    std::size_t translated = 0;
    std::size_t ingredient_lines = 0;
    std::size_t utensil_only_lines = 0;
    std::size_t unique_ingredients = 0;
    std::size_t allergen_assignments = 0;
    std::size_t sfp_assigned = 0;
    std::size_t recipes_without_cuisine = 0;
    std::size_t degenerate_diet_recipes = 0;
    /// Ingredients the model marked diabetic-suitable. That label is poorly
    /// defined, so these are surfaced for review rather than trusted.
    std::vector<std::string> low_confidence_diabetic;

    bool operator==(const EnrichmentReport&) const = default;
};

struct EnrichmentResult {
    std::vector<CanonicalRecipe> recipes;
    /// Labels per distinct ingredient name, sorted by name.
    std::map<std::string, IngredientLabels> ingredients;
    EnrichmentReport report;

    bool operator==(const EnrichmentResult&) const = default;
};

/// Translates, splits and tags every recipe, then labels each distinct
/// ingredient once and propagates diet flags. Backend calls run with at most
/// `max_in_flight` in flight; the result does not depend on that number.
/// Any task failure propagates.
EnrichmentResult enrich_corpus(const std::vector<ingest::RawRecipe>& recipes, TaskContext& ctx,
                               std::size_t max_in_flight = 4);

void to_json(nlohmann::json& j, const CanonicalRecipe& r);
void from_json(const nlohmann::json& j, CanonicalRecipe& r);
void to_json(nlohmann::json& j, const EnrichmentReport& r);
void from_json(const nlohmann::json& j, EnrichmentReport& r);
void to_json(nlohmann::json& j, const EnrichmentResult& r);
void from_json(const nlohmann::json& j, EnrichmentResult& r);

} // namespace foodkg::enrich
