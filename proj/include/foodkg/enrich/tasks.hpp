// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/enrich/backend.hpp"
#include "foodkg/enrich/prompts.hpp"
#include "foodkg/enrich/structured.hpp"
#include "foodkg/ingest/recipe.hpp"
#include "foodkg/kg/seed.hpp"

namespace foodkg::enrich {

/// Everything a task call needs. The backend must outlive the context.
struct TaskContext {
    LlmBackend& backend;
    const PromptPack& prompts;
    const kg::SeedCatalog& catalog;
    GenerationConfig config;
};

struct SplitIngredient {
    /// Lowercase singular name; empty for a line that only names utensils.
    std::string name;
    std::optional<double> quantity;
    std::optional<std::string> unit;
    std::string notes;
    std::vector<std::string> utensils;

    bool utensil_only() const { return name.empty(); }
    bool operator==(const SplitIngredient&) const = default;
};

struct IngredientLabels {
    std::set<int> allergens;
    std::optional<int> sfp;
    /// All 19 diet ids.
    std::map<std::string, bool> diets;

    bool operator==(const IngredientLabels&) const = default;
};

struct RecipeTags {
    std::optional<std::string> cuisine;
    std::set<std::string> seasons;
    /// Closed under the catalog's implications; always holds "unrestricted".
    std::set<std::string> diets;

    bool operator==(const RecipeTags&) const = default;
};

/// Translation changed the number of lines or instructions.
class StructuralMismatchError : public Error {
public:
    using Error::Error;
};

/// Schemas the tasks validate replies against.
Schema translation_schema();
Schema splitting_schema();
Schema allergen_schema();
Schema sfp_schema();
Schema diet_schema(const kg::SeedCatalog& catalog);
Schema tagging_schema(const kg::SeedCatalog& catalog);

/// User prompts: compact JSON objects with the task inputs.
std::string translation_input(const ingest::RawRecipe& recipe);
std::string splitting_input(std::string_view line);
std::string ingredient_input(std::string_view name);
std::string tagging_input(const ingest::RawRecipe& recipe);

/// English recipes come back unchanged. Otherwise name, description,
/// keywords, ingredient lines and instructions are replaced; a reply with a
/// different number of ingredient lines or instructions throws
/// StructuralMismatchError (no retry: the model understood the format).
ingest::RawRecipe translate_recipe(const ingest::RawRecipe& recipe, TaskContext& ctx);

/// Name normalized to lowercase singular, unit canonicalized where known,
/// utensils lowercased; a name that is itself one of the utensils is
/// dropped so utensils never appear as ingredients.
SplitIngredient split_ingredient_line(std::string_view line, TaskContext& ctx);

std::set<int> map_allergens(std::string_view name, TaskContext& ctx);
std::optional<int> map_sfp(std::string_view name, TaskContext& ctx);
/// Suitable diets closed under implications; "unrestricted" always true.
std::map<std::string, bool> map_diets(std::string_view name, TaskContext& ctx);
IngredientLabels label_ingredient(std::string_view name, TaskContext& ctx);

RecipeTags tag_recipe(const ingest::RawRecipe& recipe, TaskContext& ctx);

/// Adds every diet implied by the given ones and "unrestricted"; returns a
/// flag for each of the catalog's diets.
std::map<std::string, bool> close_diets(const std::set<std::string>& suitable, const kg::SeedCatalog& catalog);

struct DietPropagation {
    std::map<std::string, bool> flags;
    /// No ingredients: every restriction is vacuously true.
    bool degenerate = false;
};

/// Each of the 18 restrictions is the AND of the ingredient flags (a missing
/// flag counts as false); "unrestricted" is always true. A zero-ingredient
/// recipe yields all-true flags with `degenerate` set and a logged warning.
DietPropagation propagate_recipe_diets(const std::vector<std::map<std::string, bool>>& ingredient_flags,
                                       const kg::SeedCatalog& catalog);

void to_json(nlohmann::json& j, const SplitIngredient& s);
void from_json(const nlohmann::json& j, SplitIngredient& s);
void to_json(nlohmann::json& j, const IngredientLabels& l);
void from_json(const nlohmann::json& j, IngredientLabels& l);
void to_json(nlohmann::json& j, const RecipeTags& t);
void from_json(const nlohmann::json& j, RecipeTags& t);

} // namespace foodkg::enrich
