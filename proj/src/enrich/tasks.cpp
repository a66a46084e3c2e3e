// SPDX-License-Identifier: Apache-2.0

#include "foodkg/enrich/tasks.hpp"

#include <algorithm>

#include "foodkg/common/log.hpp"
#include "foodkg/common/text.hpp"
#include "foodkg/ingest/quantity.hpp"

namespace foodkg::enrich {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::vector<std::string> diet_ids(const kg::SeedCatalog& catalog)
{
    std::vector<std::string> ids;
    for (const auto& d : catalog.diets)
        ids.push_back(d.id);
    return ids;
}

FieldSpec field(std::string name, FieldType type, bool required = true, bool nullable = false)
{
    FieldSpec f;
    f.name = std::move(name);
    f.type = type;
    f.required = required;
    f.nullable = nullable;
    return f;
}

FieldSpec list_field(std::string name, std::vector<std::string> allowed = {}, bool required = true)
{
    FieldSpec f = field(std::move(name), FieldType::string_list, required);
    f.allowed = std::move(allowed);
    return f;
}

std::vector<std::string> strings_of(const json& j)
{
    return j.get<std::vector<std::string>>();
}

} // namespace

Schema translation_schema()
{
    Schema s{"translation", {}, {}};
    s.fields.push_back(field("name", FieldType::string));
    s.fields.push_back(field("description", FieldType::string, false, true));
    s.fields.push_back(list_field("keywords", {}, false));
    s.fields.push_back(list_field("ingredient_lines"));
    s.fields.back().unique = false;
    s.fields.push_back(list_field("instructions"));
    s.fields.back().unique = false;
    s.fields.push_back(list_field("utensils", {}, false));
    s.check = [](const json& v) {
        return v.at("name").get<std::string>().empty() ? std::string("field 'name' must not be empty")
                                                       : std::string();
    };
    return s;
}

Schema splitting_schema()
{
    Schema s{"splitting", {}, {}};
    s.fields.push_back(field("name", FieldType::string, false, true));
    s.fields.push_back(field("quantity", FieldType::number, false, true));
    s.fields.push_back(field("unit", FieldType::string, false, true));
    s.fields.push_back(field("notes", FieldType::string, false, true));
    s.fields.push_back(list_field("utensils", {}, false));
    s.check = [](const json& v) {
        const bool no_name = v.at("name").is_null() || v.at("name").get<std::string>().empty();
        if (no_name && v.at("utensils").empty())
            return std::string("a line needs an ingredient name or at least one utensil");
        if (!v.at("quantity").is_null() && v.at("quantity").get<double>() < 0.0)
            return std::string("field 'quantity' must not be negative");
        return std::string();
    };
    return s;
}

Schema allergen_schema()
{
    FieldSpec f = field("allergens", FieldType::integer_list);
    f.range = {1, static_cast<long>(kg::kAllergenCount)};
    return Schema{"allergens", {f}, {}};
}

Schema sfp_schema()
{
    FieldSpec f = field("sfp", FieldType::integer, true, true);
    f.range = {1, static_cast<long>(kg::kSfpCount)};
    return Schema{"sfp", {f}, {}};
}

Schema diet_schema(const kg::SeedCatalog& catalog)
{
    return Schema{"diets", {list_field("diets", diet_ids(catalog))}, {}};
}

Schema tagging_schema(const kg::SeedCatalog& catalog)
{
    Schema s{"tagging", {}, {}};
    FieldSpec cuisine = field("cuisine", FieldType::string, false, true);
    cuisine.allowed = catalog.cuisines;
    s.fields.push_back(cuisine);
    s.fields.push_back(list_field("seasons", catalog.seasons, false));
    s.fields.push_back(list_field("diets", diet_ids(catalog), false));
    return s;
}

std::string translation_input(const ingest::RawRecipe& r)
{
    ordered_json j;
    j["source_language"] = ingest::to_string(r.language);
    j["name"] = r.name;
    j["description"] = r.description;
    j["keywords"] = r.keywords;
    j["ingredient_lines"] = r.ingredient_lines;
    j["instructions"] = r.instructions;
    j["utensils"] = r.utensils;
    return j.dump();
}

std::string splitting_input(std::string_view line)
{
    ordered_json j;
    j["line"] = std::string(line);
    return j.dump();
}

std::string ingredient_input(std::string_view name)
{
    ordered_json j;
    j["ingredient"] = std::string(name);
    return j.dump();
}

std::string tagging_input(const ingest::RawRecipe& r)
{
    ordered_json j;
    j["name"] = r.name;
    j["description"] = r.description;
    j["keywords"] = r.keywords;
    j["ingredient_lines"] = r.ingredient_lines;
    j["cuisine_hint"] = r.cuisine ? json(*r.cuisine) : json(nullptr);
    j["season_hint"] = r.season ? json(*r.season) : json(nullptr);
    return j.dump();
}

ingest::RawRecipe translate_recipe(const ingest::RawRecipe& recipe, TaskContext& ctx)
{
    if (recipe.language == ingest::Language::en)
        return recipe;
    const json v = complete_structured(ctx.backend, ctx.prompts.system(Task::translation), translation_input(recipe),
                                       translation_schema(), ctx.config);
    ingest::RawRecipe out = recipe;
    out.ingredient_lines = strings_of(v.at("ingredient_lines"));
    out.instructions = strings_of(v.at("instructions"));
    if (out.ingredient_lines.size() != recipe.ingredient_lines.size() ||
        out.instructions.size() != recipe.instructions.size()) {
        throw StructuralMismatchError(
            "translation of '" + recipe.id + "' returned " + std::to_string(out.ingredient_lines.size()) +
            " ingredient lines and " + std::to_string(out.instructions.size()) + " instructions for " +
            std::to_string(recipe.ingredient_lines.size()) + " and " + std::to_string(recipe.instructions.size()));
    }
    out.name = v.at("name").get<std::string>();
    if (!v.at("description").is_null())
        out.description = v.at("description").get<std::string>();
    out.keywords = strings_of(v.at("keywords"));
    // Older replies may lack utensils; keep the source list then.
    if (const auto utensils = strings_of(v.at("utensils")); !utensils.empty())
        out.utensils = utensils;
    out.language = ingest::Language::en;
    return out;
}

SplitIngredient split_ingredient_line(std::string_view line, TaskContext& ctx)
{
    const json v = complete_structured(ctx.backend, ctx.prompts.system(Task::splitting), splitting_input(line),
                                       splitting_schema(), ctx.config);
    SplitIngredient out;
    for (const auto& u : strings_of(v.at("utensils"))) {
        std::string utensil = text::normalize_name(u);
        if (!utensil.empty() && std::find(out.utensils.begin(), out.utensils.end(), utensil) == out.utensils.end())
            out.utensils.push_back(std::move(utensil));
    }
    if (!v.at("name").is_null()) {
        out.name = text::normalize_name(v.at("name").get<std::string>());
        if (std::find(out.utensils.begin(), out.utensils.end(), out.name) != out.utensils.end())
            out.name.clear();
    }
    if (!v.at("quantity").is_null())
        out.quantity = v.at("quantity").get<double>();
    if (!v.at("unit").is_null()) {
        const std::string unit = text::to_lower(text::trim(v.at("unit").get<std::string>()));
        if (!unit.empty())
            out.unit = ingest::canonical_unit(unit).value_or(unit);
    }
    if (!v.at("notes").is_null())
        out.notes = text::collapse_whitespace(v.at("notes").get<std::string>());
    return out;
}

std::set<int> map_allergens(std::string_view name, TaskContext& ctx)
{
    const json v = complete_structured(ctx.backend, ctx.prompts.system(Task::allergens), ingredient_input(name),
                                       allergen_schema(), ctx.config);
    return v.at("allergens").get<std::set<int>>();
}

std::optional<int> map_sfp(std::string_view name, TaskContext& ctx)
{
    const json v = complete_structured(ctx.backend, ctx.prompts.system(Task::sfp), ingredient_input(name),
                                       sfp_schema(), ctx.config);
    if (v.at("sfp").is_null())
        return std::nullopt;
    return v.at("sfp").get<int>();
}

std::map<std::string, bool> map_diets(std::string_view name, TaskContext& ctx)
{
    const json v = complete_structured(ctx.backend, ctx.prompts.system(Task::diets), ingredient_input(name),
                                       diet_schema(ctx.catalog), ctx.config);
    return close_diets(v.at("diets").get<std::set<std::string>>(), ctx.catalog);
}

IngredientLabels label_ingredient(std::string_view name, TaskContext& ctx)
{
    return IngredientLabels{map_allergens(name, ctx), map_sfp(name, ctx), map_diets(name, ctx)};
}

RecipeTags tag_recipe(const ingest::RawRecipe& recipe, TaskContext& ctx)
{
    const json v = complete_structured(ctx.backend, ctx.prompts.system(Task::tagging), tagging_input(recipe),
                                       tagging_schema(ctx.catalog), ctx.config);
    RecipeTags tags;
    if (!v.at("cuisine").is_null())
        tags.cuisine = v.at("cuisine").get<std::string>();
    tags.seasons = v.at("seasons").get<std::set<std::string>>();
    for (const auto& [id, on] : close_diets(v.at("diets").get<std::set<std::string>>(), ctx.catalog))
        if (on)
            tags.diets.insert(id);
    return tags;
}

std::map<std::string, bool> close_diets(const std::set<std::string>& suitable, const kg::SeedCatalog& catalog)
{
    std::set<std::string> closed = suitable;
    closed.insert(std::string(kg::kUnrestricted));
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& [from, to] : catalog.diet_implications)
            if (closed.contains(from) && closed.insert(to).second)
                grew = true;
    }
    std::map<std::string, bool> flags;
    for (const auto& d : catalog.diets)
        flags[d.id] = closed.contains(d.id);
    return flags;
}

DietPropagation propagate_recipe_diets(const std::vector<std::map<std::string, bool>>& ingredient_flags,
                                       const kg::SeedCatalog& catalog)
{
    DietPropagation out;
    for (const auto& id : catalog.restriction_ids()) {
        bool all = true;
        for (const auto& flags : ingredient_flags) {
            const auto it = flags.find(id);
            all = all && it != flags.end() && it->second;
        }
        out.flags[id] = all;
    }
    out.flags[std::string(kg::kUnrestricted)] = true;
    if (ingredient_flags.empty()) {
        out.degenerate = true;
        logger()->warn("diet propagation over zero ingredients: every restriction holds vacuously");
    }
    return out;
}

void to_json(json& j, const SplitIngredient& s)
{
    j = json{{"name", s.name}, {"notes", s.notes}, {"utensils", s.utensils}};
    j["quantity"] = s.quantity ? json(*s.quantity) : json(nullptr);
    j["unit"] = s.unit ? json(*s.unit) : json(nullptr);
}

void from_json(const json& j, SplitIngredient& s)
{
    s.name = j.at("name").get<std::string>();
    s.notes = j.value("notes", std::string());
    s.utensils = j.value("utensils", std::vector<std::string>());
    s.quantity.reset();
    s.unit.reset();
    if (j.contains("quantity") && !j.at("quantity").is_null())
        s.quantity = j.at("quantity").get<double>();
    if (j.contains("unit") && !j.at("unit").is_null())
        s.unit = j.at("unit").get<std::string>();
}

void to_json(json& j, const IngredientLabels& l)
{
    j = json{{"allergens", l.allergens}, {"diets", l.diets}};
    j["sfp"] = l.sfp ? json(*l.sfp) : json(nullptr);
}

void from_json(const json& j, IngredientLabels& l)
{
    l.allergens = j.at("allergens").get<std::set<int>>();
    l.diets = j.at("diets").get<std::map<std::string, bool>>();
    l.sfp.reset();
    if (!j.at("sfp").is_null())
        l.sfp = j.at("sfp").get<int>();
}

void to_json(json& j, const RecipeTags& t)
{
    j = json{{"seasons", t.seasons}, {"diets", t.diets}};
    j["cuisine"] = t.cuisine ? json(*t.cuisine) : json(nullptr);
}

void from_json(const json& j, RecipeTags& t)
{
    t.seasons = j.at("seasons").get<std::set<std::string>>();
    t.diets = j.at("diets").get<std::set<std::string>>();
    t.cuisine.reset();
    if (!j.at("cuisine").is_null())
        t.cuisine = j.at("cuisine").get<std::string>();
}

} // namespace foodkg::enrich
