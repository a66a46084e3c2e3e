// SPDX-License-Identifier: Apache-2.0

#include "foodkg/ingest/recipe.hpp"

#include <set>

#include "foodkg/common/error.hpp"
#include "foodkg/common/io.hpp"
#include "foodkg/common/text.hpp"

namespace foodkg::ingest {

std::string_view to_string(Language language)
{
    switch (language) {
    case Language::en:
        return "en";
    case Language::fr:
        return "fr";
    case Language::de:
        return "de";
    case Language::it:
        return "it";
    }
    return "en";
}

std::optional<Language> parse_language(std::string_view s)
{
    const std::string l = text::to_lower(text::trim(s));
    for (const Language lang : {Language::en, Language::fr, Language::de, Language::it})
        if (l == to_string(lang))
            return lang;
    return std::nullopt;
}

std::string_view to_string(RejectReason reason)
{
    switch (reason) {
    case RejectReason::invalid_ingredients:
        return "invalid ingredients";
    case RejectReason::missing_instructions:
        return "missing instructions";
    case RejectReason::malformed:
        return "malformed";
    }
    return "malformed";
}

namespace {

struct RecordError {
    RejectReason reason;
    std::string detail;
};

const nlohmann::json* field(const nlohmann::json& obj, std::string_view key)
{
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return nullptr;
    return &*it;
}

std::string string_field(const nlohmann::json& obj, std::string_view key, bool required)
{
    const auto* v = field(obj, key);
    if (v == nullptr) {
        if (required)
            throw RecordError{RejectReason::malformed, "missing '" + std::string(key) + "'"};
        return {};
    }
    if (!v->is_string())
        throw RecordError{RejectReason::malformed, "'" + std::string(key) + "' is not a string"};
    return text::collapse_whitespace(v->get<std::string>());
}

std::vector<std::string> string_list(const nlohmann::json& obj, std::string_view key)
{
    std::vector<std::string> out;
    const auto* v = field(obj, key);
    if (v == nullptr)
        return out;
    if (!v->is_array())
        throw RecordError{RejectReason::malformed, "'" + std::string(key) + "' is not an array"};
    for (const auto& item : *v) {
        if (!item.is_string())
            throw RecordError{RejectReason::malformed, "'" + std::string(key) + "' holds a non-string entry"};
        std::string s = text::collapse_whitespace(item.get<std::string>());
        if (!s.empty())
            out.push_back(std::move(s));
    }
    return out;
}

RawRecipe parse_record(const nlohmann::json& obj)
{
    if (!obj.is_object())
        throw RecordError{RejectReason::malformed, "record is not an object"};
    RawRecipe r;
    r.id = string_field(obj, "id", false);
    r.name = string_field(obj, "name", true);
    if (r.name.empty())
        throw RecordError{RejectReason::malformed, "empty name"};
    r.description = string_field(obj, "description", false);
    r.keywords = string_list(obj, "keywords");
    const std::string language = string_field(obj, "language", true);
    const auto lang = parse_language(language);
    if (!lang)
        throw RecordError{RejectReason::malformed, "unsupported language '" + language + "'"};
    r.language = *lang;
    r.utensils = string_list(obj, "utensils");
    if (const auto* n = field(obj, "nutrition")) {
        if (!n->is_object())
            throw RecordError{RejectReason::malformed, "'nutrition' is not an object"};
        for (const auto& [k, v] : n->items()) {
            if (!v.is_number() || v.get<double>() < 0.0)
                throw RecordError{RejectReason::malformed, "nutrition '" + k + "' is not a non-negative number"};
            r.nutrition[k] = v.get<double>();
        }
    }
    if (auto c = string_field(obj, "cuisine", false); !c.empty())
        r.cuisine = std::move(c);
    if (auto s = string_field(obj, "season", false); !s.empty())
        r.season = std::move(s);

    r.ingredient_lines = string_list(obj, "ingredient_lines");
    if (r.ingredient_lines.empty())
        throw RecordError{RejectReason::invalid_ingredients, "no ingredient lines"};
    for (const auto& line : r.ingredient_lines)
        if (!text::contains_letter(line))
            throw RecordError{RejectReason::invalid_ingredients, "ingredient line without a name: '" + line + "'"};
    r.instructions = string_list(obj, "instructions");
    if (r.instructions.empty())
        throw RecordError{RejectReason::missing_instructions, "no instructions"};
    return r;
}

std::string dedupe_key(const RawRecipe& r)
{
    std::string key = text::to_lower(r.name);
    key += '\x1f';
    for (const auto& l : r.ingredient_lines)
        key += text::to_lower(l) + '\x1e';
    key += '\x1f';
    for (const auto& s : r.instructions)
        key += text::to_lower(s) + '\x1e';
    return key;
}

} // namespace

CorpusParseResult parse_recipe_corpus_text(std::string_view json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("recipe corpus is not valid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw ParseError("recipe corpus must be a JSON array");

    CorpusParseResult result;
    result.record_count = doc.size();
    std::set<std::string> used_ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            RawRecipe r = parse_record(doc[i]);
            std::string base = r.id.empty() ? "recipe-" + std::to_string(i + 1) : r.id;
            std::string id = base;
            for (int n = 2; used_ids.contains(id); ++n)
                id = base + "-" + std::to_string(n);
            used_ids.insert(id);
            r.id = std::move(id);
            result.recipes.push_back(std::move(r));
        } catch (const RecordError& e) {
            Rejection rej{i, {}, e.reason, e.detail};
            if (doc[i].is_object()) {
                for (const char* key : {"id", "name"}) {
                    const auto it = doc[i].find(key);
                    if (it != doc[i].end() && it->is_string() && !it->get<std::string>().empty()) {
                        rej.label = it->get<std::string>();
                        break;
                    }
                }
            }
            result.rejected.push_back(std::move(rej));
        }
    }
    return result;
}

CorpusParseResult parse_recipe_corpus(const std::filesystem::path& path)
{
    return parse_recipe_corpus_text(read_file(path));
}

std::vector<RawRecipe> dedupe(std::vector<RawRecipe> recipes)
{
    std::set<std::string> seen;
    std::vector<RawRecipe> out;
    for (auto& r : recipes)
        if (seen.insert(dedupe_key(r)).second)
            out.push_back(std::move(r));
    return out;
}

void to_json(nlohmann::json& j, const RawRecipe& r)
{
    j = nlohmann::json{{"id", r.id},
                       {"name", r.name},
                       {"description", r.description},
                       {"keywords", r.keywords},
                       {"language", to_string(r.language)},
                       {"ingredient_lines", r.ingredient_lines},
                       {"instructions", r.instructions},
                       {"utensils", r.utensils},
                       {"nutrition", r.nutrition}};
    if (r.cuisine)
        j["cuisine"] = *r.cuisine;
    if (r.season)
        j["season"] = *r.season;
}

void from_json(const nlohmann::json& j, RawRecipe& r)
{
    r.id = j.at("id").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.description = j.value("description", std::string());
    r.keywords = j.value("keywords", std::vector<std::string>());
    const auto lang = parse_language(j.at("language").get<std::string>());
    if (!lang)
        throw ParseError("unsupported language in recipe '" + r.id + "'");
    r.language = *lang;
    r.ingredient_lines = j.at("ingredient_lines").get<std::vector<std::string>>();
    r.instructions = j.at("instructions").get<std::vector<std::string>>();
    r.utensils = j.value("utensils", std::vector<std::string>());
    r.nutrition = j.value("nutrition", std::map<std::string, double>());
    r.cuisine.reset();
    r.season.reset();
    if (j.contains("cuisine"))
        r.cuisine = j.at("cuisine").get<std::string>();
    if (j.contains("season"))
        r.season = j.at("season").get<std::string>();
}

void to_json(nlohmann::json& j, const Rejection& r)
{
    j = nlohmann::json{{"index", r.index}, {"label", r.label}, {"reason", to_string(r.reason)}, {"detail", r.detail}};
}

} // namespace foodkg::ingest
