// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace foodkg::ingest {

enum class Language { en, fr, de, it };

std::string_view to_string(Language language);
std::optional<Language> parse_language(std::string_view s);

struct RawRecipe {
    std::string id;
    std::string name;
    std::string description;
    std::vector<std::string> keywords;
    Language language = Language::en;
    std::vector<std::string> ingredient_lines;
    std::vector<std::string> instructions;
    std::vector<std::string> utensils;
    std::map<std::string, double> nutrition;
    std::optional<std::string> cuisine;
    std::optional<std::string> season;

    bool operator==(const RawRecipe&) const = default;
};

enum class RejectReason { invalid_ingredients, missing_instructions, malformed };

/// "invalid ingredients", "missing instructions", "malformed".
std::string_view to_string(RejectReason reason);

struct Rejection {
    /// 0-based position of the record in the input array.
    std::size_t index = 0;
    /// The record's id or name when it had one, else empty.
    std::string label;
    RejectReason reason = RejectReason::malformed;
    std::string detail;
};

struct CorpusParseResult {
    std::vector<RawRecipe> recipes;
    std::vector<Rejection> rejected;
    std::size_t record_count = 0;
};

/// Parses a JSON array of recipe objects. Each record either becomes a
/// RawRecipe or lands in `rejected`; only a document that is not a JSON
/// array throws (ParseError). Records without an id get "recipe-<n>" with n
/// the 1-based record position; colliding ids get "-2", "-3", ... appended.
/// Ingredient lines and instructions are whitespace-collapsed and blank
/// entries dropped before validation.
CorpusParseResult parse_recipe_corpus_text(std::string_view json_text);
CorpusParseResult parse_recipe_corpus(const std::filesystem::path& path);

/// Drops records whose name, ingredient lines and instructions equal those of
/// an earlier record after whitespace collapsing and lowercasing. Keeps the
/// first occurrence and the input order.
std::vector<RawRecipe> dedupe(std::vector<RawRecipe> recipes);

void to_json(nlohmann::json& j, const RawRecipe& r);
void from_json(const nlohmann::json& j, RawRecipe& r);
void to_json(nlohmann::json& j, const Rejection& r);

} // namespace foodkg::ingest
