// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foodkg::ingest {

enum class NutrientSource { swiss, usda };

std::string_view to_string(NutrientSource source);
std::optional<NutrientSource> parse_nutrient_source(std::string_view s);

struct SkippedRow {
    std::size_t line = 0;
    std::string reason;
};

/// One food of a composition table. Nutrient keys are the table's column
/// headers (lowercased); amounts are per 100 g.
struct NutrientEntry {
    NutrientSource source = NutrientSource::swiss;
    std::string name;
    std::map<std::string, double> nutrients;
    /// Line of the source row, kept as provenance.
    std::size_t line = 0;
};

struct NutrientTable {
    std::vector<NutrientEntry> entries;
    std::vector<SkippedRow> skipped;
};

/// Header must contain `name`; every other column is a nutrient. Empty cells
/// mean "not measured" and are left out. Rows with a non-numeric or negative
/// amount, a blank name, or the wrong cell count are skipped and reported.
/// Throws ParseError for a missing name column or unreadable file.
NutrientTable parse_nutrient_table(std::string_view text, NutrientSource source);
NutrientTable load_nutrient_db(const std::filesystem::path& path, NutrientSource source);

struct GIEntry {
    std::string name;
    double gi = 0.0;
    std::size_t line = 0;
};

struct GITable {
    std::vector<GIEntry> entries;
    std::vector<SkippedRow> skipped;
};

/// Columns `name` and `gi`; gi must lie in [0, 150].
GITable parse_gi_table(std::string_view text);
GITable load_gi_table(const std::filesystem::path& path);

struct SubstituteComponent {
    std::string name;
    std::optional<double> quantity;
    std::optional<std::string> unit;

    bool operator==(const SubstituteComponent&) const = default;
};

/// One alternative: a single food, or several combined (composite).
struct Substitute {
    std::vector<SubstituteComponent> components;
    std::optional<double> ratio;
    std::string notes;

    bool composite() const { return components.size() > 1; }
};

struct SubstitutionEntry {
    SubstituteComponent target;
    std::vector<Substitute> substitutes;
};

struct SubstitutionTable {
    std::vector<SubstitutionEntry> entries;
    std::vector<SkippedRow> skipped;
};

/// Columns `target`, `substitute`, optional `ratio` and `notes`. A substitute
/// cell joins the parts of a composite with '+' ("1 cup milk + 1 tbsp lemon
/// juice"); each part may lead with an amount and unit. Ratio is "a:b" or a
/// plain number. Rows sharing a target (by normalized name) merge into one
/// entry in first-seen order.
SubstitutionTable parse_substitution_table(std::string_view text);
SubstitutionTable load_substitutions(const std::filesystem::path& path);

/// "1:1" -> 1, "2:1" -> 2, "0.75" -> 0.75.
std::optional<double> parse_ratio(std::string_view s);

} // namespace foodkg::ingest
