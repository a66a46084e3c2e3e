// SPDX-License-Identifier: Apache-2.0

#include "foodkg/ingest/tables.hpp"

#include "foodkg/common/csv.hpp"
#include "foodkg/common/error.hpp"
#include "foodkg/common/io.hpp"
#include "foodkg/common/text.hpp"
#include "foodkg/ingest/quantity.hpp"

namespace foodkg::ingest {

std::string_view to_string(NutrientSource source)
{
    return source == NutrientSource::swiss ? "swiss" : "usda";
}

std::optional<NutrientSource> parse_nutrient_source(std::string_view s)
{
    if (s == "swiss")
        return NutrientSource::swiss;
    if (s == "usda")
        return NutrientSource::usda;
    return std::nullopt;
}

namespace {

std::size_t require_column(const CsvTable& table, std::string_view name)
{
    const std::size_t col = table.column(name);
    if (col == std::string_view::npos)
        throw ParseError("table header lacks a '" + std::string(name) + "' column");
    return col;
}

bool wrong_width(const CsvTable& table, const CsvRow& row, std::vector<SkippedRow>& skipped)
{
    if (row.cells.size() == table.header.size())
        return false;
    skipped.push_back({row.line, "expected " + std::to_string(table.header.size()) + " cells, found " +
                                     std::to_string(row.cells.size())});
    return true;
}

std::optional<double> parse_amount(std::string_view cell)
{
    const auto v = parse_quantity(cell);
    if (!v || cell.find('/') != std::string_view::npos)
        return std::nullopt;
    return v;
}

SubstituteComponent parse_component(std::string_view text)
{
    QuantityPhrase q = split_leading_quantity(text);
    return SubstituteComponent{text::normalize_name(q.rest), q.quantity, std::move(q.unit)};
}

} // namespace

NutrientTable parse_nutrient_table(std::string_view text, NutrientSource source)
{
    const CsvTable table = parse_csv(text);
    const std::size_t name_col = require_column(table, "name");
    NutrientTable out;
    for (const auto& row : table.rows) {
        if (wrong_width(table, row, out.skipped))
            continue;
        NutrientEntry entry{source, row.cells[name_col], {}, row.line};
        if (entry.name.empty()) {
            out.skipped.push_back({row.line, "blank name"});
            continue;
        }
        std::string problem;
        for (std::size_t c = 0; c < row.cells.size() && problem.empty(); ++c) {
            if (c == name_col || row.cells[c].empty())
                continue;
            if (const auto v = parse_amount(row.cells[c]))
                entry.nutrients[table.header[c]] = *v;
            else
                problem = "column '" + table.header[c] + "' is not a non-negative number: '" + row.cells[c] + "'";
        }
        if (!problem.empty()) {
            out.skipped.push_back({row.line, std::move(problem)});
            continue;
        }
        out.entries.push_back(std::move(entry));
    }
    return out;
}

NutrientTable load_nutrient_db(const std::filesystem::path& path, NutrientSource source)
{
    return parse_nutrient_table(read_file(path), source);
}

GITable parse_gi_table(std::string_view text)
{
    const CsvTable table = parse_csv(text);
    const std::size_t name_col = require_column(table, "name");
    const std::size_t gi_col = require_column(table, "gi");
    GITable out;
    for (const auto& row : table.rows) {
        if (wrong_width(table, row, out.skipped))
            continue;
        if (row.cells[name_col].empty()) {
            out.skipped.push_back({row.line, "blank name"});
            continue;
        }
        const auto gi = parse_amount(row.cells[gi_col]);
        if (!gi || *gi > 150.0) {
            out.skipped.push_back({row.line, "gi is not a number in [0, 150]: '" + row.cells[gi_col] + "'"});
            continue;
        }
        out.entries.push_back({row.cells[name_col], *gi, row.line});
    }
    return out;
}

GITable load_gi_table(const std::filesystem::path& path)
{
    return parse_gi_table(read_file(path));
}

std::optional<double> parse_ratio(std::string_view s)
{
    const std::string t = text::trim(s);
    const auto colon = t.find(':');
    if (colon == std::string::npos)
        return parse_amount(t);
    const auto a = parse_amount(std::string_view(t).substr(0, colon));
    const auto b = parse_amount(std::string_view(t).substr(colon + 1));
    if (!a || !b || *b == 0.0)
        return std::nullopt;
    return *a / *b;
}

SubstitutionTable parse_substitution_table(std::string_view text)
{
    const CsvTable table = parse_csv(text);
    const std::size_t target_col = require_column(table, "target");
    const std::size_t sub_col = require_column(table, "substitute");
    const std::size_t ratio_col = table.column("ratio");
    const std::size_t notes_col = table.column("notes");
    SubstitutionTable out;
    std::map<std::string, std::size_t> by_target;
    for (const auto& row : table.rows) {
        if (wrong_width(table, row, out.skipped))
            continue;
        SubstituteComponent target = parse_component(row.cells[target_col]);
        if (target.name.empty() || !text::contains_letter(target.name)) {
            out.skipped.push_back({row.line, "blank target"});
            continue;
        }
        Substitute sub;
        bool bad_part = false;
        for (const auto& part : text::split(row.cells[sub_col], '+')) {
            SubstituteComponent c = parse_component(part);
            if (c.name.empty() || !text::contains_letter(c.name)) {
                bad_part = true;
                break;
            }
            sub.components.push_back(std::move(c));
        }
        if (bad_part || sub.components.empty()) {
            out.skipped.push_back({row.line, "substitute without a food name: '" + row.cells[sub_col] + "'"});
            continue;
        }
        if (ratio_col != std::string_view::npos && !row.cells[ratio_col].empty()) {
            sub.ratio = parse_ratio(row.cells[ratio_col]);
            if (!sub.ratio) {
                out.skipped.push_back({row.line, "unreadable ratio '" + row.cells[ratio_col] + "'"});
                continue;
            }
        }
        if (notes_col != std::string_view::npos)
            sub.notes = row.cells[notes_col];
        const auto [it, inserted] = by_target.try_emplace(target.name, out.entries.size());
        if (inserted)
            out.entries.push_back({std::move(target), {}});
        out.entries[it->second].substitutes.push_back(std::move(sub));
    }
    return out;
}

SubstitutionTable load_substitutions(const std::filesystem::path& path)
{
    return parse_substitution_table(read_file(path));
}

} // namespace foodkg::ingest
