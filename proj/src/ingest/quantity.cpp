// SPDX-License-Identifier: Apache-2.0

#include "foodkg/ingest/quantity.hpp"

#include <array>
#include <charconv>
#include <utility>
#include <vector>

#include "foodkg/common/text.hpp"

namespace foodkg::ingest {

namespace {

constexpr std::array<std::pair<std::string_view, double>, 9> kVulgarFractions{{
    {"½", 0.5},
    {"⅓", 1.0 / 3.0},
    {"⅔", 2.0 / 3.0},
    {"¼", 0.25},
    {"¾", 0.75},
    {"⅕", 0.2},
    {"⅛", 0.125},
    {"⅜", 0.375},
    {"⅝", 0.625},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 46> kUnits{{
    {"g", "g"},           {"gram", "g"},       {"grams", "g"},         {"gr", "g"},
    {"kg", "kg"},         {"kilogram", "kg"},  {"kilograms", "kg"},    {"mg", "mg"},
    {"ml", "ml"},         {"millilitre", "ml"}, {"milliliter", "ml"},  {"millilitres", "ml"},
    {"milliliters", "ml"}, {"cl", "cl"},        {"dl", "dl"},           {"l", "l"},
    {"litre", "l"},       {"liter", "l"},      {"litres", "l"},        {"liters", "l"},
    {"cup", "cup"},       {"cups", "cup"},     {"tbsp", "tbsp"},       {"tablespoon", "tbsp"},
    {"tablespoons", "tbsp"}, {"tbs", "tbsp"},  {"tsp", "tsp"},         {"teaspoon", "tsp"},
    {"teaspoons", "tsp"}, {"oz", "oz"},        {"ounce", "oz"},        {"ounces", "oz"},
    {"lb", "lb"},         {"lbs", "lb"},       {"pound", "lb"},        {"pounds", "lb"},
    {"pinch", "pinch"},   {"pinches", "pinch"}, {"clove", "clove"},    {"cloves", "clove"},
    {"slice", "slice"},   {"slices", "slice"}, {"can", "can"},         {"cans", "can"},
    {"bunch", "bunch"},   {"sprig", "sprig"},
}};

std::optional<double> parse_plain(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value, std::chars_format::fixed);
    if (ec != std::errc() || end != s.data() + s.size() || value < 0.0)
        return std::nullopt;
    return value;
}

} // namespace

std::optional<double> parse_quantity(std::string_view token)
{
    const std::string t = text::trim(token);
    if (t.empty())
        return std::nullopt;
    for (const auto& [glyph, value] : kVulgarFractions) {
        if (t == glyph)
            return value;
        if (t.size() > glyph.size() && std::string_view(t).ends_with(glyph)) {
            const auto whole = parse_plain(std::string_view(t).substr(0, t.size() - glyph.size()));
            if (whole && *whole == static_cast<long long>(*whole))
                return *whole + value;
            return std::nullopt;
        }
    }
    const auto slash = t.find('/');
    if (slash != std::string::npos) {
        const auto num = parse_plain(std::string_view(t).substr(0, slash));
        const auto den = parse_plain(std::string_view(t).substr(slash + 1));
        if (!num || !den || *den == 0.0)
            return std::nullopt;
        return *num / *den;
    }
    return parse_plain(t);
}

std::optional<std::string> canonical_unit(std::string_view word)
{
    std::string w = text::to_lower(text::trim(word));
    if (w.ends_with('.'))
        w.pop_back();
    for (const auto& [spelling, unit] : kUnits)
        if (w == spelling)
            return std::string(unit);
    return std::nullopt;
}

QuantityPhrase split_leading_quantity(std::string_view phrase)
{
    QuantityPhrase out;
    std::vector<std::string> words;
    for (auto& w : text::split(text::collapse_whitespace(phrase), ' '))
        if (!w.empty())
            words.push_back(std::move(w));
    std::size_t pos = 0;
    if (pos < words.size()) {
        if (auto q = parse_quantity(words[pos])) {
            out.quantity = q;
            ++pos;
            // "1 1/2": a whole number followed by a proper fraction.
            if (pos < words.size() && words[pos].find('/') != std::string::npos && *q == static_cast<long long>(*q)) {
                if (auto frac = parse_quantity(words[pos]); frac && *frac < 1.0) {
                    *out.quantity += *frac;
                    ++pos;
                }
            }
        }
    }
    // A unit only counts when a name follows it.
    if (out.quantity && pos + 1 < words.size()) {
        if (auto unit = canonical_unit(words[pos])) {
            out.unit = std::move(unit);
            ++pos;
            if (pos + 1 < words.size() && words[pos] == "of")
                ++pos;
        }
    }
    std::vector<std::string> rest(words.begin() + static_cast<std::ptrdiff_t>(pos), words.end());
    out.rest = text::join(rest, " ");
    return out;
}

} // namespace foodkg::ingest
