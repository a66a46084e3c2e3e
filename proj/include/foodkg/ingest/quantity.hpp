// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace foodkg::ingest {

/// "2", "0.5", "1/2", "½", "1½". Decimal point only; "1,5" is not a number.
std::optional<double> parse_quantity(std::string_view token);

/// Canonical singular unit for a unit word ("cups" -> "cup",
/// "tablespoon" -> "tbsp", "Grams" -> "g"), or nullopt for other words.
std::optional<std::string> canonical_unit(std::string_view word);

struct QuantityPhrase {
    std::optional<double> quantity;
    std::optional<std::string> unit;
    std::string rest;
};

/// Peels a leading amount and unit off a phrase: "1 1/2 cups milk" ->
/// {1.5, "cup", "milk"}; "milk" -> {nullopt, nullopt, "milk"}.
QuantityPhrase split_leading_quantity(std::string_view phrase);

} // namespace foodkg::ingest
