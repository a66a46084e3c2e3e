// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "foodkg/kg/graph.hpp"

namespace foodkg::kg {

/// Renders one edge as a sentence-like fact:
///
///   Recipe 'Apple Pie' CONTAINS (quantity=3, unit=piece) Ingredient 'apple' [Ingredient: kcal_per_100g=52]
///
/// Edge props follow the predicate in parentheses, then subject and object
/// props in brackets, each sorted by key. Empty groups are omitted. Long
/// free-text props (description, keywords) and keys starting with '_' are
/// left out of the endpoint groups.
std::string serialize_fact(const Triplet& triplet);

std::string serialize_fact(const Graph& graph, EdgeId edge);

} // namespace foodkg::kg
