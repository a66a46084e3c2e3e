// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "foodkg/kg/graph.hpp"

namespace foodkg::kg {

/// Structural checks over a whole graph: ontology closure, seeded category
/// counts, and single-owner instructions. Returns one message per violation.
std::vector<std::string> check_invariants(const Graph& graph);

} // namespace foodkg::kg
