// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "foodkg/kg/graph.hpp"

namespace foodkg::kg {

inline constexpr int kSnapshotVersion = 1;

/// Props as a flat JSON object. from_json throws ParseError for nested or
/// null values.
nlohmann::json props_to_json(const Props& props);
Props props_from_json(const nlohmann::json& j);

/// Line-delimited JSON. The first line is a header
/// {"format":"foodkg-snapshot","version":1,"nodes":N,"edges":M,"edge_id_bound":B};
/// every following line holds exactly one {"node":{...}} or {"edge":{...}}
/// record, nodes first, each group in id order.
std::string snapshot_to_string(const Graph& graph);

/// Parses a snapshot completely before building the graph, so a corrupt
/// input throws ParseError and produces nothing.
Graph snapshot_from_string(std::string_view data);

void export_snapshot(const Graph& graph, const std::filesystem::path& path);
Graph import_snapshot(const std::filesystem::path& path);

} // namespace foodkg::kg
