// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace foodkg::kg {

enum class NodeKind : std::uint8_t {
    Recipe,
    Ingredient,
    Instruction,
    Utensil,
    Cuisine,
    Season,
    DietRestriction,
    AllergenCategory,
    SwissFoodPyramidCategory,
    CompositeSubstitute,
};

inline constexpr std::array kAllNodeKinds = {
    NodeKind::Recipe,          NodeKind::Ingredient,       NodeKind::Instruction,
    NodeKind::Utensil,         NodeKind::Cuisine,          NodeKind::Season,
    NodeKind::DietRestriction, NodeKind::AllergenCategory, NodeKind::SwissFoodPyramidCategory,
    NodeKind::CompositeSubstitute,
};

enum class EdgeKind : std::uint8_t {
    Contains,
    IsSuitableFor,
    IsForSeason,
    IsPartOf,
    Uses,
    Has,
    AllergenOf,
    ClassifiedAs,
    SubstitutedBy,
    HasCompositeSubstitute,
    ComposedOf,
};

inline constexpr std::array kAllEdgeKinds = {
    EdgeKind::Contains,   EdgeKind::IsSuitableFor, EdgeKind::IsForSeason,
    EdgeKind::IsPartOf,   EdgeKind::Uses,          EdgeKind::Has,
    EdgeKind::AllergenOf, EdgeKind::ClassifiedAs,  EdgeKind::SubstitutedBy,
    EdgeKind::HasCompositeSubstitute, EdgeKind::ComposedOf,
};

struct EndpointRule {
    NodeKind src;
    NodeKind dst;
};

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view name);
std::optional<EdgeKind> parse_edge_kind(std::string_view name);

/// The (source kind, target kind) pairs an edge kind may connect.
std::span<const EndpointRule> allowed_endpoints(EdgeKind kind);

bool is_legal(NodeKind src, EdgeKind kind, NodeKind dst);

} // namespace foodkg::kg
