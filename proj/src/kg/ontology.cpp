// SPDX-License-Identifier: Apache-2.0

#include "foodkg/kg/ontology.hpp"

#include <algorithm>

namespace foodkg::kg {

namespace {

using enum NodeKind;

constexpr std::array kContains = {EndpointRule{Recipe, Ingredient}};
constexpr std::array kIsSuitableFor = {EndpointRule{Recipe, DietRestriction},
                                       EndpointRule{Ingredient, DietRestriction}};
constexpr std::array kIsForSeason = {EndpointRule{Recipe, Season}};
constexpr std::array kIsPartOf = {EndpointRule{Recipe, Cuisine}};
constexpr std::array kUses = {EndpointRule{Recipe, Utensil}, EndpointRule{Instruction, Ingredient}};
constexpr std::array kHas = {EndpointRule{Recipe, Instruction}};
constexpr std::array kAllergenOf = {EndpointRule{Ingredient, AllergenCategory}};
constexpr std::array kClassifiedAs = {EndpointRule{Ingredient, SwissFoodPyramidCategory}};
constexpr std::array kSubstitutedBy = {EndpointRule{Ingredient, Ingredient}};
constexpr std::array kHasCompositeSubstitute = {EndpointRule{Ingredient, CompositeSubstitute}};
constexpr std::array kComposedOf = {EndpointRule{CompositeSubstitute, Ingredient}};

constexpr std::array<std::string_view, kAllNodeKinds.size()> kNodeNames = {
    "Recipe",  "Ingredient",      "Instruction",      "Utensil",
    "Cuisine", "Season",          "DietRestriction",  "AllergenCategory",
    "SwissFoodPyramidCategory",   "CompositeSubstitute",
};

constexpr std::array<std::string_view, kAllEdgeKinds.size()> kEdgeNames = {
    "CONTAINS",    "IS_SUITABLE_FOR", "IS_FOR_SEASON",  "IS_PART_OF",
    "USES",        "HAS",             "ALLERGEN_OF",    "CLASSIFIED_AS",
    "SUBSTITUTED_BY", "HAS_COMPOSITE_SUBSTITUTE", "COMPOSED_OF",
};

} // namespace

std::string_view to_string(NodeKind kind)
{
    return kNodeNames.at(static_cast<std::size_t>(kind));
}

std::string_view to_string(EdgeKind kind)
{
    return kEdgeNames.at(static_cast<std::size_t>(kind));
}

std::optional<NodeKind> parse_node_kind(std::string_view name)
{
    const auto it = std::find(kNodeNames.begin(), kNodeNames.end(), name);
    if (it == kNodeNames.end())
        return std::nullopt;
    return kAllNodeKinds[static_cast<std::size_t>(it - kNodeNames.begin())];
}

std::optional<EdgeKind> parse_edge_kind(std::string_view name)
{
    const auto it = std::find(kEdgeNames.begin(), kEdgeNames.end(), name);
    if (it == kEdgeNames.end())
        return std::nullopt;
    return kAllEdgeKinds[static_cast<std::size_t>(it - kEdgeNames.begin())];
}

std::span<const EndpointRule> allowed_endpoints(EdgeKind kind)
{
    switch (kind) {
    case EdgeKind::Contains: return kContains;
    case EdgeKind::IsSuitableFor: return kIsSuitableFor;
    case EdgeKind::IsForSeason: return kIsForSeason;
    case EdgeKind::IsPartOf: return kIsPartOf;
    case EdgeKind::Uses: return kUses;
    case EdgeKind::Has: return kHas;
    case EdgeKind::AllergenOf: return kAllergenOf;
    case EdgeKind::ClassifiedAs: return kClassifiedAs;
    case EdgeKind::SubstitutedBy: return kSubstitutedBy;
    case EdgeKind::HasCompositeSubstitute: return kHasCompositeSubstitute;
    case EdgeKind::ComposedOf: return kComposedOf;
    }
    return {};
}

bool is_legal(NodeKind src, EdgeKind kind, NodeKind dst)
{
    const auto rules = allowed_endpoints(kind);
    return std::any_of(rules.begin(), rules.end(),
                       [&](const EndpointRule& r) { return r.src == src && r.dst == dst; });
}

} // namespace foodkg::kg
