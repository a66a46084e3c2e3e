// SPDX-License-Identifier: Apache-2.0

#include "foodkg/kg/validate.hpp"

#include "foodkg/kg/seed.hpp"

namespace foodkg::kg {

std::vector<std::string> check_invariants(const Graph& graph)
{
    std::vector<std::string> problems;
    const auto stats = graph.stats();

    const auto expect_count = [&](NodeKind kind, std::size_t expected) {
        const auto actual = stats.nodes.at(kind);
        if (actual != expected) {
            problems.push_back(std::string(to_string(kind)) + " count is " + std::to_string(actual) +
                               ", expected " + std::to_string(expected));
        }
    };
    expect_count(NodeKind::AllergenCategory, kAllergenCount);
    expect_count(NodeKind::SwissFoodPyramidCategory, kSfpCount);
    expect_count(NodeKind::Season, kSeasonCount);
    expect_count(NodeKind::DietRestriction, kDietCount);

    for (const auto& [sig, count] : stats.edges) {
        if (!is_legal(sig.src, sig.kind, sig.dst)) {
            problems.push_back("illegal edge signature " + std::string(to_string(sig.src)) + " " +
                               std::string(to_string(sig.kind)) + " " + std::string(to_string(sig.dst)));
        }
    }

    for (const Node& n : graph.nodes(NodeKind::Instruction)) {
        const auto owners = graph.neighbors(n.id, EdgeKind::Has, Direction::In);
        if (owners.size() != 1 || owners.front().node.kind != NodeKind::Recipe)
            problems.push_back("instruction '" + n.name + "' must have exactly one owning recipe");
    }
    return problems;
}

} // namespace foodkg::kg
