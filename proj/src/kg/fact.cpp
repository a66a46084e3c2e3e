// SPDX-License-Identifier: Apache-2.0

#include "foodkg/kg/fact.hpp"

namespace foodkg::kg {

namespace {

bool hidden_in_fact(std::string_view key)
{
    return key.starts_with('_') || key == "description" || key == "keywords";
}

std::string endpoint_props(const Node& node)
{
    Props visible;
    for (const auto& [k, v] : node.props) {
        if (!hidden_in_fact(k))
            visible.emplace(k, v);
    }
    if (visible.empty())
        return {};
    return " [" + std::string(to_string(node.kind)) + ": " + format_props(visible) + "]";
}

} // namespace

std::string serialize_fact(const Triplet& t)
{
    std::string out;
    out += to_string(t.subject.kind);
    out += " '" + t.subject.name + "' ";
    out += to_string(t.predicate.kind);
    if (!t.predicate.props.empty())
        out += " (" + format_props(t.predicate.props) + ")";
    out += ' ';
    out += to_string(t.object.kind);
    out += " '" + t.object.name + "'";
    out += endpoint_props(t.subject);
    out += endpoint_props(t.object);
    return out;
}

std::string serialize_fact(const Graph& graph, EdgeId edge)
{
    return serialize_fact(graph.triplet(edge));
}

} // namespace foodkg::kg
