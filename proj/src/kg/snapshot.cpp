// SPDX-License-Identifier: Apache-2.0

#include "foodkg/kg/snapshot.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "foodkg/common/io.hpp"

namespace foodkg::kg {

using nlohmann::json;

class SnapshotAccess {
public:
    static const detail::GraphState& state(const Graph& g) { return g.state_; }
    static Graph from_state(detail::GraphState state)
    {
        Graph g;
        g.state_ = std::move(state);
        return g;
    }
};

json props_to_json(const Props& props)
{
    json out = json::object();
    for (const auto& [k, v] : props)
        std::visit([&](const auto& value) { out[k] = value; }, v);
    return out;
}

Props props_from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError("props must be an object");
    Props props;
    for (const auto& [k, v] : j.items()) {
        if (v.is_boolean())
            props.emplace(k, v.get<bool>());
        else if (v.is_number())
            props.emplace(k, v.get<double>());
        else if (v.is_string())
            props.emplace(k, v.get<std::string>());
        else
            throw ParseError("unsupported value type for prop '" + k + "'");
    }
    return props;
}


std::string snapshot_to_string(const Graph& graph)
{
    // Copy under the graph's own lock, then serialize without holding it.
    const Graph copy = graph;
    const auto& state = SnapshotAccess::state(copy);

    std::ostringstream out;
    json header = {{"format", "foodkg-snapshot"},
                   {"version", kSnapshotVersion},
                   {"nodes", state.nodes.size()},
                   {"edges", state.live_edges},
                   {"edge_id_bound", state.edges.size()}};
    out << header.dump() << '\n';
    for (const Node& n : state.nodes) {
        json rec = {{"node",
                     {{"id", n.id.value},
                      {"kind", to_string(n.kind)},
                      {"name", n.name},
                      {"key", n.key},
                      {"props", props_to_json(n.props)}}}};
        out << rec.dump() << '\n';
    }
    for (const auto& e : state.edges) {
        if (!e)
            continue;
        json rec = {{"edge",
                     {{"id", e->id.value},
                      {"src", e->src.value},
                      {"kind", to_string(e->kind)},
                      {"dst", e->dst.value},
                      {"props", props_to_json(e->props)}}}};
        out << rec.dump() << '\n';
    }
    return out.str();
}

Graph snapshot_from_string(std::string_view data)
{
    std::istringstream in{std::string(data)};
    std::string line;
    std::size_t line_no = 0;

    const auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("snapshot line " + std::to_string(line_no) + ": " + why);
    };

    if (!std::getline(in, line))
        throw ParseError("snapshot is empty");
    ++line_no;
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw fail(e.what());
    }
    if (!header.is_object() || header.value("format", "") != "foodkg-snapshot")
        throw fail("not a foodkg snapshot");
    if (header.value("version", -1) != kSnapshotVersion)
        throw fail("unsupported snapshot version " + header.value("version", json()).dump());

    detail::GraphState state;
    const std::size_t edge_bound = header.value("edge_id_bound", std::size_t{0});
    state.edges.resize(edge_bound);
    std::int64_t last_edge = -1;

    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty())
                continue;
            const json rec = json::parse(line);
            if (rec.contains("node")) {
                const json& n = rec.at("node");
                const auto id = n.at("id").get<std::uint32_t>();
                if (id != state.nodes.size())
                    throw fail("node ids must be contiguous and ordered");
                if (last_edge >= 0)
                    throw fail("node record after edge records");
                const auto kind = parse_node_kind(n.at("kind").get<std::string>());
                if (!kind)
                    throw fail("unknown node kind");
                Node node{NodeId{id}, *kind, n.at("name").get<std::string>(), n.at("key").get<std::string>(),
                          props_from_json(n.at("props"))};
                if (node.name.empty() || node.key.empty())
                    throw fail("node name and key must be non-empty");
                if (!state.identity.emplace(std::pair{node.kind, node.key}, node.id).second)
                    throw fail("duplicate node identity");
                state.nodes.push_back(std::move(node));
                state.out.emplace_back();
                state.in.emplace_back();
            } else if (rec.contains("edge")) {
                const json& e = rec.at("edge");
                const auto id = e.at("id").get<std::uint32_t>();
                if (static_cast<std::int64_t>(id) <= last_edge || id >= edge_bound)
                    throw fail("edge ids must be increasing and below edge_id_bound");
                last_edge = id;
                const auto kind = parse_edge_kind(e.at("kind").get<std::string>());
                if (!kind)
                    throw fail("unknown edge kind");
                const NodeId src{e.at("src").get<std::uint32_t>()};
                const NodeId dst{e.at("dst").get<std::uint32_t>()};
                if (src.value >= state.nodes.size() || dst.value >= state.nodes.size())
                    throw fail("edge endpoint does not exist");
                if (!is_legal(state.nodes[src.value].kind, *kind, state.nodes[dst.value].kind))
                    throw fail("edge violates the ontology");
                state.edges[id] = Edge{EdgeId{id}, src, *kind, dst, props_from_json(e.at("props"))};
                state.out[src.value].push_back(EdgeId{id});
                state.in[dst.value].push_back(EdgeId{id});
                ++state.live_edges;
            } else {
                throw fail("record is neither node nor edge");
            }
        }
    } catch (const json::exception& e) {
        throw fail(e.what());
    }

    if (state.nodes.size() != header.value("nodes", std::size_t{0}) ||
        state.live_edges != header.value("edges", std::size_t{0})) {
        throw ParseError("snapshot record counts do not match its header");
    }
    return SnapshotAccess::from_state(std::move(state));
}

void export_snapshot(const Graph& graph, const std::filesystem::path& path)
{
    write_file_atomic(path, snapshot_to_string(graph));
}

Graph import_snapshot(const std::filesystem::path& path)
{
    return snapshot_from_string(read_file(path));
}

} // namespace foodkg::kg
