// SPDX-License-Identifier: Apache-2.0

#include "foodkg/kg/graph.hpp"

#include <algorithm>
#include <mutex>

#include "foodkg/common/text.hpp"

namespace foodkg::kg {

namespace detail {

NodeId GraphState::add_node(NodeKind kind, std::string_view name, Props props, std::string_view key)
{
    const std::string trimmed = text::collapse_whitespace(name);
    if (trimmed.empty())
        throw InvalidArgumentError("node name must not be empty");
    std::string identity_key = key.empty() ? text::normalize_name(trimmed) : std::string(key);

    auto [it, inserted] = identity.try_emplace({kind, identity_key}, NodeId{});
    if (!inserted) {
        merge_node_props(it->second, props);
        return it->second;
    }
    const NodeId id{static_cast<std::uint32_t>(nodes.size())};
    it->second = id;
    nodes.push_back(Node{id, kind, trimmed, std::move(identity_key), std::move(props)});
    out.emplace_back();
    in.emplace_back();
    return id;
}

EdgeId GraphState::add_edge(NodeId src, EdgeKind kind, NodeId dst, Props props)
{
    const Node& s = node(src);
    const Node& d = node(dst);
    if (!is_legal(s.kind, kind, d.kind)) {
        throw OntologyError(std::string(to_string(s.kind)) + " -" + std::string(to_string(kind)) +
                            "-> " + std::string(to_string(d.kind)) + " is not allowed");
    }
    const EdgeId id{static_cast<std::uint32_t>(edges.size())};
    edges.emplace_back(Edge{id, src, kind, dst, std::move(props)});
    out[src.value].push_back(id);
    in[dst.value].push_back(id);
    ++live_edges;
    return id;
}

void GraphState::remove_edge(EdgeId id)
{
    const Edge e = edge(id);
    std::erase(out[e.src.value], id);
    std::erase(in[e.dst.value], id);
    edges[id.value].reset();
    --live_edges;
}

void GraphState::merge_node_props(NodeId id, const Props& props)
{
    node(id);
    for (const auto& [k, v] : props)
        nodes[id.value].props.insert_or_assign(k, v);
}

std::optional<NodeId> GraphState::find_node(NodeKind kind, std::string_view key_or_name) const
{
    if (auto it = identity.find({kind, std::string(key_or_name)}); it != identity.end())
        return it->second;
    if (auto it = identity.find({kind, text::normalize_name(key_or_name)}); it != identity.end())
        return it->second;
    return std::nullopt;
}

const Node& GraphState::node(NodeId id) const
{
    if (id.value >= nodes.size())
        throw NotFoundError("unknown node id " + std::to_string(id.value));
    return nodes[id.value];
}

const Edge& GraphState::edge(EdgeId id) const
{
    if (id.value >= edges.size() || !edges[id.value])
        throw NotFoundError("unknown edge id " + std::to_string(id.value));
    return *edges[id.value];
}

} // namespace detail

Graph::Graph(const Graph& other)
{
    std::shared_lock lock(other.mutex_);
    state_ = other.state_;
}

Graph::Graph(Graph&& other) noexcept
{
    std::unique_lock lock(other.mutex_);
    state_ = std::move(other.state_);
}

Graph& Graph::operator=(const Graph& other)
{
    if (this != &other) {
        detail::GraphState copy;
        {
            std::shared_lock lock(other.mutex_);
            copy = other.state_;
        }
        std::unique_lock lock(mutex_);
        state_ = std::move(copy);
    }
    return *this;
}

Graph& Graph::operator=(Graph&& other) noexcept
{
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        state_ = std::move(other.state_);
    }
    return *this;
}

NodeId Graph::add_node(NodeKind kind, std::string_view name, Props props, std::string_view key)
{
    std::unique_lock lock(mutex_);
    return state_.add_node(kind, name, std::move(props), key);
}

EdgeId Graph::add_edge(NodeId src, EdgeKind kind, NodeId dst, Props props)
{
    std::unique_lock lock(mutex_);
    return state_.add_edge(src, kind, dst, std::move(props));
}

void Graph::remove_edge(EdgeId id)
{
    std::unique_lock lock(mutex_);
    state_.remove_edge(id);
}

void Graph::merge_node_props(NodeId id, const Props& props)
{
    std::unique_lock lock(mutex_);
    state_.merge_node_props(id, props);
}

std::optional<NodeId> Graph::find_node(NodeKind kind, std::string_view key_or_name) const
{
    std::shared_lock lock(mutex_);
    return state_.find_node(kind, key_or_name);
}

Node Graph::node(NodeId id) const
{
    std::shared_lock lock(mutex_);
    return state_.node(id);
}

Edge Graph::edge(EdgeId id) const
{
    std::shared_lock lock(mutex_);
    return state_.edge(id);
}

bool Graph::has_edge(EdgeId id) const
{
    std::shared_lock lock(mutex_);
    return id.value < state_.edges.size() && state_.edges[id.value].has_value();
}

std::vector<Neighbor> Graph::neighbors(NodeId id, std::optional<EdgeKind> kind_filter,
                                       Direction direction) const
{
    std::shared_lock lock(mutex_);
    state_.node(id);

    std::vector<EdgeId> ids;
    if (direction != Direction::In)
        ids.insert(ids.end(), state_.out[id.value].begin(), state_.out[id.value].end());
    if (direction != Direction::Out) {
        for (EdgeId e : state_.in[id.value]) {
            // A self-loop already came in through the out list.
            if (direction == Direction::Both && state_.edge(e).src == id)
                continue;
            ids.push_back(e);
        }
    }
    std::sort(ids.begin(), ids.end());

    std::vector<Neighbor> result;
    for (EdgeId e : ids) {
        const Edge& edge = state_.edge(e);
        if (kind_filter && edge.kind != *kind_filter)
            continue;
        const NodeId far = edge.src == id ? edge.dst : edge.src;
        result.push_back(Neighbor{edge, state_.node(far)});
    }
    return result;
}

std::vector<Node> Graph::nodes(std::optional<NodeKind> kind) const
{
    std::shared_lock lock(mutex_);
    std::vector<Node> result;
    for (const Node& n : state_.nodes) {
        if (!kind || n.kind == *kind)
            result.push_back(n);
    }
    return result;
}

std::vector<Edge> Graph::edges() const
{
    std::shared_lock lock(mutex_);
    std::vector<Edge> result;
    result.reserve(state_.live_edges);
    for (const auto& e : state_.edges) {
        if (e)
            result.push_back(*e);
    }
    return result;
}

Triplet Graph::triplet(EdgeId id) const
{
    std::shared_lock lock(mutex_);
    const Edge& e = state_.edge(id);
    return Triplet{state_.node(e.src), e, state_.node(e.dst)};
}

GraphStats Graph::stats() const
{
    std::shared_lock lock(mutex_);
    GraphStats s;
    for (NodeKind k : kAllNodeKinds)
        s.nodes[k] = 0;
    for (const Node& n : state_.nodes)
        ++s.nodes[n.kind];
    for (const auto& e : state_.edges) {
        if (!e)
            continue;
        ++s.edges[EdgeSignature{state_.nodes[e->src.value].kind, e->kind, state_.nodes[e->dst.value].kind}];
    }
    s.total_nodes = state_.nodes.size();
    s.total_edges = state_.live_edges;
    return s;
}

std::size_t Graph::node_count() const
{
    std::shared_lock lock(mutex_);
    return state_.nodes.size();
}

std::size_t Graph::edge_count() const
{
    std::shared_lock lock(mutex_);
    return state_.live_edges;
}

std::uint32_t Graph::edge_id_bound() const
{
    std::shared_lock lock(mutex_);
    return static_cast<std::uint32_t>(state_.edges.size());
}

} // namespace foodkg::kg
