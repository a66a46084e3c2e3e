// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "foodkg/common/error.hpp"
#include "foodkg/kg/ontology.hpp"
#include "foodkg/kg/props.hpp"

namespace foodkg::kg {

struct NodeId {
    std::uint32_t value = 0;
    auto operator<=>(const NodeId&) const = default;
};

struct EdgeId {
    std::uint32_t value = 0;
    auto operator<=>(const EdgeId&) const = default;
};

struct Node {
    NodeId id;
    NodeKind kind = NodeKind::Ingredient;
    std::string name;
    /// Identity key within the kind. Normalized name unless an explicit key
    /// was supplied (recipes and instructions use their recipe id).
    std::string key;
    Props props;

    bool operator==(const Node&) const = default;
};

struct Edge {
    EdgeId id;
    NodeId src;
    EdgeKind kind = EdgeKind::Contains;
    NodeId dst;
    Props props;

    bool operator==(const Edge&) const = default;
};

enum class Direction { Out, In, Both };

struct Neighbor {
    Edge edge;
    Node node;
};

struct EdgeSignature {
    NodeKind src;
    EdgeKind kind;
    NodeKind dst;
    auto operator<=>(const EdgeSignature&) const = default;
};

struct GraphStats {
    std::map<NodeKind, std::size_t> nodes;
    std::map<EdgeSignature, std::size_t> edges;
    std::size_t total_nodes = 0;
    std::size_t total_edges = 0;

    bool operator==(const GraphStats&) const = default;
};

/// One edge with both endpoints, lossless.
struct Triplet {
    Node subject;
    Edge predicate;
    Node object;
};

class OntologyError : public Error {
public:
    using Error::Error;
};

namespace detail {

struct GraphState {
    std::vector<Node> nodes; // indexed by NodeId::value
    std::vector<std::optional<Edge>> edges; // indexed by EdgeId::value; nullopt once removed
    std::vector<std::vector<EdgeId>> out;
    std::vector<std::vector<EdgeId>> in;
    std::map<std::pair<NodeKind, std::string>, NodeId> identity;
    std::size_t live_edges = 0;

    NodeId add_node(NodeKind kind, std::string_view name, Props props, std::string_view key);
    EdgeId add_edge(NodeId src, EdgeKind kind, NodeId dst, Props props);
    void remove_edge(EdgeId id);
    void merge_node_props(NodeId id, const Props& props);
    std::optional<NodeId> find_node(NodeKind kind, std::string_view key_or_name) const;
    const Node& node(NodeId id) const;
    const Edge& edge(EdgeId id) const;
};

} // namespace detail

/// Mutation handle handed to Graph::batch. Not thread-safe on its own; the
/// enclosing batch holds the exclusive lock.
class GraphWriter {
public:
    explicit GraphWriter(detail::GraphState& state) : state_(state) {}

    NodeId add_node(NodeKind kind, std::string_view name, Props props = {}, std::string_view key = {})
    {
        return state_.add_node(kind, name, std::move(props), key);
    }
    EdgeId add_edge(NodeId src, EdgeKind kind, NodeId dst, Props props = {})
    {
        return state_.add_edge(src, kind, dst, std::move(props));
    }
    void remove_edge(EdgeId id) { state_.remove_edge(id); }
    void merge_node_props(NodeId id, const Props& props) { state_.merge_node_props(id, props); }
    std::optional<NodeId> find_node(NodeKind kind, std::string_view key_or_name) const
    {
        return state_.find_node(kind, key_or_name);
    }
    const Node& node(NodeId id) const { return state_.node(id); }

private:
    detail::GraphState& state_;
};

/// Typed property graph that only admits ontology-legal edges.
///
/// Readers share a lock; every mutation, including a whole batch, holds the
/// exclusive lock so readers never observe a partial update.
class Graph {
public:
    Graph() = default;
    Graph(const Graph& other);
    Graph(Graph&& other) noexcept;
    Graph& operator=(const Graph& other);
    Graph& operator=(Graph&& other) noexcept;

    /// Upsert keyed on (kind, key) or (kind, normalized name). An existing
    /// node gets the new props merged in and keeps its id.
    NodeId add_node(NodeKind kind, std::string_view name, Props props = {}, std::string_view key = {});

    /// Throws NotFoundError for a missing endpoint and OntologyError when the
    /// (source kind, edge kind, target kind) triple is not allowed.
    EdgeId add_edge(NodeId src, EdgeKind kind, NodeId dst, Props props = {});

    void remove_edge(EdgeId id);
    void merge_node_props(NodeId id, const Props& props);

    /// Runs fn(GraphWriter&) under one exclusive lock. If fn throws, the graph
    /// is restored to its state before the batch.
    template <class Fn>
    void batch(Fn&& fn)
    {
        std::unique_lock lock(mutex_);
        detail::GraphState backup = state_;
        try {
            GraphWriter writer(state_);
            fn(writer);
        } catch (...) {
            state_ = std::move(backup);
            throw;
        }
    }

    std::optional<NodeId> find_node(NodeKind kind, std::string_view key_or_name) const;
    Node node(NodeId id) const;
    Edge edge(EdgeId id) const;
    bool has_edge(EdgeId id) const;

    /// Incident edges with their far endpoint, in edge insertion order.
    std::vector<Neighbor> neighbors(NodeId id, std::optional<EdgeKind> kind_filter = std::nullopt,
                                    Direction direction = Direction::Out) const;

    std::vector<Node> nodes(std::optional<NodeKind> kind = std::nullopt) const;
    std::vector<Edge> edges() const;
    Triplet triplet(EdgeId id) const;

    GraphStats stats() const;
    std::size_t node_count() const;
    std::size_t edge_count() const;
    /// One past the largest edge id ever issued (removed edges included).
    std::uint32_t edge_id_bound() const;

private:
    friend class SnapshotAccess;

    mutable std::shared_mutex mutex_;
    detail::GraphState state_;
};

} // namespace foodkg::kg
