// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foodkg/common/error.hpp"
#include "foodkg/kg/graph.hpp"
#include "foodkg/match/embedding.hpp"
#include "foodkg/match/index.hpp"

namespace foodkg::graphrag {

inline constexpr int kFactIndexVersion = 1;

/// Index built for another embedder or another graph.
class StaleIndexError : public Error {
public:
    using Error::Error;
};

struct FactEmbedding {
    kg::EdgeId edge;
    std::string text;
    match::EmbeddingVector vector;
};

/// One embedded fact per graph edge, in edge id order.
class FactIndex {
public:
    /// Throws InvalidArgumentError for a graph without edges and EmbedderError
    /// when embedding fails (nothing is kept).
    static FactIndex build(const kg::Graph& graph, match::Embedder& embedder);

    const std::string& model() const { return vectors_.model(); }
    std::size_t size() const { return edges_.size(); }
    kg::EdgeId edge(std::size_t position) const { return edges_.at(position); }
    const std::string& text(std::size_t position) const { return texts_.at(position); }
    std::optional<std::size_t> position(kg::EdgeId edge) const;

    /// Cosine of the query against every fact, in index order.
    std::vector<double> scores(const match::EmbeddingVector& query) const;

    /// Throws StaleIndexError unless the graph has exactly the indexed edges
    /// and every fact text regenerates byte-identically.
    void verify(const kg::Graph& graph) const;

    /// Line-delimited JSON: a header {"format":"foodkg-fact-index","version",
    /// "model","dimensions","facts"} then one {"edge","text","vector"} per fact.
    std::string to_string() const;
    /// Throws ParseError for malformed input or another version, and
    /// StaleIndexError when `expected_model` is given and differs.
    static FactIndex from_string(std::string_view data, const std::optional<std::string>& expected_model = std::nullopt);

    void save(const std::filesystem::path& path) const;
    static FactIndex load(const std::filesystem::path& path,
                          const std::optional<std::string>& expected_model = std::nullopt);

private:
    std::vector<kg::EdgeId> edges_;
    std::vector<std::string> texts_;
    match::VectorIndex vectors_;
};

} // namespace foodkg::graphrag
