// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/match/embedding.hpp"

namespace foodkg::match {

struct ScoredKey {
    std::size_t position = 0; // insertion position in the index
    std::string key;
    double score = 0.0;

    bool operator==(const ScoredKey&) const = default;
};

/// Exact flat index: every query scans every entry. Immutable once built, so
/// concurrent queries are safe.
class VectorIndex {
public:
    VectorIndex() = default;
    VectorIndex(std::string model, std::size_t dimensions);

    /// Embeds `keys` in one call. Duplicate keys keep the first occurrence.
    static VectorIndex build(const std::vector<std::string>& keys, Embedder& embedder);

    /// Throws InvalidArgumentError on a duplicate key, a model or length
    /// mismatch, or a zero vector.
    void add(std::string key, EmbeddingVector vector);

    const std::string& model() const { return model_; }
    std::size_t dimensions() const { return dimensions_; }
    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }
    const std::string& key(std::size_t position) const { return keys_.at(position); }
    const std::vector<double>& values(std::size_t position) const { return values_.at(position); }
    std::optional<std::size_t> find(const std::string& key) const;

    /// Cosine of the query against every entry, in insertion order. A zero
    /// query scores 0 everywhere. Throws InvalidArgumentError on a model or
    /// length mismatch.
    std::vector<double> scores(const EmbeddingVector& query) const;

    /// Highest-scoring entries, best first; equal scores keep insertion order.
    std::vector<ScoredKey> top(const EmbeddingVector& query, std::size_t k) const;

private:
    void check_query(const EmbeddingVector& query) const;

    std::string model_;
    std::size_t dimensions_ = 0;
    std::vector<std::string> keys_;
    std::vector<std::vector<double>> values_;
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t> positions_;
};

void to_json(nlohmann::json& j, const VectorIndex& index);
void from_json(const nlohmann::json& j, VectorIndex& index);

} // namespace foodkg::match
