// SPDX-License-Identifier: Apache-2.0

#include "foodkg/match/index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace foodkg::match {

using nlohmann::json;

VectorIndex::VectorIndex(std::string model, std::size_t dimensions) : model_(std::move(model)), dimensions_(dimensions)
{
}

VectorIndex VectorIndex::build(const std::vector<std::string>& keys, Embedder& embedder)
{
    std::vector<std::string> unique;
    std::unordered_map<std::string, bool> seen;
    for (const auto& k : keys)
        if (seen.emplace(k, true).second)
            unique.push_back(k);
    VectorIndex index(embedder.model(), 0);
    if (unique.empty())
        return index;
    auto vectors = embedder.embed(unique);
    if (vectors.size() != unique.size())
        throw EmbedderError("embedder returned " + std::to_string(vectors.size()) + " vectors for " +
                            std::to_string(unique.size()) + " keys");
    index.dimensions_ = vectors.front().values.size();
    for (std::size_t i = 0; i < unique.size(); ++i)
        index.add(unique[i], std::move(vectors[i]));
    return index;
}

void VectorIndex::add(std::string key, EmbeddingVector vector)
{
    if (positions_.contains(key))
        throw InvalidArgumentError("duplicate index key '" + key + "'");
    if (keys_.empty() && dimensions_ == 0)
        dimensions_ = vector.values.size();
    if (vector.model != model_)
        throw InvalidArgumentError("vector for '" + key + "' comes from model '" + vector.model + "', index uses '" +
                                   model_ + "'");
    if (vector.values.size() != dimensions_)
        throw InvalidArgumentError("vector for '" + key + "' has length " + std::to_string(vector.values.size()) +
                                   ", index uses " + std::to_string(dimensions_));
    double norm = 0.0;
    for (const double x : vector.values)
        norm += x * x;
    if (norm == 0.0)
        throw InvalidArgumentError("zero vector for '" + key + "'");
    positions_.emplace(key, keys_.size());
    keys_.push_back(std::move(key));
    values_.push_back(std::move(vector.values));
    norms_.push_back(norm);
}

std::optional<std::size_t> VectorIndex::find(const std::string& key) const
{
    const auto it = positions_.find(key);
    if (it == positions_.end())
        return std::nullopt;
    return it->second;
}

void VectorIndex::check_query(const EmbeddingVector& query) const
{
    if (query.model != model_)
        throw InvalidArgumentError("query embedded with '" + query.model + "', index uses '" + model_ + "'");
    if (!keys_.empty() && query.values.size() != dimensions_)
        throw InvalidArgumentError("query has length " + std::to_string(query.values.size()) + ", index uses " +
                                   std::to_string(dimensions_));
}

std::vector<double> VectorIndex::scores(const EmbeddingVector& query) const
{
    check_query(query);
    std::vector<double> out(keys_.size(), 0.0);
    double qn = 0.0;
    for (const double x : query.values)
        qn += x * x;
    if (qn == 0.0)
        return out;
    for (std::size_t e = 0; e < keys_.size(); ++e) {
        const auto& v = values_[e];
        double dot = 0.0;
        for (std::size_t i = 0; i < dimensions_; ++i)
            dot += query.values[i] * v[i];
        out[e] = std::clamp(dot / std::sqrt(qn * norms_[e]), -1.0, 1.0);
    }
    return out;
}

std::vector<ScoredKey> VectorIndex::top(const EmbeddingVector& query, std::size_t k) const
{
    const auto s = scores(query);
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    k = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) { return s[a] > s[b] || (s[a] == s[b] && a < b); });
    std::vector<ScoredKey> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        out.push_back({order[i], keys_[order[i]], s[order[i]]});
    return out;
}

void to_json(json& j, const VectorIndex& index)
{
    json entries = json::array();
    for (std::size_t i = 0; i < index.size(); ++i)
        entries.push_back(json{{"key", index.key(i)}, {"values", index.values(i)}});
    j = json{{"model", index.model()}, {"dimensions", index.dimensions()}, {"entries", std::move(entries)}};
}

void from_json(const json& j, VectorIndex& index)
{
    VectorIndex out(j.at("model").get<std::string>(), j.at("dimensions").get<std::size_t>());
    for (const auto& e : j.at("entries"))
        out.add(e.at("key").get<std::string>(), {e.at("values").get<std::vector<double>>(), out.model()});
    index = std::move(out);
}

} // namespace foodkg::match
