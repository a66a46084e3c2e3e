// SPDX-License-Identifier: Apache-2.0

// Randomized graphs and fact indices for retrieval property tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "foodkg/graphrag/fact_index.hpp"
#include "foodkg/graphrag/retrieval.hpp"
#include "foodkg/kg/seed.hpp"
#include "foodkg/match/embedding.hpp"

namespace foodkg::testing {

/// Maps text to a small non-negative integer vector picked by a hash of the
/// text. Few distinct vectors exist, so equal scores are common.
class LatticeEmbedder : public match::Embedder {
public:
    explicit LatticeEmbedder(std::uint64_t salt, std::size_t dims = 6, int levels = 3)
        : salt_(salt), dims_(dims), levels_(levels)
    {
    }

    std::string model() const override { return "lattice"; }

    std::vector<match::EmbeddingVector> embed(const std::vector<std::string>& texts) override
    {
        std::vector<match::EmbeddingVector> out;
        for (const auto& t : texts)
            out.push_back({vector_for(t), "lattice"});
        return out;
    }

    std::vector<double> vector_for(const std::string& text) const
    {
        std::uint64_t h = 1469598103934665603ULL ^ salt_;
        for (const unsigned char c : text) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        std::mt19937_64 rng(h);
        std::uniform_int_distribution<int> level(0, levels_ - 1);
        std::vector<double> v(dims_);
        for (auto& x : v)
            x = level(rng);
        if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }))
            v[0] = 1.0;
        return v;
    }

private:
    std::uint64_t salt_;
    std::size_t dims_;
    int levels_;
};

struct RandomIndexCase {
    kg::Graph graph;
    graphrag::FactIndex index;
    std::string question;
    std::set<kg::NodeId> seeds;
};

/// A seeded graph with random ingredient and recipe edges (1 to max_edges of
/// them, parallel duplicates included), its fact index, a question and
/// a random seed set that is empty half of the time.
inline RandomIndexCase random_index_case(std::mt19937& rng, LatticeEmbedder& embedder, std::size_t max_edges = 500)
{
    const auto catalog = kg::default_seed_catalog();
    kg::Graph g = kg::make_seeded_graph(catalog);
    std::uniform_int_distribution<int> n_ingredients(1, 30);
    std::uniform_int_distribution<int> n_recipes(1, 6);
    std::vector<kg::NodeId> ingredients;
    std::vector<kg::NodeId> recipes;
    for (int i = 0, n = n_ingredients(rng); i < n; ++i)
        ingredients.push_back(g.add_node(kg::NodeKind::Ingredient, "ingredient " + std::to_string(i)));
    for (int i = 0, n = n_recipes(rng); i < n; ++i)
        recipes.push_back(g.add_node(kg::NodeKind::Recipe, "recipe " + std::to_string(i), {}, "r" + std::to_string(i)));
    const auto diets = g.nodes(kg::NodeKind::DietRestriction);
    const auto allergens = g.nodes(kg::NodeKind::AllergenCategory);
    const auto groups = g.nodes(kg::NodeKind::SwissFoodPyramidCategory);
    const auto pick = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };

    const auto edges = std::uniform_int_distribution<std::size_t>(1, max_edges)(rng);
    for (std::size_t e = 0; e < edges; ++e) {
        switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: g.add_edge(pick(ingredients), kg::EdgeKind::IsSuitableFor, pick(diets).id); break;
        case 1: g.add_edge(pick(ingredients), kg::EdgeKind::AllergenOf, pick(allergens).id); break;
        case 2: g.add_edge(pick(ingredients), kg::EdgeKind::ClassifiedAs, pick(groups).id); break;
        default:
            g.add_edge(pick(recipes), kg::EdgeKind::Contains, pick(ingredients),
                       {{"quantity", static_cast<double>(std::uniform_int_distribution<int>(1, 3)(rng))}});
        }
    }
    auto index = graphrag::FactIndex::build(g, embedder);
    std::set<kg::NodeId> seeds;
    if (rng() % 2 == 0) {
        for (int i = 0, n = std::uniform_int_distribution<int>(1, 3)(rng); i < n; ++i)
            seeds.insert(rng() % 2 == 0 ? pick(ingredients) : pick(recipes));
    }
    return {std::move(g), std::move(index), "question " + std::to_string(rng()), std::move(seeds)};
}

/// Reference ranking: exact integer dot products and norms, a full stable
/// sort by score (index order is edge id order), then the filter and cut.
inline std::vector<graphrag::RetrievedFact> brute_force_retrieve(const RandomIndexCase& c,
                                                                 const LatticeEmbedder& embedder,
                                                                 const graphrag::RetrievalConfig& config)
{
    const auto q = embedder.vector_for(c.question);
    long long qn = 0;
    for (const double x : q)
        qn += static_cast<long long>(x * x);
    std::vector<double> scores(c.index.size());
    std::vector<bool> seeded(c.index.size());
    for (std::size_t i = 0; i < c.index.size(); ++i) {
        const auto v = embedder.vector_for(c.index.text(i));
        long long dot = 0;
        long long vn = 0;
        for (std::size_t d = 0; d < v.size(); ++d) {
            dot += static_cast<long long>(q[d] * v[d]);
            vn += static_cast<long long>(v[d] * v[d]);
        }
        scores[i] = static_cast<double>(dot) / std::sqrt(static_cast<double>(qn * vn));
        const auto e = c.graph.edge(c.index.edge(i));
        seeded[i] = c.seeds.contains(e.src) || c.seeds.contains(e.dst);
    }
    std::vector<std::size_t> order(c.index.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<graphrag::RetrievedFact> out;
    for (const auto i : order) {
        if (out.size() == config.k)
            break;
        if (seeded[i] || scores[i] >= config.cutoff)
            out.push_back({c.index.edge(i), c.index.text(i), scores[i], seeded[i]});
    }
    return out;
}

} // namespace foodkg::testing
