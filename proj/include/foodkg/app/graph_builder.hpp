// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/enrich/runner.hpp"
#include "foodkg/ingest/tables.hpp"
#include "foodkg/kg/graph.hpp"
#include "foodkg/kg/seed.hpp"
#include "foodkg/match/match.hpp"

namespace foodkg::app {

/// Node props resolved for one ingredient; either map may be empty.
struct IngredientMatch {
    kg::Props nutrients;
    kg::Props gi;

    bool operator==(const IngredientMatch&) const = default;
};

struct MatchStageResult {
    /// Keyed by ingredient name, sorted.
    std::map<std::string, IngredientMatch> ingredients;

    bool operator==(const MatchStageResult&) const = default;
};

/// Resolves every distinct ingredient against the nutrient tables and the
/// GI table.
MatchStageResult match_ingredients(const std::map<std::string, enrich::IngredientLabels>& ingredients,
                                   const match::NutrientMatcher& nutrients, const match::GiMatcher& gi);

/// Ladder distribution ("exact/swiss", "embedding/usda", "none", ...),
/// low-confidence counts and the ingredients left without nutrient data.
nlohmann::json match_report(const MatchStageResult& result);

void to_json(nlohmann::json& j, const MatchStageResult& r);
void from_json(const nlohmann::json& j, MatchStageResult& r);

struct BuildReport {
    kg::GraphStats stats;
    match::SubstitutionReport substitutions;
    /// Instruction USES Ingredient edges.
    std::size_t instruction_links = 0;
};

struct BuiltGraph {
    kg::Graph graph;
    BuildReport report;
};

/// Assembles the graph: seeded categories, ingredients with nutrient and GI
/// props and their allergen, food group and diet edges, then each recipe
/// with its ingredients (quantity, unit, notes on CONTAINS), diets, seasons,
/// cuisine, utensils and instructions. An instruction USES every ingredient
/// of its recipe whose name starts a word in the instruction text. Instruction
/// nodes are keyed "<recipe id>#<step>". Substitutions are linked last.
BuiltGraph build_graph(const enrich::EnrichmentResult& enriched, const MatchStageResult& matches,
                       const kg::SeedCatalog& catalog, const std::vector<ingest::SubstitutionEntry>& substitutions,
                       match::Embedder& embedder, double substitute_threshold = match::kDefaultSubstituteThreshold);

nlohmann::json to_json(const BuildReport& report);
/// Stats as {"nodes": {kind: n}, "edges": [{"src", "kind", "dst", "count"}],
/// "total_nodes", "total_edges"}.
nlohmann::json stats_to_json(const kg::GraphStats& stats);

} // namespace foodkg::app
