// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/enrich/backend.hpp"
#include "foodkg/enrich/prompts.hpp"
#include "foodkg/graphrag/fact_index.hpp"
#include "foodkg/kg/graph.hpp"
#include "foodkg/match/embedding.hpp"

namespace foodkg::graphrag {

/// Search terms pulled out of a question. Every list is lowercase, trimmed
/// and free of duplicates.
struct QueryPlan {
    std::vector<std::string> concepts;
    std::vector<std::string> keywords;
    std::vector<std::string> synonyms;

    /// All terms, concepts first, without repeats across lists.
    std::vector<std::string> terms() const;
    bool empty() const { return concepts.empty() && keywords.empty() && synonyms.empty(); }
    bool operator==(const QueryPlan&) const = default;
};

/// Lowercases, trims and deduplicates (case-insensitively, across lists).
QueryPlan normalize_plan(QueryPlan plan);

/// Asks the backend for a plan. Any failure degrades to an empty plan, which
/// is logged; retrieval then relies on embeddings alone.
QueryPlan extract_query_plan(const std::string& question, enrich::LlmBackend& backend,
                             const enrich::PromptPack& prompts, const enrich::GenerationConfig& config);

/// Nodes whose name contains any plan term, case-insensitively. Substring
/// semantics: "milk" also finds "buttermilk".
std::set<kg::NodeId> seed_node_search(const QueryPlan& plan, const kg::Graph& graph);

struct RetrievalConfig {
    double cutoff = 0.5;
    std::size_t k = 10;
};

struct RetrievedFact {
    kg::EdgeId edge;
    std::string text;
    double score = 0.0;
    /// Incident to a seed node; kept even below the cutoff.
    bool seeded = false;

    bool operator==(const RetrievedFact&) const = default;
};

/// Best first; at most k entries.
struct RetrievedContext {
    std::vector<RetrievedFact> facts;

    bool empty() const { return facts.empty(); }
};

/// Scores every fact against the question. Facts below the cutoff are
/// dropped unless they touch a seed node; the rest are ranked by score (edge
/// id on ties) and the top k kept. An empty result is logged as a
/// zero-retrieval event.
RetrievedContext retrieve(const std::string& question, const std::set<kg::NodeId>& seeds, const kg::Graph& graph,
                          const FactIndex& index, match::Embedder& embedder, const RetrievalConfig& config = {});

/// Same ranking over precomputed scores; `seeded[i]` marks seed facts.
RetrievedContext rank_facts(const FactIndex& index, const std::vector<double>& scores,
                            const std::vector<bool>& seeded, const RetrievalConfig& config);

void to_json(nlohmann::json& j, const QueryPlan& p);
void from_json(const nlohmann::json& j, QueryPlan& p);
void to_json(nlohmann::json& j, const RetrievedFact& f);

} // namespace foodkg::graphrag
