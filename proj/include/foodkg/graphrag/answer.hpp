// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/enrich/backend.hpp"
#include "foodkg/enrich/prompts.hpp"
#include "foodkg/graphrag/fact_index.hpp"
#include "foodkg/graphrag/retrieval.hpp"

namespace foodkg::graphrag {

inline constexpr std::string_view kFallbackAnswer =
    "No knowledge could be retrieved from the knowledge graph for this question, so it cannot be answered.";

/// Room kept free in the context window for the reply.
inline constexpr long kAnswerReserveTokens = 512;

/// Rough token count used for budgeting: one token per four bytes, rounded up.
long estimate_tokens(std::string_view text);

struct Answer {
    std::string text;
    /// Facts actually handed to the backend, best first.
    std::vector<RetrievedFact> cited;
    bool zero_retrieval = false;
    /// Facts left out to fit the context window.
    std::size_t dropped = 0;
};

/// Answers from the context only. An empty context returns kFallbackAnswer
/// without calling the backend. Otherwise the lowest-scored facts are dropped
/// until the request fits config.context_window. Throws BackendError and
/// BackendUnavailableError from the backend.
Answer synthesize_answer(const std::string& question, const RetrievedContext& context, enrich::LlmBackend& backend,
                         const enrich::PromptPack& prompts, const enrich::GenerationConfig& config);

/// Everything one question needs. All members must outlive the pipeline.
struct QaPipeline {
    const kg::Graph& graph;
    const FactIndex& index;
    match::Embedder& embedder;
    enrich::LlmBackend& backend;
    const enrich::PromptPack& prompts;
    enrich::GenerationConfig config;
    RetrievalConfig retrieval;
};

struct QaResult {
    std::string question;
    QueryPlan plan;
    std::size_t seed_nodes = 0;
    RetrievedContext context;
    Answer answer;
};

/// Plan, seed, retrieve, synthesize, in that order.
QaResult answer_question(const std::string& question, const QaPipeline& pipeline);

void to_json(nlohmann::json& j, const QaResult& r);

} // namespace foodkg::graphrag
