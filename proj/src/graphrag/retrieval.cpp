// SPDX-License-Identifier: Apache-2.0

#include "foodkg/graphrag/retrieval.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "foodkg/common/log.hpp"
#include "foodkg/common/text.hpp"
#include "foodkg/enrich/structured.hpp"

namespace foodkg::graphrag {

using nlohmann::json;

std::vector<std::string> QueryPlan::terms() const
{
    std::vector<std::string> out;
    for (const auto* list : {&concepts, &keywords, &synonyms})
        for (const auto& t : *list)
            if (std::find(out.begin(), out.end(), t) == out.end())
                out.push_back(t);
    return out;
}

QueryPlan normalize_plan(QueryPlan plan)
{
    std::unordered_set<std::string> seen;
    for (auto* list : {&plan.concepts, &plan.keywords, &plan.synonyms}) {
        std::vector<std::string> kept;
        for (const auto& raw : *list) {
            auto term = text::collapse_whitespace(text::to_lower(raw));
            if (!term.empty() && seen.insert(term).second)
                kept.push_back(std::move(term));
        }
        *list = std::move(kept);
    }
    return plan;
}

namespace {

enrich::Schema plan_schema()
{
    enrich::Schema s;
    s.name = "query plan";
    for (const auto* name : {"concepts", "keywords", "synonyms"}) {
        enrich::FieldSpec f;
        f.name = name;
        f.type = enrich::FieldType::string_list;
        f.required = false;
        s.fields.push_back(std::move(f));
    }
    return s;
}

} // namespace

QueryPlan extract_query_plan(const std::string& question, enrich::LlmBackend& backend,
                             const enrich::PromptPack& prompts, const enrich::GenerationConfig& config)
{
    if (text::trim(question).empty())
        throw InvalidArgumentError("empty question");
    try {
        nlohmann::ordered_json user;
        user["question"] = question;
        const json out = enrich::complete_structured(backend, prompts.system(enrich::Task::query_plan), user.dump(),
                                                     plan_schema(), config);
        return normalize_plan(out.get<QueryPlan>());
    } catch (const Error& e) {
        logger()->warn("query plan unavailable, retrieving by embedding only: {}", e.what());
        return {};
    }
}

std::set<kg::NodeId> seed_node_search(const QueryPlan& plan, const kg::Graph& graph)
{
    std::set<kg::NodeId> out;
    std::vector<std::string> terms;
    for (const auto& t : plan.terms())
        terms.push_back(text::to_lower(t));
    if (terms.empty())
        return out;
    for (const auto& node : graph.nodes()) {
        const auto name = text::to_lower(node.name);
        for (const auto& t : terms) {
            if (name.find(t) != std::string::npos) {
                out.insert(node.id);
                break;
            }
        }
    }
    return out;
}

RetrievedContext rank_facts(const FactIndex& index, const std::vector<double>& scores, const std::vector<bool>& seeded,
                            const RetrievalConfig& config)
{
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < index.size(); ++i)
        if (seeded[i] || scores[i] >= config.cutoff)
            candidates.push_back(i);
    const auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b])
            return scores[a] > scores[b];
        return index.edge(a) < index.edge(b);
    };
    const auto k = std::min(config.k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                      better);
    RetrievedContext out;
    for (std::size_t i = 0; i < k; ++i) {
        const auto p = candidates[i];
        out.facts.push_back({index.edge(p), index.text(p), scores[p], seeded[p]});
    }
    return out;
}

RetrievedContext retrieve(const std::string& question, const std::set<kg::NodeId>& seeds, const kg::Graph& graph,
                          const FactIndex& index, match::Embedder& embedder, const RetrievalConfig& config)
{
    const auto scores = index.scores(embedder.embed_one(question));
    std::vector<bool> seeded(index.size(), false);
    for (const auto id : seeds)
        for (const auto& n : graph.neighbors(id, std::nullopt, kg::Direction::Both))
            if (const auto p = index.position(n.edge.id))
                seeded[*p] = true;
    auto context = rank_facts(index, scores, seeded, config);
    if (context.empty())
        logger()->warn("zero-retrieval: no fact reached cutoff {} and no seed node matched for question '{}'",
                       config.cutoff, question);
    return context;
}

void to_json(json& j, const QueryPlan& p)
{
    j = json{{"concepts", p.concepts}, {"keywords", p.keywords}, {"synonyms", p.synonyms}};
}

void from_json(const json& j, QueryPlan& p)
{
    p.concepts = j.value("concepts", std::vector<std::string>());
    p.keywords = j.value("keywords", std::vector<std::string>());
    p.synonyms = j.value("synonyms", std::vector<std::string>());
}

void to_json(json& j, const RetrievedFact& f)
{
    j = json{{"edge", f.edge.value}, {"fact", f.text}, {"score", f.score}, {"seeded", f.seeded}};
}

} // namespace foodkg::graphrag
