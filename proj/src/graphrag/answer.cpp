// SPDX-License-Identifier: Apache-2.0

#include "foodkg/graphrag/answer.hpp"

#include "foodkg/common/text.hpp"

namespace foodkg::graphrag {

using nlohmann::json;

long estimate_tokens(std::string_view text)
{
    return static_cast<long>((text.size() + 3) / 4);
}

namespace {

std::string synthesis_input(const std::string& question, const std::vector<RetrievedFact>& facts)
{
    nlohmann::ordered_json user;
    user["question"] = question;
    user["facts"] = json::array();
    for (const auto& f : facts)
        user["facts"].push_back(f.text);
    return user.dump();
}

} // namespace

Answer synthesize_answer(const std::string& question, const RetrievedContext& context, enrich::LlmBackend& backend,
                         const enrich::PromptPack& prompts, const enrich::GenerationConfig& config)
{
    Answer answer;
    if (context.empty()) {
        answer.text = std::string(kFallbackAnswer);
        answer.zero_retrieval = true;
        return answer;
    }
    const std::string& system = prompts.system(enrich::Task::synthesis);
    answer.cited = context.facts;
    std::string user = synthesis_input(question, answer.cited);
    // Facts arrive best first, so trimming from the back drops the weakest.
    while (!answer.cited.empty() &&
           estimate_tokens(system) + estimate_tokens(user) + kAnswerReserveTokens > config.context_window) {
        answer.cited.pop_back();
        ++answer.dropped;
        user = synthesis_input(question, answer.cited);
    }
    if (answer.cited.empty()) {
        answer.text = std::string(kFallbackAnswer);
        return answer;
    }
    answer.text = text::trim(backend.complete({{"system", system}, {"user", user}}, config));
    return answer;
}

QaResult answer_question(const std::string& question, const QaPipeline& p)
{
    QaResult r;
    r.question = question;
    r.plan = extract_query_plan(question, p.backend, p.prompts, p.config);
    const auto seeds = seed_node_search(r.plan, p.graph);
    r.seed_nodes = seeds.size();
    r.context = retrieve(question, seeds, p.graph, p.index, p.embedder, p.retrieval);
    r.answer = synthesize_answer(question, r.context, p.backend, p.prompts, p.config);
    return r;
}

void to_json(json& j, const QaResult& r)
{
    j = json{{"question", r.question},
             {"answer", r.answer.text},
             {"facts", r.answer.cited},
             {"zero_retrieval", r.answer.zero_retrieval},
             {"dropped_facts", r.answer.dropped},
             {"plan", r.plan},
             {"seed_nodes", r.seed_nodes}};
}

} // namespace foodkg::graphrag
