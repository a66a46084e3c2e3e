// SPDX-License-Identifier: Apache-2.0

#include "foodkg/graphrag/evaluate.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "foodkg/common/hash.hpp"
#include "foodkg/common/io.hpp"
#include "foodkg/common/text.hpp"
#include "foodkg/metrics/metrics.hpp"

namespace foodkg::graphrag {

using nlohmann::json;

std::vector<QAItem> parse_qa_set(std::string_view text)
{
    std::vector<QAItem> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty())
            continue;
        QAItem item;
        try {
            const json j = json::parse(line);
            item.question = j.at("question").get<std::string>();
            item.expected = j.at("expected").get<std::string>();
        } catch (const json::exception& e) {
            throw ParseError("QA set line " + std::to_string(line_no) + ": " + e.what());
        }
        if (text::trim(item.question).empty() || text::trim(item.expected).empty())
            throw ParseError("QA set line " + std::to_string(line_no) + ": empty question or expected answer");
        out.push_back(std::move(item));
    }
    return out;
}

std::vector<QAItem> load_qa_set(const std::filesystem::path& path)
{
    return parse_qa_set(read_file(path));
}

namespace {

std::string row_id(std::size_t index)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "q%02zu", index + 1);
    return buf;
}

} // namespace

metrics::MetricReport EvaluationReport::metric_report() const
{
    metrics::MetricReport report("containment");
    for (const auto& r : rows) {
        std::vector<std::string> flags;
        if (r.zero_retrieval)
            flags.push_back("zero_retrieval");
        report.add(r.id, r.hit ? 1.0 : 0.0, flags);
    }
    return report;
}

EvaluationReport evaluate(const std::vector<QAItem>& items, const QaPipeline& pipeline)
{
    EvaluationReport report;
    std::vector<metrics::ResponsePair> pairs;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto result = answer_question(items[i].question, pipeline);
        EvaluationRow row;
        row.id = row_id(i);
        row.question = items[i].question;
        row.expected = items[i].expected;
        row.answer = result.answer.text;
        row.answer_hash = sha256_hex(row.answer);
        row.hit = metrics::contains_expected(row.answer, row.expected);
        row.zero_retrieval = result.answer.zero_retrieval;
        row.retrieved = result.context.facts.size();
        row.seed_nodes = result.seed_nodes;
        report.zero_retrieval_count += row.zero_retrieval ? 1 : 0;
        pairs.push_back({row.answer, row.expected});
        report.rows.push_back(std::move(row));
    }
    report.containment_accuracy = metrics::containment_accuracy(pairs);
    return report;
}

std::string report_to_string(const EvaluationReport& report)
{
    return json(report).dump(1) + "\n";
}

void to_json(json& j, const EvaluationRow& r)
{
    j = json{{"id", r.id},
             {"question", r.question},
             {"expected", r.expected},
             {"answer", r.answer},
             {"answer_hash", r.answer_hash},
             {"hit", r.hit},
             {"zero_retrieval", r.zero_retrieval},
             {"retrieved", r.retrieved},
             {"seed_nodes", r.seed_nodes}};
}

void to_json(json& j, const EvaluationReport& r)
{
    j = json{{"rows", r.rows},
             {"aggregate",
              {{"containment_accuracy", r.containment_accuracy},
               {"questions", r.rows.size()},
               {"zero_retrieval", r.zero_retrieval_count}}}};
}

std::vector<QAItem> generate_qa_items(const kg::Graph& graph, std::size_t limit)
{
    struct Template {
        kg::EdgeKind kind;
        const char* question; // %s is the subject name
    };
    static constexpr Template kTemplates[] = {
        {kg::EdgeKind::AllergenOf, "Which allergen category does %s belong to?"},
        {kg::EdgeKind::ClassifiedAs, "Which Swiss food pyramid category is %s classified as?"},
        {kg::EdgeKind::SubstitutedBy, "What can be used instead of %s?"},
        {kg::EdgeKind::IsPartOf, "Which cuisine does the recipe %s belong to?"},
    };

    // Only subjects with exactly one edge of the kind give unambiguous answers.
    std::vector<std::vector<QAItem>> pools(std::size(kTemplates));
    for (std::size_t t = 0; t < std::size(kTemplates); ++t) {
        std::map<kg::NodeId, std::vector<kg::Edge>> by_subject;
        for (const auto& e : graph.edges())
            if (e.kind == kTemplates[t].kind)
                by_subject[e.src].push_back(e);
        std::set<std::string> asked;
        for (const auto& [subject, edges] : by_subject) {
            if (edges.size() != 1)
                continue;
            const auto name = graph.node(subject).name;
            std::string question = kTemplates[t].question;
            question.replace(question.find("%s"), 2, name);
            if (!asked.insert(question).second)
                continue;
            pools[t].push_back({question, graph.node(edges.front().dst).name});
        }
    }
    std::vector<QAItem> out;
    for (std::size_t round = 0; out.size() < limit; ++round) {
        bool any = false;
        for (const auto& pool : pools) {
            if (round < pool.size() && out.size() < limit) {
                out.push_back(pool[round]);
                any = true;
            }
        }
        if (!any)
            break;
    }
    return out;
}

} // namespace foodkg::graphrag
