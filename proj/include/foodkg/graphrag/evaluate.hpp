// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/graphrag/answer.hpp"
#include "foodkg/metrics/report.hpp"

namespace foodkg::graphrag {

struct QAItem {
    std::string question;
    std::string expected;

    bool operator==(const QAItem&) const = default;
};

/// One {"question", "expected"} object per line; blank lines skipped.
/// Throws ParseError on malformed lines or empty fields.
std::vector<QAItem> parse_qa_set(std::string_view text);
std::vector<QAItem> load_qa_set(const std::filesystem::path& path);

struct EvaluationRow {
    std::string id; // "q01", "q02", ...
    std::string question;
    std::string expected;
    std::string answer;
    std::string answer_hash; // sha256 of the answer text
    bool hit = false;
    bool zero_retrieval = false;
    std::size_t retrieved = 0;
    std::size_t seed_nodes = 0;
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;
    double containment_accuracy = 0.0;
    std::size_t zero_retrieval_count = 0;

    /// Per-question scores with "zero_retrieval" flags, as a metric report.
    metrics::MetricReport metric_report() const;
};

/// Runs the whole pipeline per question, in order. A zero-retrieval question
/// counts as a miss unless its expected text appears in the fallback answer.
EvaluationReport evaluate(const std::vector<QAItem>& items, const QaPipeline& pipeline);

/// Deterministic JSON text of the report (rows then aggregate).
std::string report_to_string(const EvaluationReport& report);

void to_json(nlohmann::json& j, const EvaluationRow& r);
void to_json(nlohmann::json& j, const EvaluationReport& r);

/// Derives QA items from graph facts: allergen, food group, substitute and
/// cuisine questions whose expected answer is a node name. At most
/// `limit` items, in a fixed order.
std::vector<QAItem> generate_qa_items(const kg::Graph& graph, std::size_t limit);

} // namespace foodkg::graphrag
