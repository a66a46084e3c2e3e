// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace foodkg::metrics {

struct ReportRow {
    std::string id;
    double score = 0.0;
    std::vector<std::string> flags;
};

/// Per-item scores for one task plus their mean.
///
/// Text form (tab separated, stable column order):
///
///   # task<TAB>containment
///   id<TAB>score<TAB>flags
///   q01<TAB>1<TAB>-
///   # aggregate<TAB>mean=0.8<TAB>n=20
class MetricReport {
public:
    explicit MetricReport(std::string task) : task_(std::move(task)) {}

    void add(std::string id, double score, std::vector<std::string> flags = {});

    const std::string& task() const { return task_; }
    const std::vector<ReportRow>& rows() const { return rows_; }
    std::size_t n() const { return rows_.size(); }
    /// Mean of the per-item scores; 0 for an empty report.
    double aggregate() const;

    std::string to_text() const;
    void write(const std::filesystem::path& path) const;

private:
    std::string task_;
    std::vector<ReportRow> rows_;
};

} // namespace foodkg::metrics
