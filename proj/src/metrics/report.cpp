// SPDX-License-Identifier: Apache-2.0

#include "foodkg/metrics/report.hpp"

#include "foodkg/common/io.hpp"
#include "foodkg/common/text.hpp"

namespace foodkg::metrics {

void MetricReport::add(std::string id, double score, std::vector<std::string> flags)
{
    rows_.push_back(ReportRow{std::move(id), score, std::move(flags)});
}

double MetricReport::aggregate() const
{
    if (rows_.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& r : rows_)
        sum += r.score;
    return sum / static_cast<double>(rows_.size());
}

std::string MetricReport::to_text() const
{
    std::string out = "# task\t" + task_ + "\nid\tscore\tflags\n";
    for (const auto& r : rows_) {
        out += r.id + '\t' + text::format_number(r.score) + '\t';
        out += r.flags.empty() ? "-" : text::join(r.flags, ",");
        out += '\n';
    }
    out += "# aggregate\tmean=" + text::format_number(aggregate()) + "\tn=" + std::to_string(n()) + '\n';
    return out;
}

void MetricReport::write(const std::filesystem::path& path) const
{
    write_file_atomic(path, to_text());
}

} // namespace foodkg::metrics
