// SPDX-License-Identifier: Apache-2.0

#include "foodkg/metrics/external_scorer.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "foodkg/common/error.hpp"
#include "foodkg/common/http.hpp"

namespace foodkg::metrics {

HttpScorer::HttpScorer(std::string url, std::chrono::seconds timeout) : url_(std::move(url)), timeout_(timeout)
{
    parse_http_endpoint(url_);
}

double HttpScorer::score(const TranslationSample& sample)
{
    const auto ep = parse_http_endpoint(url_);
    httplib::Client client(ep.origin);
    client.set_read_timeout(timeout_);
    const nlohmann::json body = {
        {"source", sample.source}, {"translation", sample.translation}, {"reference", sample.reference}};
    const auto res = client.Post(ep.path, body.dump(), "application/json");
    if (!res)
        throw Error("scorer unreachable at " + url_ + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw Error("scorer returned HTTP " + std::to_string(res->status));
    try {
        return nlohmann::json::parse(res->body).at("score").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scorer response: ") + e.what());
    }
}

MetricReport score_translations(std::string task, std::span<const TranslationSample> samples,
                                ExternalScorer& scorer)
{
    MetricReport report(std::move(task));
    for (const auto& s : samples)
        report.add(s.id, scorer.score(s));
    return report;
}

} // namespace foodkg::metrics
