// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <span>
#include <string>

#include "foodkg/metrics/report.hpp"

namespace foodkg::metrics {

struct TranslationSample {
    std::string id;
    std::string source;
    std::string translation;
    std::string reference;
};

/// A learned translation-quality scorer (COMET-style) living outside this
/// process. Implementations return one real-valued score per sample.
class ExternalScorer {
public:
    virtual ~ExternalScorer() = default;
    virtual double score(const TranslationSample& sample) = 0;
};

/// Adapter for a scorer served over HTTP.
///
/// Request:  POST <url>  {"source": "...", "translation": "...", "reference": "..."}
/// Response: {"score": <number>}
class HttpScorer : public ExternalScorer {
public:
    explicit HttpScorer(std::string url, std::chrono::seconds timeout = std::chrono::seconds(60));
    double score(const TranslationSample& sample) override;

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

MetricReport score_translations(std::string task, std::span<const TranslationSample> samples,
                                ExternalScorer& scorer);

} // namespace foodkg::metrics
