// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "foodkg/common/error.hpp"

namespace foodkg::metrics {

/// Number of characters matched by recursive longest-common-substring
/// decomposition of a against b. Among equally long common substrings the
/// one starting first in a, then first in b, is taken.
std::size_t gestalt_matches(std::u32string_view a, std::u32string_view b);

/// Same result as gestalt_matches via the quadratic run-length table; the
/// general path for strings longer than 64 code points.
std::size_t gestalt_matches_dp(std::u32string_view a, std::u32string_view b);

/// 2M / (|a| + |b|) over code points, with M = max(gestalt_matches(a, b),
/// gestalt_matches(b, a)) so that the score is symmetric. Two empty strings
/// score 1.
double gestalt_similarity(std::u32string_view a, std::u32string_view b);
double gestalt_similarity(std::string_view a, std::string_view b);

using LabelSet = std::set<std::string>;

/// 1 when both sets are empty, 0 when they share nothing, otherwise the
/// harmonic mean of |T ∩ P| / |P| and |T ∩ P| / |T|.
double set_f1(const LabelSet& truth, const LabelSet& predicted);

struct BinaryConfusion {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    bool operator==(const BinaryConfusion&) const = default;
};

struct F1Result {
    double value = 0.0;
    /// Precision + recall was zero (including tp = fp = fn = 0); value is 0.
    bool degenerate = false;
};

F1Result binary_f1(const BinaryConfusion& c);

struct MeanF1Result {
    double mean = 0.0;
    std::map<std::string, F1Result> per_label;
    std::vector<std::string> degenerate_labels;
};

/// Unweighted mean of per-label binary F1 over `labels`. Throws
/// InvalidArgumentError when a label is missing from `confusions`.
MeanF1Result mean_label_f1(const std::map<std::string, BinaryConfusion>& confusions,
                           std::span<const std::string> labels);

/// Tallies confusion counts per label from parallel truth / prediction flag
/// maps (one map per item). Absent keys count as false.
std::map<std::string, BinaryConfusion> tally_confusions(
    std::span<const std::map<std::string, bool>> truth, std::span<const std::map<std::string, bool>> predicted,
    std::span<const std::string> labels);

struct RetrievalOutcome {
    /// Highest-similarity candidates; more than one when tied.
    std::vector<std::string> predicted;
    std::string truth;
};

/// Fraction of queries whose truth is among the predicted (tied) candidates.
/// Throws InvalidArgumentError on an empty list.
double retrieval_accuracy(std::span<const RetrievalOutcome> outcomes);

/// NFC, lowercase, whitespace collapsed and trimmed.
std::string normalize_for_containment(std::string_view s);

bool contains_expected(std::string_view response, std::string_view expected);

struct ResponsePair {
    std::string response;
    std::string expected;
};

/// Fraction of pairs whose normalized expected text occurs in the normalized
/// response. Throws InvalidArgumentError on an empty list.
double containment_accuracy(std::span<const ResponsePair> pairs);

} // namespace foodkg::metrics
