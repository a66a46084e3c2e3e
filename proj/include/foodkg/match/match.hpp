// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/ingest/tables.hpp"
#include "foodkg/kg/graph.hpp"
#include "foodkg/match/embedding.hpp"
#include "foodkg/match/index.hpp"

namespace foodkg::match {

enum class MatchMethod { exact, embedding };
enum class MatchSource { swiss, usda, gi, subs };

std::string_view to_string(MatchMethod method);
std::string_view to_string(MatchSource source);

inline constexpr double kDefaultLowConfidence = 0.5;
/// Mapping a substitute onto a different existing ingredient changes what the
/// graph claims, so it needs near-identity rather than the report threshold.
inline constexpr double kDefaultSubstituteThreshold = 0.85;

struct MatchResult {
    std::string query;
    std::string candidate;
    double score = 0.0; // 1.0 for exact matches
    MatchMethod method = MatchMethod::exact;
    MatchSource source = MatchSource::swiss;
    bool low_confidence = false;
    /// Every candidate sharing the best score, candidate included, when more
    /// than one did. Left for manual resolution.
    std::vector<std::string> ties;

    bool tied() const { return ties.size() > 1; }
    bool operator==(const MatchResult&) const = default;
};

/// Argmax-cosine candidate for `query`. Throws InvalidArgumentError on an
/// empty index and EmbedderError when the embedder fails.
MatchResult nearest(const std::string& query, const VectorIndex& index, Embedder& embedder,
                    MatchSource source = MatchSource::swiss);
MatchResult nearest(const std::string& query, const EmbeddingVector& query_vector, const VectorIndex& index,
                    MatchSource source);

/// One table the ladder can look names up in.
class MatchTarget {
public:
    MatchTarget(MatchSource source, const std::vector<std::string>& names, Embedder& embedder);

    MatchSource source() const { return source_; }
    const VectorIndex& index() const { return index_; }
    /// Position of the first name whose normalized form equals normalize_name(name).
    std::optional<std::size_t> exact(std::string_view name) const;

private:
    MatchSource source_;
    VectorIndex index_;
    std::map<std::string, std::size_t, std::less<>> exact_;
};

/// Resolution order: exact match in each target in turn, then embedding match
/// in each target in turn. An embedding candidate at or above `threshold` is
/// taken from the first target that has one; otherwise the best candidate
/// overall (earlier target on equal scores) is returned flagged low-confidence.
/// Candidates scoring <= 0 share no signal with the query and are never
/// returned.
class MatchLadder {
public:
    MatchLadder(std::vector<const MatchTarget*> targets, Embedder& embedder, double threshold);

    /// Returns the match and the candidate's position in its target.
    struct Hit {
        MatchResult result;
        std::size_t position = 0;
    };
    std::optional<Hit> resolve(const std::string& name) const;

    double threshold() const { return threshold_; }

private:
    std::vector<const MatchTarget*> targets_;
    Embedder& embedder_;
    double threshold_;
};

struct NutrientMatch {
    MatchResult match;
    const ingest::NutrientEntry* entry = nullptr;
};

/// Resolves ingredient names against the Swiss then USDA composition tables.
/// Holds references to both tables, which must outlive it.
class NutrientMatcher {
public:
    /// Throws InvalidArgumentError when both tables are empty.
    NutrientMatcher(const ingest::NutrientTable& swiss, const ingest::NutrientTable& usda, Embedder& embedder,
                    double threshold = kDefaultLowConfidence);
    NutrientMatcher(const NutrientMatcher&) = delete;
    NutrientMatcher& operator=(const NutrientMatcher&) = delete;

    std::optional<NutrientMatch> resolve(const std::string& name) const;

private:
    const ingest::NutrientTable& swiss_;
    const ingest::NutrientTable& usda_;
    std::optional<MatchTarget> swiss_target_;
    std::optional<MatchTarget> usda_target_;
    std::optional<MatchLadder> ladder_;
};

/// Node props for a nutrient match: every nutrient column under its own key,
/// plus nutrients_source, nutrients_match, nutrients_score, nutrients_method,
/// nutrients_low_confidence and nutrients_line (row of the source table).
kg::Props nutrient_props(const NutrientMatch& match);

struct GiMatch {
    MatchResult match;
    const ingest::GIEntry* entry = nullptr;
};

class GiMatcher {
public:
    GiMatcher(const ingest::GITable& table, Embedder& embedder, double threshold = kDefaultLowConfidence);
    GiMatcher(const GiMatcher&) = delete;
    GiMatcher& operator=(const GiMatcher&) = delete;

    /// nullopt when the table is empty or nothing plausible matches.
    std::optional<GiMatch> resolve(const std::string& name) const;

private:
    const ingest::GITable& table_;
    std::optional<MatchTarget> target_;
    std::optional<MatchLadder> ladder_;
};

/// gi, gi_match, gi_score, gi_method, gi_low_confidence.
kg::Props gi_props(const GiMatch& match);

struct SubstitutionReport {
    std::size_t substituted_by = 0;
    std::size_t composite_nodes = 0;
    std::size_t has_composite = 0;
    std::size_t composed_of = 0;
    std::size_t substitute_only_nodes = 0;
    /// Targets with no matching ingredient in the graph.
    std::vector<std::string> unmatched_targets;

    bool operator==(const SubstitutionReport&) const = default;
};

/// Adds substitution edges for every entry whose target resolves to an
/// ingredient already in the graph. Names resolve exactly, then by embedding
/// at or above `threshold` among the graph's ingredients; a substitute that
/// resolves to nothing becomes a new ingredient with is_substitute_only=true.
/// Single substitutes get SUBSTITUTED_BY (ratio, notes, quantity, unit as
/// edge props); composites get a CompositeSubstitute node, one
/// HAS_COMPOSITE_SUBSTITUTE edge and one COMPOSED_OF edge per part. All
/// edges are added in one batch.
SubstitutionReport link_substitutes(const std::vector<ingest::SubstitutionEntry>& entries, kg::Graph& graph,
                                    Embedder& embedder, double threshold = kDefaultSubstituteThreshold);

void to_json(nlohmann::json& j, const MatchResult& m);
void to_json(nlohmann::json& j, const SubstitutionReport& r);

} // namespace foodkg::match
