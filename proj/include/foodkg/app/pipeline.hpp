// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/app/config.hpp"
#include "foodkg/enrich/prompts.hpp"
#include "foodkg/graphrag/evaluate.hpp"
#include "foodkg/graphrag/fact_index.hpp"
#include "foodkg/ingest/recipe.hpp"
#include "foodkg/kg/seed.hpp"

namespace foodkg::app {

enum class Stage { ingest, enrich, match, build_graph, embed_index };

inline constexpr Stage kStages[] = {Stage::ingest, Stage::enrich, Stage::match, Stage::build_graph,
                                    Stage::embed_index};

/// "ingest", "enrich", "match", "build-graph", "embed-index".
std::string_view to_string(Stage stage);

/// A stage aborted. Artifacts of earlier stages stay on disk.
class StageError : public Error {
public:
    StageError(Stage stage, const std::string& cause, bool backend_unreachable);
    Stage stage() const { return stage_; }
    /// The cause was a chat or embedding service that could not be reached.
    bool backend_unreachable() const { return backend_unreachable_; }

private:
    Stage stage_;
    bool backend_unreachable_;
};

struct Artifacts {
    std::filesystem::path ingest;
    std::filesystem::path enrich;
    std::filesystem::path match;
    std::filesystem::path snapshot;
    std::filesystem::path index;
    std::filesystem::path run_report;
    std::filesystem::path eval_report;

    const std::filesystem::path& of(Stage stage) const;
};

Artifacts artifacts_for(const RunConfig& config);

/// Loaded vocabularies and prompts plus the chat and embedding backends:
/// HTTP clients normally, a transcript and the hash embedder in mock mode.
class Runtime {
public:
    explicit Runtime(RunConfig config);
    /// Uses the given backends instead of building them from the config.
    Runtime(RunConfig config, std::unique_ptr<enrich::LlmBackend> chat, std::unique_ptr<match::Embedder> embedder);

    const RunConfig& config() const { return config_; }
    const Artifacts& artifacts() const { return artifacts_; }
    const kg::SeedCatalog& catalog() const { return catalog_; }
    const enrich::PromptPack& prompts() const { return prompts_; }
    enrich::LlmBackend& chat() { return *chat_; }
    match::Embedder& embedder() { return *embedder_; }

private:
    RunConfig config_;
    Artifacts artifacts_;
    kg::SeedCatalog catalog_;
    enrich::PromptPack prompts_;
    std::unique_ptr<enrich::LlmBackend> chat_;
    std::unique_ptr<match::Embedder> embedder_;
};

struct IngestArtifact {
    std::size_t record_count = 0;
    std::vector<ingest::Rejection> rejected;
    std::size_t duplicates_removed = 0;
    std::vector<ingest::RawRecipe> recipes;
};

void to_json(nlohmann::json& j, const IngestArtifact& a);
void from_json(const nlohmann::json& j, IngestArtifact& a);

/// Runs one stage from the artifacts of the stages before it, writes its own
/// artifact and records its counts in the run report. Failures throw
/// StageError.
nlohmann::json run_stage(Stage stage, Runtime& runtime);

/// Runs every stage in order. With `resume`, a stage whose artifact already
/// exists is skipped and its earlier counts are kept. Returns the run report.
nlohmann::json run_pipeline(Runtime& runtime, bool resume = false);

/// The run report on disk, or an empty object.
nlohmann::json load_run_report(const Artifacts& artifacts);

/// Snapshot plus fact index, checked against each other and against the
/// configured embedder (StaleIndexError otherwise).
struct ServingState {
    kg::Graph graph;
    graphrag::FactIndex index;
};

ServingState load_serving_state(Runtime& runtime);

graphrag::QaPipeline make_qa_pipeline(Runtime& runtime, const ServingState& state);

/// Evaluates a QA set and writes the evaluation report artifact.
graphrag::EvaluationReport run_evaluation(Runtime& runtime, const ServingState& state,
                                          const std::vector<graphrag::QAItem>& items);

} // namespace foodkg::app
