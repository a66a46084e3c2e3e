// SPDX-License-Identifier: Apache-2.0

// Full mock runs over the fixture corpus: transcript recording and replay.

#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "foodkg/app/pipeline.hpp"
#include "foodkg/common/io.hpp"
#include "foodkg/kg/snapshot.hpp"
#include "foodkg/match/embedding.hpp"
#include "support/fixtures.hpp"
#include "support/scripted_responder.hpp"

namespace foodkg::testing {

/// Every word of this question hashes to a bucket no fixture fact uses, and
/// its scripted plan is empty, so nothing can be retrieved for it.
inline const char* kZeroRetrievalQuestion = "How did physics explain gravity?";

inline std::filesystem::path transcript_path(bool perturbed)
{
    return corpus_dir() / (perturbed ? "transcript_perturbed.jsonl" : "transcript.jsonl");
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / (prefix + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// The fixture config with artifacts under `work_dir` and the given
/// transcript. Without `mock` the transcript need not exist yet.
inline app::RunConfig fixture_config(const std::filesystem::path& work_dir, bool perturbed = false,
                                     bool mock = true)
{
    auto doc = nlohmann::json::parse(read_file(corpus_dir() / "config.json"));
    doc["paths"]["work_dir"] = work_dir.string();
    doc["mock"]["transcript"] = transcript_path(perturbed).string();
    doc["mock"]["enabled"] = mock;
    return app::parse_run_config(doc, corpus_dir());
}

struct MockRun {
    nlohmann::json run_report;
    std::string snapshot;
    std::string index;
    std::string eval_report;
    graphrag::EvaluationReport evaluation;
};

/// ingest -> enrich -> match -> build -> index -> evaluate, replaying the
/// committed transcript with the hash embedder.
inline MockRun run_mock_pipeline(const std::filesystem::path& work_dir, bool perturbed = false)
{
    app::Runtime rt(fixture_config(work_dir, perturbed));
    MockRun out;
    out.run_report = app::run_pipeline(rt);
    const auto state = app::load_serving_state(rt);
    out.evaluation = app::run_evaluation(rt, state, graphrag::load_qa_set(*rt.config().paths.qa_set));
    out.snapshot = read_file(rt.artifacts().snapshot);
    out.index = read_file(rt.artifacts().index);
    out.eval_report = read_file(rt.artifacts().eval_report);
    return out;
}

/// Runs the pipeline, the QA set and the zero-retrieval question against
/// the scripted responder and returns every exchange as a transcript.
inline std::string record_transcript(const std::filesystem::path& work_dir, bool perturbed)
{
    const auto config = fixture_config(work_dir, perturbed, false);
    const auto catalog = kg::load_seed_catalog(config.paths.seed_categories);
    const auto prompts = enrich::PromptPack::load(config.paths.prompts, catalog);
    ScriptedResponder responder(prompts, perturbed);
    auto recorder = std::make_unique<enrich::RecordingBackend>(responder);
    auto* recording = recorder.get();
    app::Runtime rt(config, std::move(recorder),
                    std::make_unique<match::HashEmbedder>(config.mock.embedding_dimensions));
    app::run_pipeline(rt);
    const auto state = app::load_serving_state(rt);
    app::run_evaluation(rt, state, graphrag::load_qa_set(*config.paths.qa_set));
    graphrag::answer_question(kZeroRetrievalQuestion, app::make_qa_pipeline(rt, state));
    return recording->transcript();
}

} // namespace foodkg::testing
