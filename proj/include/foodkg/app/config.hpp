// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "foodkg/common/error.hpp"
#include "foodkg/enrich/backend.hpp"
#include "foodkg/graphrag/retrieval.hpp"
#include "foodkg/match/match.hpp"

namespace foodkg::app {

/// A config file that is unreadable, malformed or names missing inputs.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunPaths {
    std::filesystem::path corpus;
    std::filesystem::path swiss_db;
    std::filesystem::path usda_db;
    std::filesystem::path gi_table;
    std::filesystem::path substitutions;
    std::filesystem::path prompts;
    std::filesystem::path seed_categories;
    /// Directory for stage artifacts; created on demand.
    std::filesystem::path work_dir;
    std::filesystem::path snapshot;
    std::filesystem::path index;
    std::optional<std::filesystem::path> qa_set;
};

struct BackendSettings {
    std::string chat_url = "http://localhost:11434/api/chat";
    std::string chat_model = "gemma3:27b";
    std::string embed_url = "http://localhost:11434/api/embed";
    std::string embed_model = "mxbai-embed-large";
    std::chrono::seconds timeout{300};
    std::size_t max_in_flight = 4;
};

struct MockSettings {
    bool enabled = false;
    /// Recorded chat replies; required in mock mode.
    std::optional<std::filesystem::path> transcript;
    std::size_t embedding_dimensions = 1024;
};

struct RunConfig {
    RunPaths paths;
    BackendSettings backend;
    enrich::GenerationConfig generation;
    graphrag::RetrievalConfig retrieval;
    double match_threshold = match::kDefaultLowConfidence;
    double substitute_threshold = match::kDefaultSubstituteThreshold;
    MockSettings mock;
};

/// Parses a config document. Relative paths resolve against `base_dir`.
/// `force_mock` turns mock mode on regardless of the file. Every input file
/// (corpus, tables, prompt directory, seed file, QA set, transcript) must
/// exist; otherwise ConfigError names the first missing one.
///
/// {
///   "paths": {"corpus", "swiss_db", "usda_db", "gi_table", "substitutions",
///             "prompts"?, "seed_categories"?, "work_dir"?, "snapshot"?,
///             "index"?, "qa_set"?},
///   "backend": {"chat_url", "chat_model", "embed_url", "embed_model",
///               "timeout_seconds", "max_in_flight"}?,
///   "generation": {GenerationConfig overrides}?,
///   "retrieval": {"cutoff", "k"}?,
///   "matching": {"low_confidence", "substitute_threshold"}?,
///   "mock": {"enabled", "transcript", "embedding_dimensions"}?
/// }
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir, bool force_mock = false);
RunConfig load_run_config(const std::filesystem::path& path, bool force_mock = false);

/// Effective settings without paths, so reports do not depend on where a
/// run lives.
nlohmann::json to_json(const RunConfig& config);

} // namespace foodkg::app
