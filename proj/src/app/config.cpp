// SPDX-License-Identifier: Apache-2.0

#include "foodkg/app/config.hpp"

#include <fstream>

#include "foodkg/enrich/prompts.hpp"
#include "foodkg/kg/seed.hpp"

namespace foodkg::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void require_object(const json& doc, const char* key)
{
    if (doc.contains(key) && !doc.at(key).is_object())
        throw ConfigError(std::string("config section '") + key + "' must be an object");
}

fs::path resolve(const fs::path& base, const std::string& value)
{
    const fs::path p(value);
    return (p.is_absolute() ? p : base / p).lexically_normal();
}

fs::path required_path(const json& paths, const char* key, const fs::path& base)
{
    if (!paths.contains(key))
        throw ConfigError(std::string("config is missing paths.") + key);
    return resolve(base, paths.at(key).get<std::string>());
}

fs::path optional_path(const json& paths, const char* key, const fs::path& base, fs::path fallback)
{
    return paths.contains(key) ? resolve(base, paths.at(key).get<std::string>()) : std::move(fallback);
}

void require_exists(const fs::path& p, const char* what)
{
    if (!fs::exists(p))
        throw ConfigError(std::string(what) + " not found: " + p.string());
}

} // namespace

RunConfig parse_run_config(const json& doc, const fs::path& base_dir, bool force_mock)
{
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");
    for (const auto* section : {"paths", "backend", "generation", "retrieval", "matching", "mock"})
        require_object(doc, section);
    if (!doc.contains("paths"))
        throw ConfigError("config is missing the paths section");

    RunConfig c;
    try {
        const auto& paths = doc.at("paths");
        c.paths.corpus = required_path(paths, "corpus", base_dir);
        c.paths.swiss_db = required_path(paths, "swiss_db", base_dir);
        c.paths.usda_db = required_path(paths, "usda_db", base_dir);
        c.paths.gi_table = required_path(paths, "gi_table", base_dir);
        c.paths.substitutions = required_path(paths, "substitutions", base_dir);
        c.paths.prompts = optional_path(paths, "prompts", base_dir, enrich::default_prompt_dir());
        c.paths.seed_categories =
            optional_path(paths, "seed_categories", base_dir, kg::default_data_dir() / "seed_categories.json");
        c.paths.work_dir = optional_path(paths, "work_dir", base_dir, base_dir / "run");
        c.paths.snapshot = optional_path(paths, "snapshot", base_dir, c.paths.work_dir / "graph.jsonl");
        c.paths.index = optional_path(paths, "index", base_dir, c.paths.work_dir / "facts.jsonl");
        if (paths.contains("qa_set"))
            c.paths.qa_set = resolve(base_dir, paths.at("qa_set").get<std::string>());

        const json backend = doc.value("backend", json::object());
        c.backend.chat_url = backend.value("chat_url", c.backend.chat_url);
        c.backend.chat_model = backend.value("chat_model", c.backend.chat_model);
        c.backend.embed_url = backend.value("embed_url", c.backend.embed_url);
        c.backend.embed_model = backend.value("embed_model", c.backend.embed_model);
        c.backend.timeout = std::chrono::seconds(backend.value("timeout_seconds", c.backend.timeout.count()));
        c.backend.max_in_flight = backend.value("max_in_flight", c.backend.max_in_flight);
        if (c.backend.max_in_flight == 0)
            throw ConfigError("backend.max_in_flight must be at least 1");

        c.generation = enrich::apply_overrides(enrich::GenerationConfig{}, doc.value("generation", json::object()));

        const json retrieval = doc.value("retrieval", json::object());
        c.retrieval.cutoff = retrieval.value("cutoff", c.retrieval.cutoff);
        c.retrieval.k = retrieval.value("k", c.retrieval.k);

        const json matching = doc.value("matching", json::object());
        c.match_threshold = matching.value("low_confidence", c.match_threshold);
        c.substitute_threshold = matching.value("substitute_threshold", c.substitute_threshold);

        const json mock = doc.value("mock", json::object());
        c.mock.enabled = force_mock || mock.value("enabled", false);
        if (mock.contains("transcript"))
            c.mock.transcript = resolve(base_dir, mock.at("transcript").get<std::string>());
        c.mock.embedding_dimensions = mock.value("embedding_dimensions", c.mock.embedding_dimensions);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    } catch (const InvalidArgumentError& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }

    if (c.retrieval.k == 0)
        throw ConfigError("retrieval.k must be at least 1");
    if (c.mock.enabled && !c.mock.transcript)
        throw ConfigError("mock mode requires mock.transcript");
    if (c.mock.embedding_dimensions == 0)
        throw ConfigError("mock.embedding_dimensions must be at least 1");

    require_exists(c.paths.corpus, "recipe corpus");
    require_exists(c.paths.swiss_db, "Swiss nutrient database");
    require_exists(c.paths.usda_db, "USDA nutrient database");
    require_exists(c.paths.gi_table, "glycemic index table");
    require_exists(c.paths.substitutions, "substitution table");
    require_exists(c.paths.prompts, "prompt directory");
    require_exists(c.paths.seed_categories, "seed category file");
    if (c.paths.qa_set)
        require_exists(*c.paths.qa_set, "QA set");
    if (c.mock.enabled)
        require_exists(*c.mock.transcript, "mock transcript");
    return c;
}

RunConfig load_run_config(const fs::path& path, bool force_mock)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_run_config(doc, fs::absolute(path).parent_path(), force_mock);
}

json to_json(const RunConfig& c)
{
    json j;
    j["mock"] = c.mock.enabled;
    if (c.mock.enabled) {
        j["chat_model"] = "transcript";
        j["embed_model"] = "mock-hash-" + std::to_string(c.mock.embedding_dimensions);
    } else {
        j["chat_model"] = c.backend.chat_model;
        j["embed_model"] = c.backend.embed_model;
    }
    j["generation"] = enrich::to_json(c.generation);
    j["retrieval"] = {{"cutoff", c.retrieval.cutoff}, {"k", c.retrieval.k}};
    j["matching"] = {{"low_confidence", c.match_threshold}, {"substitute_threshold", c.substitute_threshold}};
    return j;
}

} // namespace foodkg::app
