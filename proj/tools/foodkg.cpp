// SPDX-License-Identifier: Apache-2.0

// Command line front end: pipeline stages, question answering, evaluation
// and the HTTP service.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "foodkg/app/config.hpp"
#include "foodkg/app/graph_builder.hpp"
#include "foodkg/app/pipeline.hpp"
#include "foodkg/app/service.hpp"
#include "foodkg/common/log.hpp"
#include "foodkg/kg/snapshot.hpp"

namespace {

using nlohmann::json;
using namespace foodkg;

enum ExitCode { kOk = 0, kConfigError = 2, kStageFailure = 3, kBackendUnreachable = 4 };

void print(const json& j)
{
    std::cout << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Food knowledge graph pipeline and question answering"};
    cli.require_subcommand(1);
    std::string config_path = "foodkg.json";
    bool mock = false;
    bool verbose = false;
    cli.add_option("--config", config_path, "Run config file")->capture_default_str();
    cli.add_flag("--mock", mock, "Use the recorded transcript and the hash embedder");
    cli.add_flag("-v,--verbose", verbose, "Log debug output");

    auto* ingest = cli.add_subcommand("ingest", "Parse and deduplicate the recipe corpus");
    auto* enrich = cli.add_subcommand("enrich", "Translate, split and label recipes");
    auto* build = cli.add_subcommand("build-graph", "Match ingredients and assemble the graph snapshot");
    auto* embed = cli.add_subcommand("embed-index", "Embed every graph fact into the fact index");
    auto* run = cli.add_subcommand("run", "Run all stages in order");
    bool resume = false;
    run->add_flag("--resume", resume, "Skip stages whose artifact already exists");
    auto* ask = cli.add_subcommand("ask", "Answer one question from the graph");
    std::string question;
    ask->add_option("question", question, "Question text")->required();
    auto* eval = cli.add_subcommand("eval", "Score a QA set by containment accuracy");
    std::string qa_file;
    eval->add_option("--qa", qa_file, "QA set, one {question, expected} per line");
    auto* serve = cli.add_subcommand("serve", "Serve the JSON API");
    int port = 8080;
    std::string host = "127.0.0.1";
    serve->add_option("--port", port, "Port")->capture_default_str()->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "Address to bind")->capture_default_str();
    auto* stats = cli.add_subcommand("stats", "Print node and edge counts of the snapshot");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? kOk : kConfigError;
    }
    if (verbose)
        logger()->set_level(spdlog::level::debug);

    std::optional<app::Runtime> runtime;
    try {
        runtime.emplace(app::load_run_config(config_path, mock));
    } catch (const app::ConfigError& e) {
        logger()->error("config error: {}", e.what());
        return kConfigError;
    }
    auto& rt = *runtime;

    try {
        if (ingest->parsed()) {
            print(app::run_stage(app::Stage::ingest, rt));
        } else if (enrich->parsed()) {
            print(app::run_stage(app::Stage::enrich, rt));
        } else if (build->parsed()) {
            json out;
            out["match"] = app::run_stage(app::Stage::match, rt);
            out["build-graph"] = app::run_stage(app::Stage::build_graph, rt);
            print(out);
        } else if (embed->parsed()) {
            print(app::run_stage(app::Stage::embed_index, rt));
        } else if (run->parsed()) {
            print(app::run_pipeline(rt, resume));
        } else if (ask->parsed()) {
            const auto state = app::load_serving_state(rt);
            print(json(graphrag::answer_question(question, app::make_qa_pipeline(rt, state))));
        } else if (eval->parsed()) {
            std::filesystem::path path;
            if (!qa_file.empty())
                path = qa_file;
            else if (rt.config().paths.qa_set)
                path = *rt.config().paths.qa_set;
            else {
                logger()->error("config error: no QA set given (--qa or paths.qa_set)");
                return kConfigError;
            }
            if (!std::filesystem::exists(path)) {
                logger()->error("config error: QA set not found: {}", path.string());
                return kConfigError;
            }
            const auto state = app::load_serving_state(rt);
            const auto report = app::run_evaluation(rt, state, graphrag::load_qa_set(path));
            print(json(report)["aggregate"]);
        } else if (serve->parsed()) {
            const auto state = app::load_serving_state(rt);
            const auto pipeline = app::make_qa_pipeline(rt, state);
            const app::Service service(pipeline, rt.catalog());
            app::serve(service, host, port);
        } else if (stats->parsed()) {
            print(app::stats_to_json(kg::import_snapshot(rt.artifacts().snapshot).stats()));
        }
    } catch (const app::StageError& e) {
        logger()->error("{}", e.what());
        return e.backend_unreachable() ? kBackendUnreachable : kStageFailure;
    } catch (const enrich::BackendUnavailableError& e) {
        logger()->error("{}", e.what());
        return kBackendUnreachable;
    } catch (const match::EmbedderUnavailableError& e) {
        logger()->error("{}", e.what());
        return kBackendUnreachable;
    } catch (const std::exception& e) {
        logger()->error("{}", e.what());
        return kStageFailure;
    }
    return kOk;
}
