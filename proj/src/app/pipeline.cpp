// SPDX-License-Identifier: Apache-2.0

#include "foodkg/app/pipeline.hpp"

#include "foodkg/app/graph_builder.hpp"
#include "foodkg/common/hash.hpp"
#include "foodkg/common/io.hpp"
#include "foodkg/common/log.hpp"
#include "foodkg/enrich/runner.hpp"
#include "foodkg/ingest/tables.hpp"
#include "foodkg/kg/snapshot.hpp"
#include "foodkg/match/embedding.hpp"

namespace foodkg::app {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(Stage stage)
{
    switch (stage) {
    case Stage::ingest: return "ingest";
    case Stage::enrich: return "enrich";
    case Stage::match: return "match";
    case Stage::build_graph: return "build-graph";
    case Stage::embed_index: return "embed-index";
    }
    return "?";
}

StageError::StageError(Stage stage, const std::string& cause, bool backend_unreachable)
    : Error("stage '" + std::string(to_string(stage)) + "' failed: " + cause), stage_(stage),
      backend_unreachable_(backend_unreachable)
{
}

const fs::path& Artifacts::of(Stage stage) const
{
    switch (stage) {
    case Stage::ingest: return ingest;
    case Stage::enrich: return enrich;
    case Stage::match: return match;
    case Stage::build_graph: return snapshot;
    case Stage::embed_index: return index;
    }
    return run_report;
}

Artifacts artifacts_for(const RunConfig& config)
{
    const auto& dir = config.paths.work_dir;
    return Artifacts{dir / "ingest.json",   dir / "enrich.json",     dir / "match.json",
                     config.paths.snapshot, config.paths.index,      dir / "run_report.json",
                     dir / "eval_report.json"};
}

namespace {

std::unique_ptr<enrich::LlmBackend> make_chat(const RunConfig& c)
{
    if (c.mock.enabled)
        return std::make_unique<enrich::TranscriptBackend>(*c.mock.transcript);
    return std::make_unique<enrich::HttpChatBackend>(c.backend.chat_url, c.backend.chat_model, c.backend.timeout);
}

std::unique_ptr<match::Embedder> make_embedder(const RunConfig& c)
{
    if (c.mock.enabled)
        return std::make_unique<match::HashEmbedder>(c.mock.embedding_dimensions);
    return std::make_unique<match::HttpEmbedder>(c.backend.embed_url, c.backend.embed_model, 64, c.backend.timeout);
}

} // namespace

Runtime::Runtime(RunConfig config) : Runtime(config, nullptr, nullptr)
{
}

Runtime::Runtime(RunConfig config, std::unique_ptr<enrich::LlmBackend> chat, std::unique_ptr<match::Embedder> embedder)
    : config_(std::move(config)), artifacts_(artifacts_for(config_))
{
    try {
        catalog_ = kg::load_seed_catalog(config_.paths.seed_categories);
        prompts_ = enrich::PromptPack::load(config_.paths.prompts, catalog_);
        chat_ = chat ? std::move(chat) : make_chat(config_);
        embedder_ = embedder ? std::move(embedder) : make_embedder(config_);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

void to_json(json& j, const IngestArtifact& a)
{
    j = json{{"records", a.record_count},
             {"rejected", a.rejected},
             {"duplicates_removed", a.duplicates_removed},
             {"recipes", a.recipes}};
}

void from_json(const json& j, IngestArtifact& a)
{
    a.record_count = j.at("records").get<std::size_t>();
    a.duplicates_removed = j.at("duplicates_removed").get<std::size_t>();
    a.recipes = j.at("recipes").get<std::vector<ingest::RawRecipe>>();
    a.rejected.clear();
    for (const auto& r : j.at("rejected")) {
        ingest::Rejection rej;
        rej.index = r.at("index").get<std::size_t>();
        rej.label = r.value("label", "");
        rej.detail = r.value("detail", "");
        const auto reason = r.at("reason").get<std::string>();
        for (const auto candidate : {ingest::RejectReason::invalid_ingredients,
                                     ingest::RejectReason::missing_instructions, ingest::RejectReason::malformed})
            if (ingest::to_string(candidate) == reason)
                rej.reason = candidate;
        a.rejected.push_back(std::move(rej));
    }
}

json load_run_report(const Artifacts& artifacts)
{
    if (!fs::exists(artifacts.run_report))
        return json::object();
    try {
        return json::parse(read_file(artifacts.run_report));
    } catch (const json::exception&) {
        logger()->warn("ignoring unreadable run report {}", artifacts.run_report.string());
        return json::object();
    }
}

namespace {

json read_artifact(const fs::path& path, Stage needed_by, Stage producer)
{
    if (!fs::exists(path))
        throw StageError(needed_by,
                         "missing artifact " + path.string() + "; run '" + std::string(to_string(producer)) + "' first",
                         false);
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw StageError(needed_by, "unreadable artifact " + path.string() + ": " + e.what(), false);
    }
}

void write_json(const fs::path& path, const json& j)
{
    fs::create_directories(path.parent_path());
    write_file_atomic(path, j.dump(1) + "\n");
}

json skipped_rows(const std::vector<ingest::SkippedRow>& rows)
{
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"line", r.line}, {"reason", r.reason}});
    return out;
}

json input_checksums(const RunConfig& c)
{
    return json{{"corpus", sha256_hex(read_file(c.paths.corpus))},
                {"swiss_db", sha256_hex(read_file(c.paths.swiss_db))},
                {"usda_db", sha256_hex(read_file(c.paths.usda_db))},
                {"gi_table", sha256_hex(read_file(c.paths.gi_table))},
                {"substitutions", sha256_hex(read_file(c.paths.substitutions))}};
}

json stage_ingest(Runtime& rt)
{
    const auto parsed = ingest::parse_recipe_corpus(rt.config().paths.corpus);
    IngestArtifact a;
    a.record_count = parsed.record_count;
    a.rejected = parsed.rejected;
    a.recipes = ingest::dedupe(parsed.recipes);
    a.duplicates_removed = parsed.recipes.size() - a.recipes.size();
    write_json(rt.artifacts().ingest, a);
    return json{{"records", a.record_count},
                {"kept", a.recipes.size()},
                {"rejected", a.rejected.size()},
                {"rejections", a.rejected},
                {"duplicates_removed", a.duplicates_removed}};
}

json stage_enrich(Runtime& rt)
{
    const auto in = read_artifact(rt.artifacts().ingest, Stage::enrich, Stage::ingest).get<IngestArtifact>();
    enrich::TaskContext ctx{rt.chat(), rt.prompts(), rt.catalog(), rt.config().generation};
    const auto result = enrich::enrich_corpus(in.recipes, ctx, rt.config().backend.max_in_flight);
    write_json(rt.artifacts().enrich, result);
    json report = result.report;
    report["prompts_sha256"] = rt.prompts().checksum();
    return report;
}

json stage_match(Runtime& rt)
{
    const auto enriched =
        read_artifact(rt.artifacts().enrich, Stage::match, Stage::enrich).get<enrich::EnrichmentResult>();
    const auto& paths = rt.config().paths;
    const auto swiss = ingest::load_nutrient_db(paths.swiss_db, ingest::NutrientSource::swiss);
    const auto usda = ingest::load_nutrient_db(paths.usda_db, ingest::NutrientSource::usda);
    const auto gi_table = ingest::load_gi_table(paths.gi_table);
    const match::NutrientMatcher nutrients(swiss, usda, rt.embedder(), rt.config().match_threshold);
    const match::GiMatcher gi(gi_table, rt.embedder(), rt.config().match_threshold);
    const auto result = match_ingredients(enriched.ingredients, nutrients, gi);
    write_json(rt.artifacts().match, result);
    auto report = match_report(result);
    report["skipped_rows"] = {{"swiss_db", skipped_rows(swiss.skipped)},
                              {"usda_db", skipped_rows(usda.skipped)},
                              {"gi_table", skipped_rows(gi_table.skipped)}};
    return report;
}

json stage_build_graph(Runtime& rt)
{
    const auto enriched =
        read_artifact(rt.artifacts().enrich, Stage::build_graph, Stage::enrich).get<enrich::EnrichmentResult>();
    const auto matches = read_artifact(rt.artifacts().match, Stage::build_graph, Stage::match).get<MatchStageResult>();
    const auto subs = ingest::load_substitutions(rt.config().paths.substitutions);
    const auto built = build_graph(enriched, matches, rt.catalog(), subs.entries, rt.embedder(),
                                   rt.config().substitute_threshold);
    fs::create_directories(rt.artifacts().snapshot.parent_path());
    kg::export_snapshot(built.graph, rt.artifacts().snapshot);
    auto report = to_json(built.report);
    report["substitution_rows_skipped"] = skipped_rows(subs.skipped);
    return report;
}

json stage_embed_index(Runtime& rt)
{
    if (!fs::exists(rt.artifacts().snapshot))
        throw StageError(Stage::embed_index,
                         "missing artifact " + rt.artifacts().snapshot.string() + "; run 'build-graph' first", false);
    const auto graph = kg::import_snapshot(rt.artifacts().snapshot);
    const auto index = graphrag::FactIndex::build(graph, rt.embedder());
    fs::create_directories(rt.artifacts().index.parent_path());
    index.save(rt.artifacts().index);
    return json{{"facts", index.size()}, {"model", index.model()}, {"version", graphrag::kFactIndexVersion}};
}

json dispatch(Stage stage, Runtime& rt)
{
    switch (stage) {
    case Stage::ingest: return stage_ingest(rt);
    case Stage::enrich: return stage_enrich(rt);
    case Stage::match: return stage_match(rt);
    case Stage::build_graph: return stage_build_graph(rt);
    case Stage::embed_index: return stage_embed_index(rt);
    }
    return {};
}

void record(Runtime& rt, json& report, Stage stage, json stage_report)
{
    report["config"] = to_json(rt.config());
    report["inputs"] = input_checksums(rt.config());
    report["stages"][std::string(to_string(stage))] = std::move(stage_report);
    write_json(rt.artifacts().run_report, report);
}

} // namespace

json run_stage(Stage stage, Runtime& rt)
{
    json stage_report;
    try {
        logger()->info("stage {} started", to_string(stage));
        stage_report = dispatch(stage, rt);
    } catch (const StageError&) {
        throw;
    } catch (const enrich::BackendUnavailableError& e) {
        throw StageError(stage, e.what(), true);
    } catch (const match::EmbedderUnavailableError& e) {
        throw StageError(stage, e.what(), true);
    } catch (const std::exception& e) {
        throw StageError(stage, e.what(), false);
    }
    auto report = load_run_report(rt.artifacts());
    record(rt, report, stage, stage_report);
    logger()->info("stage {} finished", to_string(stage));
    return stage_report;
}

json run_pipeline(Runtime& rt, bool resume)
{
    if (!resume && fs::exists(rt.artifacts().run_report))
        fs::remove(rt.artifacts().run_report);
    for (const auto stage : kStages) {
        if (resume && fs::exists(rt.artifacts().of(stage))) {
            logger()->info("stage {} skipped, artifact {} exists", to_string(stage), rt.artifacts().of(stage).string());
            auto report = load_run_report(rt.artifacts());
            if (!report.contains("stages") || !report["stages"].contains(std::string(to_string(stage))))
                record(rt, report, stage, json{{"resumed", true}});
            continue;
        }
        run_stage(stage, rt);
    }
    return load_run_report(rt.artifacts());
}

ServingState load_serving_state(Runtime& rt)
{
    const auto& a = rt.artifacts();
    if (!fs::exists(a.snapshot))
        throw NotFoundError("graph snapshot " + a.snapshot.string() + " not found; run 'build-graph' first");
    if (!fs::exists(a.index))
        throw NotFoundError("fact index " + a.index.string() + " not found; run 'embed-index' first");
    ServingState state{kg::import_snapshot(a.snapshot),
                       graphrag::FactIndex::load(a.index, rt.embedder().model())};
    state.index.verify(state.graph);
    return state;
}

graphrag::QaPipeline make_qa_pipeline(Runtime& rt, const ServingState& state)
{
    return graphrag::QaPipeline{state.graph,    state.index,           rt.embedder(),           rt.chat(),
                                rt.prompts(),   rt.config().generation, rt.config().retrieval};
}

graphrag::EvaluationReport run_evaluation(Runtime& rt, const ServingState& state,
                                          const std::vector<graphrag::QAItem>& items)
{
    const auto report = graphrag::evaluate(items, make_qa_pipeline(rt, state));
    fs::create_directories(rt.artifacts().eval_report.parent_path());
    write_file_atomic(rt.artifacts().eval_report, graphrag::report_to_string(report));
    return report;
}

} // namespace foodkg::app
