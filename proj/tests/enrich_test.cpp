// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <httplib.h>

#include <filesystem>
#include <random>
#include <thread>

#include "foodkg/common/io.hpp"
#include "foodkg/common/parallel.hpp"
#include "foodkg/enrich/backend.hpp"
#include "foodkg/enrich/prompts.hpp"
#include "foodkg/enrich/runner.hpp"
#include "foodkg/enrich/structured.hpp"
#include "foodkg/enrich/tasks.hpp"
#include "support/fake_backend.hpp"

namespace fe = foodkg::enrich;
namespace fk = foodkg::kg;
using foodkg::testing::FunctionBackend;
using nlohmann::json;

namespace {

const fk::SeedCatalog& catalog()
{
    static const fk::SeedCatalog c = fk::default_seed_catalog();
    return c;
}

const fe::PromptPack& prompts()
{
    static const fe::PromptPack p = fe::PromptPack::load(fe::default_prompt_dir(), catalog());
    return p;
}

json user_json(const std::vector<fe::ChatMessage>& messages)
{
    return json::parse(messages.at(1).content);
}

fe::Task task_of(const std::vector<fe::ChatMessage>& messages)
{
    return prompts().task_for(messages.at(0).content).value();
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / name;
}

fe::Schema number_schema()
{
    fe::FieldSpec f;
    f.name = "n";
    f.type = fe::FieldType::integer;
    f.range = {1, 3};
    return fe::Schema{"numbers", {f}, {}};
}

} // namespace

TEST(GenerationConfig, DefaultsAreDeterministic)
{
    const fe::GenerationConfig c;
    EXPECT_EQ(c.temperature, 0.0);
    EXPECT_EQ(c.context_window, 4096);
    EXPECT_EQ(c.top_p, 0.0);
    EXPECT_EQ(c.top_k, 1);
    EXPECT_FALSE(c.thinking);
    EXPECT_EQ(c.max_retries, 2);
}

TEST(GenerationConfig, Overrides)
{
    const auto c = fe::apply_overrides({}, json{{"seed", 7}, {"max_retries", 0}});
    EXPECT_EQ(c.seed, 7);
    EXPECT_EQ(c.max_retries, 0);
    EXPECT_EQ(c.context_window, 4096);
    EXPECT_THROW(fe::apply_overrides({}, json{{"temprature", 1}}), foodkg::InvalidArgumentError);
    EXPECT_THROW(fe::apply_overrides({}, json{{"seed", "x"}}), foodkg::InvalidArgumentError);
    EXPECT_THROW(fe::apply_overrides({}, json{{"max_retries", -1}}), foodkg::InvalidArgumentError);
}

TEST(RequestHash, DependsOnMessagesAndOptions)
{
    const std::vector<fe::ChatMessage> m{{"system", "s"}, {"user", "u"}};
    fe::GenerationConfig c;
    const auto h = fe::request_hash(m, c);
    EXPECT_EQ(h.size(), 64u);
    EXPECT_EQ(h, fe::request_hash(m, c));
    c.seed = 1;
    EXPECT_NE(h, fe::request_hash(m, c));
    EXPECT_NE(h, fe::request_hash({{"system", "s"}, {"user", "v"}}, fe::GenerationConfig{}));
    // Retry budget is client-side and does not change the request.
    fe::GenerationConfig r;
    r.max_retries = 5;
    EXPECT_EQ(h, fe::request_hash(m, r));
}

TEST(HttpChatBackend, SendsOllamaRequestAndReadsBothReplyShapes)
{
    httplib::Server server;
    json seen;
    server.Post("/api/chat", [&](const httplib::Request& req, httplib::Response& res) {
        seen = json::parse(req.body);
        res.set_content(json{{"message", {{"role", "assistant"}, {"content", "hello"}}}}.dump(), "application/json");
    });
    server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        res.set_content(json{{"choices", {{{"message", {{"content", "hi"}}}}}}}.dump(), "application/json");
    });
    server.Post("/broken", [&](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    const std::string base = "http://127.0.0.1:" + std::to_string(port);

    fe::HttpChatBackend ollama(base + "/api/chat", "gemma3:27b");
    EXPECT_EQ(ollama.complete({{"system", "s"}, {"user", "u"}}, {}), "hello");
    EXPECT_EQ(seen["model"], "gemma3:27b");
    EXPECT_EQ(seen["stream"], false);
    EXPECT_EQ(seen["think"], false);
    EXPECT_EQ(seen["options"]["temperature"], 0.0);
    EXPECT_EQ(seen["options"]["num_ctx"], 4096);
    EXPECT_EQ(seen["options"]["top_k"], 1);
    EXPECT_EQ(seen["messages"][1]["content"], "u");

    fe::HttpChatBackend openai(base + "/v1/chat/completions", "m");
    EXPECT_EQ(openai.complete({{"user", "u"}}, {}), "hi");
    fe::HttpChatBackend broken(base + "/broken", "m");
    EXPECT_THROW(broken.complete({{"user", "u"}}, {}), fe::BackendError);
    server.stop();
    thread.join();

    fe::HttpChatBackend down("http://127.0.0.1:1/api/chat", "m");
    EXPECT_THROW(down.complete({{"user", "u"}}, {}), fe::BackendUnavailableError);
}

TEST(Transcript, RecordThenReplay)
{
    FunctionBackend echo([](const std::vector<fe::ChatMessage>& m) { return "re: " + m.back().content; });
    fe::RecordingBackend recorder(echo);
    const std::vector<fe::ChatMessage> a{{"system", "sys\nmore"}, {"user", "one"}};
    const std::vector<fe::ChatMessage> b{{"system", "sys"}, {"user", "two"}};
    recorder.complete(a, {});
    recorder.complete(b, {});
    recorder.complete(a, {});
    const auto path = temp_path("foodkg_transcript.jsonl");
    recorder.save(path);

    const std::string text = foodkg::read_file(path);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    const auto first = json::parse(text.substr(0, text.find('\n')));
    EXPECT_LT(first["hash"].get<std::string>(), json::parse(text.substr(text.find('\n') + 1))["hash"].get<std::string>());

    fe::TranscriptBackend replay(path);
    EXPECT_EQ(replay.size(), 2u);
    EXPECT_EQ(replay.complete(a, {}), "re: one");
    EXPECT_EQ(replay.complete(b, {}), "re: two");
    EXPECT_THROW(replay.complete({{"user", "three"}}, {}), fe::BackendError);
    std::filesystem::remove(path);
}

TEST(Transcript, MalformedLineIsAParseError)
{
    const auto path = temp_path("foodkg_bad_transcript.jsonl");
    foodkg::write_file_atomic(path, "{\"hash\": \"x\"}\n");
    EXPECT_THROW(fe::TranscriptBackend{path}, foodkg::ParseError);
    std::filesystem::remove(path);
}

TEST(Structured, ExtractsObjectFromNoisyReply)
{
    EXPECT_EQ(fe::extract_json_object("```json\n{\"a\": \"}\"}\n```"), (json{{"a", "}"}}));
    EXPECT_EQ(fe::extract_json_object("Sure! {bad} then {\"b\": [1, {\"c\": 2}]} done"),
              (json{{"b", {1, {{"c", 2}}}}}));
    EXPECT_FALSE(fe::extract_json_object("no object here"));
}

TEST(Structured, ValidPayloadParses)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>&) { return R"({"n": 2})"; });
    EXPECT_EQ(fe::complete_structured(backend, "s", "u", number_schema(), {}), (json{{"n", 2}}));
    EXPECT_EQ(backend.calls, 1);
}

TEST(Structured, UnknownFieldsDroppedAndStringsCoerced)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>&) { return R"({"n": "3", "reasoning": "because"})"; });
    EXPECT_EQ(fe::complete_structured(backend, "s", "u", number_schema(), {}), (json{{"n", 3}}));
}

TEST(Structured, ProseRetriesWithCorrectionThenSucceeds)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>& m) { return m.size() == 2 ? "I think it is two." : R"({"n": 2})"; });
    EXPECT_EQ(fe::complete_structured(backend, "s", "u", number_schema(), {}), (json{{"n", 2}}));
    EXPECT_EQ(backend.calls, 2);
    const auto last = backend.last();
    ASSERT_EQ(last.size(), 4u);
    EXPECT_EQ(last[2].role, "assistant");
    EXPECT_EQ(last[2].content, "I think it is two.");
    EXPECT_EQ(last[3].role, "user");
    EXPECT_NE(last[3].content.find("no JSON object"), std::string::npos);
}

TEST(Structured, PersistentViolationCarriesRawText)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>&) { return "just prose"; });
    try {
        fe::complete_structured(backend, "s", "u", number_schema(), {});
        FAIL() << "expected SchemaViolationError";
    } catch (const fe::SchemaViolationError& e) {
        EXPECT_EQ(e.raw(), "just prose");
    }
    EXPECT_EQ(backend.calls, 3);
}

TEST(Structured, OutOfRangeRejected)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>&) { return R"({"n": 15})"; });
    fe::GenerationConfig config;
    config.max_retries = 1;
    EXPECT_THROW(fe::complete_structured(backend, "s", "u", number_schema(), config), fe::SchemaViolationError);
    EXPECT_EQ(backend.calls, 2);
}

TEST(Structured, SchemaDefaultsAndVocabulary)
{
    fe::Schema s{"t", {}, {}};
    fe::FieldSpec tags;
    tags.name = "tags";
    tags.type = fe::FieldType::string_list;
    tags.required = false;
    tags.allowed = {"a", "b"};
    fe::FieldSpec note;
    note.name = "note";
    note.required = false;
    note.nullable = true;
    s.fields = {tags, note};
    EXPECT_EQ(s.validate(json::object()).value, (json{{"tags", json::array()}, {"note", nullptr}}));
    EXPECT_EQ(s.validate(json{{"tags", {" A", "b", "a"}}}).value["tags"], (json{"a", "b"}));
    EXPECT_FALSE(s.validate(json{{"tags", {"c"}}}).ok());
    EXPECT_FALSE(s.validate(json::array()).ok());
}

TEST(PromptPack, LoadsRendersAndChecksums)
{
    const auto& p = prompts();
    EXPECT_NE(p.system(fe::Task::allergens).find("7: milk"), std::string::npos);
    EXPECT_EQ(p.system(fe::Task::allergens).find("{{"), std::string::npos);
    EXPECT_NE(p.system(fe::Task::tagging).find("swiss"), std::string::npos);
    EXPECT_EQ(p.checksums().size(), fe::kAllTasks.size());
    EXPECT_EQ(p.checksum().size(), 64u);
    for (const auto task : fe::kAllTasks)
        EXPECT_EQ(p.task_for(p.system(task)), task);
    EXPECT_FALSE(p.task_for("something else"));
}

TEST(PromptPack, MissingFileAndUnknownPlaceholder)
{
    const auto dir = temp_path("foodkg_prompts");
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    EXPECT_THROW(fe::PromptPack::load(dir, catalog()), foodkg::ParseError);
    for (const auto task : fe::kAllTasks)
        foodkg::write_file_atomic(dir / (std::string(fe::to_string(task)) + ".txt"), "plain");
    EXPECT_NO_THROW(fe::PromptPack::load(dir, catalog()));
    foodkg::write_file_atomic(dir / "sfp.txt", "{{nonsense}}");
    EXPECT_THROW(fe::PromptPack::load(dir, catalog()), foodkg::ParseError);
    std::filesystem::remove_all(dir);
}

namespace {

foodkg::ingest::RawRecipe french_recipe(std::size_t steps)
{
    foodkg::ingest::RawRecipe r;
    r.id = "r1";
    r.name = "Tarte aux pommes";
    r.language = foodkg::ingest::Language::fr;
    r.ingredient_lines = {"3 pommes", "200 g de farine"};
    for (std::size_t i = 0; i < steps; ++i)
        r.instructions.push_back("Étape " + std::to_string(i + 1));
    return r;
}

json english_for(const json& input, std::size_t steps)
{
    json out{{"name", "Apple tart"}, {"description", ""}, {"keywords", json::array()}};
    out["ingredient_lines"] = {"3 apples", "200 g flour"};
    out["instructions"] = json::array();
    for (std::size_t i = 0; i < steps; ++i)
        out["instructions"].push_back("Step " + std::to_string(i + 1));
    (void)input;
    return out;
}

} // namespace

TEST(Translate, EnglishIsANoOp)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>&) -> std::string { throw std::logic_error("no call expected"); });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    auto r = french_recipe(2);
    r.language = foodkg::ingest::Language::en;
    EXPECT_EQ(fe::translate_recipe(r, ctx), r);
    EXPECT_EQ(backend.calls, 0);
}

TEST(Translate, PreservesStructure)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>& m) { return english_for(user_json(m), 5).dump(); });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    const auto out = fe::translate_recipe(french_recipe(5), ctx);
    EXPECT_EQ(out.instructions.size(), 5u);
    EXPECT_EQ(out.instructions[4], "Step 5");
    EXPECT_EQ(out.name, "Apple tart");
    EXPECT_EQ(out.language, foodkg::ingest::Language::en);
    EXPECT_EQ(out.id, "r1");
    EXPECT_EQ(task_of(backend.last()), fe::Task::translation);
    EXPECT_EQ(user_json(backend.last())["source_language"], "fr");
}

TEST(Translate, CountMismatchIsAnError)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>& m) { return english_for(user_json(m), 4).dump(); });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    EXPECT_THROW(fe::translate_recipe(french_recipe(5), ctx), fe::StructuralMismatchError);
    EXPECT_EQ(backend.calls, 1);
}

TEST(Split, WorkedExamples)
{
    const std::map<std::string, std::string> replies{
        {"a lemon, zest grated, and 1/2 juiced",
         R"({"name":"Lemon","quantity":1,"unit":null,"notes":"zest grated; ½ juiced","utensils":[]})"},
        {"2 cups flour", R"({"name":"flour","quantity":"2","unit":"cups","notes":null,"utensils":[]})"},
        {"whisk, for beating", R"({"name":null,"quantity":null,"unit":null,"notes":"for beating","utensils":["Whisk"]})"},
        {"3 ripe tomatoes, using a knife", R"({"name":"tomatoes","quantity":3,"notes":"ripe","utensils":["knife"]})"},
        {"1 pot", R"({"name":"pot","quantity":1,"utensils":["pot"]})"},
    };
    FunctionBackend backend([&](const std::vector<fe::ChatMessage>& m) { return replies.at(user_json(m)["line"].get<std::string>()); });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};

    const auto lemon = fe::split_ingredient_line("a lemon, zest grated, and 1/2 juiced", ctx);
    EXPECT_EQ(lemon, (fe::SplitIngredient{"lemon", 1.0, std::nullopt, "zest grated; ½ juiced", {}}));
    const auto flour = fe::split_ingredient_line("2 cups flour", ctx);
    EXPECT_EQ(flour, (fe::SplitIngredient{"flour", 2.0, "cup", "", {}}));
    const auto whisk = fe::split_ingredient_line("whisk, for beating", ctx);
    EXPECT_TRUE(whisk.utensil_only());
    EXPECT_EQ(whisk.utensils, std::vector<std::string>{"whisk"});
    const auto tomato = fe::split_ingredient_line("3 ripe tomatoes, using a knife", ctx);
    EXPECT_EQ(tomato.name, "tomato");
    EXPECT_EQ(tomato.utensils, std::vector<std::string>{"knife"});
    EXPECT_TRUE(fe::split_ingredient_line("1 pot", ctx).utensil_only());
}

TEST(Split, EmptyReplyIsRetried)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>& m) {
        return m.size() == 2 ? std::string(R"({"name":null,"utensils":[]})") : std::string(R"({"name":"salt"})");
    });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    EXPECT_EQ(fe::split_ingredient_line("salt", ctx).name, "salt");
    EXPECT_EQ(backend.calls, 2);
}

TEST(Labels, AllergenExamples)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>& m) {
        const auto name = user_json(m)["ingredient"].get<std::string>();
        if (name == "icing sugar")
            return std::string(R"({"allergens": []})");
        if (name == "wheat flour")
            return std::string(R"({"allergens": [1, "1"]})");
        return std::string(R"({"allergens": [15]})");
    });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    EXPECT_TRUE(fe::map_allergens("icing sugar", ctx).empty());
    EXPECT_EQ(fe::map_allergens("wheat flour", ctx), std::set<int>{1});
    backend.calls = 0;
    EXPECT_THROW(fe::map_allergens("mystery", ctx), fe::SchemaViolationError);
    EXPECT_EQ(backend.calls, 3);
}

TEST(Labels, SfpAndDiets)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>& m) {
        switch (task_of(m)) {
        case fe::Task::sfp:
            return std::string(R"({"sfp": 2})");
        case fe::Task::diets:
            return std::string(R"({"diets": ["vegan", "gluten_free"]})");
        default:
            return std::string(R"({"allergens": []})");
        }
    });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    EXPECT_EQ(fe::map_sfp("carrot", ctx), 2);
    const auto diets = fe::map_diets("carrot", ctx);
    EXPECT_EQ(diets.size(), fk::kDietCount);
    EXPECT_TRUE(diets.at("vegan"));
    EXPECT_TRUE(diets.at("vegetarian"));
    EXPECT_TRUE(diets.at("dairy_free"));
    EXPECT_TRUE(diets.at("lactose_free"));
    EXPECT_TRUE(diets.at("unrestricted"));
    EXPECT_FALSE(diets.at("halal"));
    const auto labels = fe::label_ingredient("carrot", ctx);
    EXPECT_EQ(labels.sfp, 2);
    EXPECT_TRUE(labels.allergens.empty());
}

TEST(Tagging, WorkedExampleAndNoGuessing)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>& m) {
        const auto in = user_json(m);
        if (in["name"] == "Vegan Swiss Summer Breadrolls")
            return std::string(R"({"cuisine":"Swiss","seasons":["summer"],"diets":["vegan"]})");
        return std::string(R"({"cuisine":null,"seasons":[],"diets":[]})");
    });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    foodkg::ingest::RawRecipe r;
    r.name = "Vegan Swiss Summer Breadrolls";
    const auto tags = fe::tag_recipe(r, ctx);
    EXPECT_EQ(tags.cuisine, "swiss");
    EXPECT_EQ(tags.seasons, std::set<std::string>{"summer"});
    EXPECT_TRUE(tags.diets.contains("vegan"));
    EXPECT_TRUE(tags.diets.contains("vegetarian"));
    EXPECT_TRUE(tags.diets.contains("unrestricted"));
    r.name = "Plain stew";
    const auto plain = fe::tag_recipe(r, ctx);
    EXPECT_FALSE(plain.cuisine);
    EXPECT_EQ(plain.diets, std::set<std::string>{"unrestricted"});
}

TEST(Tagging, OutOfVocabularyCuisineRejected)
{
    FunctionBackend backend([](const std::vector<fe::ChatMessage>&) { return R"({"cuisine":"atlantean","seasons":[],"diets":[]})"; });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    EXPECT_THROW(fe::tag_recipe(foodkg::ingest::RawRecipe{}, ctx), fe::SchemaViolationError);
}

TEST(DietPropagation, Intersection)
{
    const auto veg = fe::close_diets({"vegetarian", "gluten_free"}, catalog());
    const auto wheat = fe::close_diets({"vegetarian"}, catalog());
    const auto both = fe::propagate_recipe_diets({veg, veg}, catalog());
    EXPECT_TRUE(both.flags.at("vegetarian"));
    EXPECT_TRUE(both.flags.at("gluten_free"));
    EXPECT_FALSE(both.degenerate);
    const auto mixed = fe::propagate_recipe_diets({veg, wheat}, catalog());
    EXPECT_TRUE(mixed.flags.at("vegetarian"));
    EXPECT_FALSE(mixed.flags.at("gluten_free"));
    EXPECT_TRUE(mixed.flags.at("unrestricted"));
    EXPECT_EQ(mixed.flags.size(), fk::kDietCount);
}

TEST(DietPropagation, EmptyIsVacuouslyTrueAndFlagged)
{
    const auto empty = fe::propagate_recipe_diets({}, catalog());
    EXPECT_TRUE(empty.degenerate);
    for (const auto& [id, on] : empty.flags)
        EXPECT_TRUE(on) << id;
}

TEST(DietPropagation, AddingAnIngredientNeverEnablesARestriction)
{
    std::mt19937 rng(41);
    std::bernoulli_distribution coin(0.6);
    const auto ids = catalog().restriction_ids();
    const auto random_flags = [&] {
        std::set<std::string> on;
        for (const auto& id : ids)
            if (coin(rng))
                on.insert(id);
        return fe::close_diets(on, catalog());
    };
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::map<std::string, bool>> ingredients(trial % 6);
        for (auto& f : ingredients)
            f = random_flags();
        const auto before = fe::propagate_recipe_diets(ingredients, catalog()).flags;
        ingredients.push_back(random_flags());
        const auto after = fe::propagate_recipe_diets(ingredients, catalog()).flags;
        for (const auto& id : ids)
            ASSERT_FALSE(!before.at(id) && after.at(id)) << id;
    }
}

TEST(ClosedVocabulary, FuzzedRepliesNeverLeakLabels)
{
    std::mt19937 rng(43);
    std::mutex rng_mutex;
    const std::vector<std::string> junk{"15", "0", "-3", "vegan", "martian", "\"7\"", "null", "2.5", "[1]", "{}"};
    FunctionBackend backend([&](const std::vector<fe::ChatMessage>& m) {
        std::lock_guard lock(rng_mutex);
        std::uniform_int_distribution<std::size_t> pick(0, junk.size() - 1);
        switch (task_of(m)) {
        case fe::Task::allergens:
            return R"({"allergens": [)" + junk[pick(rng)] + ", " + junk[pick(rng)] + "]}";
        case fe::Task::sfp:
            return R"({"sfp": )" + junk[pick(rng)] + "}";
        case fe::Task::diets:
            return R"({"diets": [")" + std::string(pick(rng) % 2 ? "vegan" : "carnivore") + "\"]}";
        default:
            return std::string("{}");
        }
    });
    fe::TaskContext ctx{backend, prompts(), catalog(), {}};
    int accepted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        try {
            const auto labels = fe::label_ingredient("x", ctx);
            ++accepted;
            for (const int a : labels.allergens)
                ASSERT_TRUE(a >= 1 && a <= 14);
            if (labels.sfp)
                ASSERT_TRUE(*labels.sfp >= 1 && *labels.sfp <= 9);
            for (const auto& [id, on] : labels.diets)
                ASSERT_TRUE(catalog().is_diet(id));
        } catch (const fe::SchemaViolationError&) {
        }
    }
    EXPECT_GT(accepted, 0);
}

TEST(ParallelMap, KeepsOrderBoundsConcurrencyAndPropagatesErrors)
{
    std::vector<int> items(40);
    std::iota(items.begin(), items.end(), 0);
    std::atomic<int> running{0};
    std::atomic<int> peak{0};
    const auto out = foodkg::parallel_map(items, 3, [&](int v) {
        const int now = ++running;
        int seen = peak.load();
        while (now > seen && !peak.compare_exchange_weak(seen, now)) {
        }
        std::this_thread::sleep_for(std::chrono::microseconds(200 + (v % 5) * 100));
        --running;
        return v * v;
    });
    for (int i = 0; i < 40; ++i)
        EXPECT_EQ(out[i], i * i);
    EXPECT_LE(peak.load(), 3);
    EXPECT_THROW(foodkg::parallel_map(items, 4,
                                      [](int v) {
                                          if (v == 7)
                                              throw std::runtime_error("seven");
                                          return v;
                                      }),
                 std::runtime_error);
    EXPECT_TRUE(foodkg::parallel_map(std::vector<int>{}, 4, [](int v) { return v; }).empty());
}

namespace {

std::string scripted_reply(const std::vector<fe::ChatMessage>& m)
{
    const json in = user_json(m);
    switch (task_of(m)) {
    case fe::Task::translation: {
        json out{{"name", "Apple tart"}, {"description", ""}, {"keywords", json::array()}};
        out["ingredient_lines"] = in["ingredient_lines"];
        out["instructions"] = in["instructions"];
        return out.dump();
    }
    case fe::Task::splitting: {
        const std::string line = in["line"];
        if (line.ends_with("spatula"))
            return R"({"name":null,"utensils":["spatula"]})";
        return json{{"name", line.substr(line.find(' ') + 1)}, {"quantity", line.substr(0, line.find(' '))}}.dump();
    }
    case fe::Task::allergens:
        return in["ingredient"] == "butter" ? R"({"allergens":[7]})" : R"({"allergens":[]})";
    case fe::Task::sfp:
        return in["ingredient"] == "butter" ? R"({"sfp":8})" : R"({"sfp":3})";
    case fe::Task::diets:
        return in["ingredient"] == "butter" ? R"({"diets":["vegetarian","diabetic"]})" : R"({"diets":["vegan"]})";
    case fe::Task::tagging:
        return R"({"cuisine":null,"seasons":["autumn"],"diets":[]})";
    default:
        return "{}";
    }
}

} // namespace

TEST(EnrichCorpus, AssemblesRecipesAndIsIndependentOfConcurrency)
{
    std::vector<foodkg::ingest::RawRecipe> recipes;
    for (int i = 0; i < 6; ++i) {
        foodkg::ingest::RawRecipe r;
        r.id = "r" + std::to_string(i);
        r.name = "Dish " + std::to_string(i);
        r.ingredient_lines = {"2 apples", "1 butter", "1 spatula"};
        if (i % 2)
            r.ingredient_lines = {"3 pears"};
        r.instructions = {"Cook."};
        r.utensils = {"oven"};
        if (i == 3)
            r.language = foodkg::ingest::Language::fr;
        recipes.push_back(r);
    }
    FunctionBackend serial_backend(scripted_reply);
    fe::TaskContext serial{serial_backend, prompts(), catalog(), {}};
    const auto a = fe::enrich_corpus(recipes, serial, 1);
    FunctionBackend parallel_backend(scripted_reply);
    fe::TaskContext parallel{parallel_backend, prompts(), catalog(), {}};
    const auto b = fe::enrich_corpus(recipes, parallel, 4);
    EXPECT_EQ(a, b);
    EXPECT_EQ(json(a).dump(), json(b).dump());

    ASSERT_EQ(a.recipes.size(), 6u);
    const auto& r0 = a.recipes[0];
    ASSERT_EQ(r0.ingredients.size(), 2u);
    EXPECT_EQ(r0.ingredients[0].name, "apple");
    EXPECT_EQ(r0.ingredients[0].quantity, 2.0);
    EXPECT_EQ(r0.utensils, (std::vector<std::string>{"oven", "spatula"}));
    EXPECT_TRUE(r0.diets.at("vegetarian"));
    EXPECT_FALSE(r0.diets.at("vegan"));
    EXPECT_TRUE(a.recipes[1].diets.at("vegan"));
    EXPECT_EQ(a.recipes[3].source_language, foodkg::ingest::Language::fr);
    EXPECT_EQ(a.recipes[3].name, "Apple tart");
    EXPECT_EQ(a.ingredients.size(), 3u);
    EXPECT_EQ(a.ingredients.at("butter").allergens, std::set<int>{7});
    EXPECT_EQ(a.report.translated, 1u);
    EXPECT_EQ(a.report.utensil_only_lines, 3u);
    EXPECT_EQ(a.report.low_confidence_diabetic, std::vector<std::string>{"butter"});
    EXPECT_EQ(a.report.recipes_without_cuisine, 6u);

    const json j = a;
    EXPECT_EQ(j.get<fe::EnrichmentResult>(), a);
}
