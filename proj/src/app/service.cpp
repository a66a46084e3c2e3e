// SPDX-License-Identifier: Apache-2.0

#include "foodkg/app/service.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include <httplib.h>

#include "foodkg/app/graph_builder.hpp"
#include "foodkg/common/log.hpp"
#include "foodkg/common/text.hpp"
#include "foodkg/kg/snapshot.hpp"

namespace foodkg::app {

using nlohmann::json;

namespace {

HttpResponse error(int status, const std::string& message)
{
    return {status, json{{"error", message}}};
}

json node_ref(const kg::Node& n)
{
    return json{{"id", n.id.value}, {"kind", kg::to_string(n.kind)}, {"name", n.name}, {"key", n.key}};
}

/// Far ends of `id`'s out edges of `kind`.
std::set<kg::NodeId> targets(const kg::Graph& graph, kg::NodeId id, kg::EdgeKind kind)
{
    std::set<kg::NodeId> out;
    for (const auto& n : graph.neighbors(id, kind, kg::Direction::Out))
        out.insert(n.node.id);
    return out;
}

std::optional<int> parse_int(const std::string& s)
{
    int value = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size())
        return std::nullopt;
    return value;
}

} // namespace

std::vector<kg::Node> filter_recipes(const kg::Graph& graph, const RecipeFilter& filter)
{
    std::vector<kg::Node> out;
    for (const auto& recipe : graph.nodes(kg::NodeKind::Recipe)) {
        const auto diets = targets(graph, recipe.id, kg::EdgeKind::IsSuitableFor);
        const auto seasons = targets(graph, recipe.id, kg::EdgeKind::IsForSeason);
        const auto cuisines = targets(graph, recipe.id, kg::EdgeKind::IsPartOf);
        const auto has = [&](const std::set<kg::NodeId>& ids, kg::NodeKind kind, const std::string& key) {
            const auto id = graph.find_node(kind, key);
            return id && ids.contains(*id);
        };
        bool ok = std::all_of(filter.diets.begin(), filter.diets.end(),
                              [&](const auto& d) { return has(diets, kg::NodeKind::DietRestriction, d); }) &&
                  std::all_of(filter.seasons.begin(), filter.seasons.end(),
                              [&](const auto& s) { return has(seasons, kg::NodeKind::Season, s); }) &&
                  std::all_of(filter.cuisines.begin(), filter.cuisines.end(),
                              [&](const auto& c) { return has(cuisines, kg::NodeKind::Cuisine, c); });
        if (ok && !filter.exclude_allergens.empty()) {
            std::set<kg::NodeId> excluded;
            for (const int a : filter.exclude_allergens)
                if (const auto id = graph.find_node(kg::NodeKind::AllergenCategory, std::to_string(a)))
                    excluded.insert(*id);
            for (const auto& ing : graph.neighbors(recipe.id, kg::EdgeKind::Contains, kg::Direction::Out)) {
                for (const auto& a : targets(graph, ing.node.id, kg::EdgeKind::AllergenOf))
                    ok = ok && !excluded.contains(a);
            }
        }
        if (ok)
            out.push_back(recipe);
    }
    return out;
}

Service::Service(const graphrag::QaPipeline& pipeline, const kg::SeedCatalog& catalog)
    : pipeline_(pipeline), catalog_(catalog)
{
}

HttpResponse Service::ask(const std::string& request_body) const
{
    std::string question;
    try {
        const auto body = json::parse(request_body);
        question = body.at("question").get<std::string>();
    } catch (const json::exception&) {
        return error(400, "request body must be a JSON object with a string 'question'");
    }
    if (text::trim(question).empty())
        return error(400, "question is empty");
    try {
        return {200, json(graphrag::answer_question(question, pipeline_))};
    } catch (const Error& e) {
        logger()->error("ask failed: {}", e.what());
        return error(502, e.what());
    }
}

HttpResponse Service::stats() const
{
    return {200, stats_to_json(pipeline_.graph.stats())};
}

HttpResponse Service::node(const std::string& id) const
{
    const auto value = parse_int(id);
    if (!value || *value < 0)
        return error(400, "node id must be a non-negative integer");
    const kg::NodeId nid{static_cast<std::uint32_t>(*value)};
    kg::Node n;
    try {
        n = pipeline_.graph.node(nid);
    } catch (const NotFoundError&) {
        return error(404, "no node " + id);
    }
    json grouped = json::object();
    for (const auto& nb : pipeline_.graph.neighbors(nid, std::nullopt, kg::Direction::Both)) {
        const bool out = nb.edge.src == nid;
        grouped[std::string(kg::to_string(nb.edge.kind))].push_back(
            {{"edge", nb.edge.id.value},
             {"direction", out ? "out" : "in"},
             {"node", node_ref(nb.node)},
             {"props", kg::props_to_json(nb.edge.props)}});
    }
    auto body = node_ref(n);
    body["props"] = kg::props_to_json(n.props);
    body["neighbors"] = std::move(grouped);
    return {200, body};
}

HttpResponse Service::recipes(const std::vector<std::pair<std::string, std::string>>& params) const
{
    RecipeFilter filter;
    for (const auto& [name, value] : params) {
        if (name == "diet") {
            if (!catalog_.is_diet(value))
                return error(400, "unknown diet '" + value + "'");
            filter.diets.push_back(value);
        } else if (name == "exclude_allergen") {
            const auto a = parse_int(value);
            const bool known = a && std::any_of(catalog_.allergens.begin(), catalog_.allergens.end(),
                                                [&](const auto& c) { return c.id == *a; });
            if (!known)
                return error(400, "unknown allergen category '" + value + "'");
            filter.exclude_allergens.push_back(*a);
        } else if (name == "season") {
            if (!catalog_.is_season(value))
                return error(400, "unknown season '" + value + "'");
            filter.seasons.push_back(value);
        } else if (name == "cuisine") {
            filter.cuisines.push_back(value);
        } else {
            return error(400, "unknown parameter '" + name + "'");
        }
    }
    json list = json::array();
    for (const auto& r : filter_recipes(pipeline_.graph, filter))
        list.push_back({{"id", r.id.value}, {"key", r.key}, {"name", r.name}});
    const auto count = list.size();
    return {200, json{{"recipes", std::move(list)}, {"count", count}}};
}

HttpResponse Service::health() const
{
    return {200, json{{"status", "ok"},
                      {"nodes", pipeline_.graph.node_count()},
                      {"edges", pipeline_.graph.edge_count()},
                      {"facts", pipeline_.index.size()},
                      {"embedding_model", pipeline_.index.model()}}};
}

namespace {

void reply(httplib::Response& res, const HttpResponse& r)
{
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

} // namespace

void Service::mount(httplib::Server& server) const
{
    server.Post("/v1/ask", [this](const httplib::Request& req, httplib::Response& res) { reply(res, ask(req.body)); });
    server.Get("/v1/graph/stats", [this](const httplib::Request&, httplib::Response& res) { reply(res, stats()); });
    server.Get(R"(/v1/graph/node/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        reply(res, node(req.matches[1].str()));
    });
    server.Get("/v1/recipes", [this](const httplib::Request& req, httplib::Response& res) {
        std::vector<std::pair<std::string, std::string>> params(req.params.begin(), req.params.end());
        reply(res, recipes(params));
    });
    server.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) { reply(res, health()); });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty())
            res.set_content(json{{"error", "HTTP " + std::to_string(res.status)}}.dump(), "application/json");
    });
}

void serve(const Service& service, const std::string& host, int port)
{
    httplib::Server server;
    service.mount(server);
    if (!server.bind_to_port(host, port))
        throw Error("cannot listen on " + host + ":" + std::to_string(port));
    logger()->info("serving on http://{}:{}", host, port);
    server.listen_after_bind();
}

} // namespace foodkg::app
