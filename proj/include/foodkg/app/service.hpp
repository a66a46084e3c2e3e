// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/graphrag/answer.hpp"
#include "foodkg/kg/graph.hpp"
#include "foodkg/kg/seed.hpp"

namespace httplib {
class Server;
}

namespace foodkg::app {

struct HttpResponse {
    int status = 200;
    nlohmann::json body;
};

/// Query of /v1/recipes. Every listed condition must hold.
struct RecipeFilter {
    /// Diet ids the recipe must be suitable for.
    std::vector<std::string> diets;
    /// Allergen numbers none of the recipe's ingredients may carry.
    std::vector<int> exclude_allergens;
    std::vector<std::string> seasons;
    /// Cuisine names, compared case-insensitively.
    std::vector<std::string> cuisines;
};

/// Recipes passing the filter, in node id order.
std::vector<kg::Node> filter_recipes(const kg::Graph& graph, const RecipeFilter& filter);

/// Read-only JSON API over a snapshot and its fact index. Handlers are
/// plain functions of the request so they can be tested without a socket;
/// mount() binds them to an httplib server.
///
///   POST /v1/ask {"question"}      -> {"answer", "facts", "zero_retrieval", ...}
///   GET  /v1/graph/stats           -> node and edge counts
///   GET  /v1/graph/node/{id}       -> node with neighbors grouped by edge kind
///   GET  /v1/recipes?diet=&exclude_allergen=&season=&cuisine=
///   GET  /v1/health
class Service {
public:
    Service(const graphrag::QaPipeline& pipeline, const kg::SeedCatalog& catalog);

    HttpResponse ask(const std::string& request_body) const;
    HttpResponse stats() const;
    HttpResponse node(const std::string& id) const;
    /// Parameters as (name, value) pairs; names may repeat.
    HttpResponse recipes(const std::vector<std::pair<std::string, std::string>>& params) const;
    HttpResponse health() const;

    void mount(httplib::Server& server) const;

private:
    const graphrag::QaPipeline& pipeline_;
    const kg::SeedCatalog& catalog_;
};

/// Blocks serving on host:port until the server is stopped. Throws Error
/// when the port cannot be bound.
void serve(const Service& service, const std::string& host, int port);

} // namespace foodkg::app
