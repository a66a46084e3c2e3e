// SPDX-License-Identifier: Apache-2.0

#include "foodkg/graphrag/fact_index.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "foodkg/common/io.hpp"
#include "foodkg/kg/fact.hpp"

namespace foodkg::graphrag {

using nlohmann::json;

namespace {

std::string key_of(kg::EdgeId edge)
{
    return "e" + std::to_string(edge.value);
}

} // namespace

FactIndex FactIndex::build(const kg::Graph& graph, match::Embedder& embedder)
{
    const auto edges = graph.edges();
    if (edges.empty())
        throw InvalidArgumentError("cannot index a graph without edges");
    FactIndex index;
    for (const auto& e : edges) {
        index.edges_.push_back(e.id);
        index.texts_.push_back(kg::serialize_fact(graph, e.id));
    }
    auto vectors = embedder.embed(index.texts_);
    if (vectors.size() != index.texts_.size())
        throw match::EmbedderError("embedder returned " + std::to_string(vectors.size()) + " vectors for " +
                                   std::to_string(index.texts_.size()) + " facts");
    index.vectors_ = match::VectorIndex(embedder.model(), vectors.front().values.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        index.vectors_.add(key_of(index.edges_[i]), std::move(vectors[i]));
    return index;
}

std::optional<std::size_t> FactIndex::position(kg::EdgeId edge) const
{
    return vectors_.find(key_of(edge));
}

std::vector<double> FactIndex::scores(const match::EmbeddingVector& query) const
{
    if (query.model != model())
        throw StaleIndexError("question embedded with '" + query.model + "' but the fact index was built with '" +
                              model() + "'");
    return vectors_.scores(query);
}

void FactIndex::verify(const kg::Graph& graph) const
{
    const auto edges = graph.edges();
    if (edges.size() != edges_.size())
        throw StaleIndexError("fact index holds " + std::to_string(edges_.size()) + " facts but the graph has " +
                              std::to_string(edges.size()) + " edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].id != edges_[i] || kg::serialize_fact(graph, edges[i].id) != texts_[i])
            throw StaleIndexError("fact index is out of date at edge " + std::to_string(edges[i].id.value));
    }
}

std::string FactIndex::to_string() const
{
    std::string out = json{{"format", "foodkg-fact-index"},
                           {"version", kFactIndexVersion},
                           {"model", model()},
                           {"dimensions", vectors_.dimensions()},
                           {"facts", size()}}
                          .dump();
    out += '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        out += json{{"edge", edges_[i].value}, {"text", texts_[i]}, {"vector", vectors_.values(i)}}.dump();
        out += '\n';
    }
    return out;
}

FactIndex FactIndex::from_string(std::string_view data, const std::optional<std::string>& expected_model)
{
    std::istringstream in{std::string(data)};
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("fact index is empty");
    FactIndex index;
    std::size_t expected_facts = 0;
    try {
        const json header = json::parse(line);
        if (header.at("format") != "foodkg-fact-index")
            throw ParseError("not a fact index file");
        if (header.at("version") != kFactIndexVersion)
            throw ParseError("fact index version " + header.at("version").dump() + " is not supported");
        const auto model = header.at("model").get<std::string>();
        if (expected_model && model != *expected_model)
            throw StaleIndexError("fact index was built with embedder '" + model + "', configured embedder is '" +
                                  *expected_model + "'; rebuild the index");
        index.vectors_ = match::VectorIndex(model, header.at("dimensions").get<std::size_t>());
        expected_facts = header.at("facts").get<std::size_t>();
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty())
                continue;
            const json rec = json::parse(line);
            const kg::EdgeId edge{rec.at("edge").get<std::uint32_t>()};
            index.edges_.push_back(edge);
            index.texts_.push_back(rec.at("text").get<std::string>());
            index.vectors_.add(key_of(edge), {rec.at("vector").get<std::vector<double>>(), model});
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed fact index: ") + e.what());
    } catch (const InvalidArgumentError& e) {
        throw ParseError(std::string("malformed fact index: ") + e.what());
    }
    if (index.size() != expected_facts)
        throw ParseError("fact index header announces " + std::to_string(expected_facts) + " facts, file has " +
                         std::to_string(index.size()));
    return index;
}

void FactIndex::save(const std::filesystem::path& path) const
{
    write_file_atomic(path, to_string());
}

FactIndex FactIndex::load(const std::filesystem::path& path, const std::optional<std::string>& expected_model)
{
    return from_string(read_file(path), expected_model);
}

} // namespace foodkg::graphrag
