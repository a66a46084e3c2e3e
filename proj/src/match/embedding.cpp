// SPDX-License-Identifier: Apache-2.0

#include "foodkg/match/embedding.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "foodkg/common/http.hpp"
#include "foodkg/common/text.hpp"

namespace foodkg::match {

using nlohmann::json;

double cosine(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size())
        throw InvalidArgumentError("cosine of vectors with lengths " + std::to_string(a.size()) + " and " +
                                   std::to_string(b.size()));
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        throw InvalidArgumentError("cosine of a zero vector");
    // One square root of the product keeps cosine(v, v) at exactly 1 for
    // integer-valued vectors.
    return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b)
{
    if (a.model != b.model)
        throw InvalidArgumentError("cosine across embedding models '" + a.model + "' and '" + b.model + "'");
    return cosine(a.values, b.values);
}

EmbeddingVector Embedder::embed_one(const std::string& text)
{
    auto out = embed({text});
    if (out.size() != 1)
        throw EmbedderError("embedder returned " + std::to_string(out.size()) + " vectors for one text");
    return std::move(out.front());
}

HashEmbedder::HashEmbedder(std::size_t dimensions) : dimensions_(dimensions)
{
    if (dimensions_ == 0)
        throw InvalidArgumentError("hash embedder needs at least one dimension");
}

std::string HashEmbedder::model() const
{
    return "mock-hash-" + std::to_string(dimensions_);
}

std::size_t HashEmbedder::bucket(std::string_view word) const
{
    std::uint64_t h = 14695981039346656037ULL;
    for (const char c : word) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h % dimensions_);
}

std::vector<EmbeddingVector> HashEmbedder::embed(const std::vector<std::string>& texts)
{
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        EmbeddingVector v{std::vector<double>(dimensions_, 0.0), model()};
        for (const auto& word : text::tokenize_words(text))
            v.values[bucket(text::singularize_word(word))] += 1.0;
        out.push_back(std::move(v));
    }
    return out;
}

HttpEmbedder::HttpEmbedder(std::string url, std::string model, std::size_t batch_size, std::chrono::seconds timeout)
    : url_(std::move(url)), model_(std::move(model)), batch_size_(std::max<std::size_t>(batch_size, 1)),
      timeout_(timeout)
{
    parse_http_endpoint(url_);
}

std::vector<EmbeddingVector> HttpEmbedder::embed(const std::vector<std::string>& texts)
{
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (std::size_t start = 0; start < texts.size(); start += batch_size_) {
        const auto end = std::min(texts.size(), start + batch_size_);
        auto part = embed_batch({texts.begin() + static_cast<std::ptrdiff_t>(start),
                                 texts.begin() + static_cast<std::ptrdiff_t>(end)});
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

namespace {

std::vector<double> read_vector(const json& j)
{
    auto v = j.get<std::vector<double>>();
    if (v.empty())
        throw EmbedderError("embedding service returned an empty vector");
    return v;
}

} // namespace

std::vector<EmbeddingVector> HttpEmbedder::embed_batch(const std::vector<std::string>& texts)
{
    const auto ep = parse_http_endpoint(url_);
    httplib::Client client(ep.origin);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(timeout_);
    const json body{{"model", model_}, {"input", texts}};
    const auto res = client.Post(ep.path, body.dump(), "application/json");
    if (!res)
        throw EmbedderUnavailableError("embedding service unreachable at " + url_ + ": " +
                                       httplib::to_string(res.error()));
    if (res->status != 200)
        throw EmbedderError("embedding service returned HTTP " + std::to_string(res->status));

    std::vector<std::vector<double>> vectors;
    try {
        const json reply = json::parse(res->body);
        if (reply.contains("embeddings")) {
            for (const auto& v : reply.at("embeddings"))
                vectors.push_back(read_vector(v));
        } else if (reply.contains("embedding")) {
            vectors.push_back(read_vector(reply.at("embedding")));
        } else {
            for (const auto& item : reply.at("data"))
                vectors.push_back(read_vector(item.at("embedding")));
        }
    } catch (const json::exception& e) {
        throw EmbedderError(std::string("unreadable embedding response: ") + e.what());
    }
    if (vectors.size() != texts.size())
        throw EmbedderError("embedding service returned " + std::to_string(vectors.size()) + " vectors for " +
                            std::to_string(texts.size()) + " inputs");
    std::vector<EmbeddingVector> out;
    const auto dims = vectors.empty() ? 0 : vectors.front().size();
    for (auto& v : vectors) {
        if (v.size() != dims)
            throw EmbedderError("embedding service returned vectors of different lengths");
        out.push_back({std::move(v), model_});
    }
    return out;
}

} // namespace foodkg::match
