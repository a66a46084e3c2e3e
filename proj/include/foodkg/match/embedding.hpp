// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "foodkg/common/error.hpp"

namespace foodkg::match {

struct EmbeddingVector {
    std::vector<double> values;
    std::string model;

    bool operator==(const EmbeddingVector&) const = default;
};

/// Embedding service failed or answered with something unusable.
class EmbedderError : public Error {
public:
    using Error::Error;
};

/// The embedding service could not be reached at all.
class EmbedderUnavailableError : public EmbedderError {
public:
    using EmbedderError::EmbedderError;
};

/// dot(a, b) / (|a| |b|). Throws InvalidArgumentError when the lengths differ
/// or either vector is all zeros.
double cosine(const std::vector<double>& a, const std::vector<double>& b);
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::string model() const = 0;
    /// One vector per text, in input order.
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;

    EmbeddingVector embed_one(const std::string& text);
};

/// Offline embedder for tests and mock runs. Each lowercase word, singularized,
/// is hashed (FNV-1a) into one of `dimensions` buckets and counted. Vectors are
/// not semantic: texts sharing no word are orthogonal, texts sharing words
/// score by overlap. A text with no word embeds to the zero vector.
class HashEmbedder final : public Embedder {
public:
    explicit HashEmbedder(std::size_t dimensions = 1024);

    std::string model() const override;
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

    std::size_t bucket(std::string_view word) const;

private:
    std::size_t dimensions_;
};

/// HTTP embedding client. Sends {"model", "input": [texts]} and accepts an
/// "embeddings" list, a single "embedding", or OpenAI-style "data[].embedding".
class HttpEmbedder final : public Embedder {
public:
    HttpEmbedder(std::string url, std::string model, std::size_t batch_size = 64,
                 std::chrono::seconds timeout = std::chrono::seconds(120));

    std::string model() const override { return model_; }
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

private:
    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts);

    std::string url_;
    std::string model_;
    std::size_t batch_size_;
    std::chrono::seconds timeout_;
};

} // namespace foodkg::match
