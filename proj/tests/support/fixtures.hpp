// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "foodkg/common/text.hpp"
#include "foodkg/ingest/tables.hpp"
#include "foodkg/match/embedding.hpp"

namespace foodkg::testing {

inline std::filesystem::path fixture_dir()
{
    return FOODKG_FIXTURE_DIR;
}

inline std::filesystem::path corpus_dir()
{
    return fixture_dir() / "corpus";
}

struct FixtureTables {
    ingest::NutrientTable swiss;
    ingest::NutrientTable usda;
    ingest::GITable gi;
    ingest::SubstitutionTable substitutions;
};

inline FixtureTables load_fixture_tables()
{
    return {ingest::load_nutrient_db(corpus_dir() / "swiss.csv", ingest::NutrientSource::swiss),
            ingest::load_nutrient_db(corpus_dir() / "usda.csv", ingest::NutrientSource::usda),
            ingest::load_gi_table(corpus_dir() / "gi.csv"),
            ingest::load_substitutions(corpus_dir() / "substitutions.csv")};
}

// Copy of `table` without rows whose normalized name equals that of `name`.
inline ingest::NutrientTable without(ingest::NutrientTable table, const std::string& name)
{
    const auto key = text::normalize_name(name);
    std::erase_if(table.entries, [&](const auto& e) { return text::normalize_name(e.name) == key; });
    return table;
}

// Embedder with hand-built vectors; unknown texts are an error.
class FixedEmbedder : public match::Embedder {
public:
    explicit FixedEmbedder(std::map<std::string, std::vector<double>> vectors, std::string model = "fixed")
        : vectors_(std::move(vectors)), model_(std::move(model))
    {
    }

    std::string model() const override { return model_; }

    std::vector<match::EmbeddingVector> embed(const std::vector<std::string>& texts) override
    {
        std::vector<match::EmbeddingVector> out;
        for (const auto& t : texts) {
            const auto it = vectors_.find(t);
            if (it == vectors_.end())
                throw match::EmbedderError("no vector for '" + t + "'");
            out.push_back({it->second, model_});
        }
        return out;
    }

private:
    std::map<std::string, std::vector<double>> vectors_;
    std::string model_;
};

} // namespace foodkg::testing
