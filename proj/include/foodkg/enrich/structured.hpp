// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/enrich/backend.hpp"

namespace foodkg::enrich {

enum class FieldType { string, number, integer, boolean, string_list, integer_list };

struct FieldSpec {
    std::string name;
    FieldType type = FieldType::string;
    bool required = true;
    /// Scalars only: JSON null is accepted and kept as null.
    bool nullable = false;
    /// Closed vocabulary for string fields and string list items, compared
    /// after trimming and lowercasing. Empty means any string.
    std::vector<std::string> allowed;
    /// Inclusive bounds for integer fields and integer list items.
    std::optional<std::pair<long, long>> range;
    /// Lists only: drop repeated items, keeping the first.
    bool unique = true;
};

/// Describes the JSON object a task must answer with.
///
/// Reading is lenient: unknown keys are dropped, missing optional fields are
/// defaulted (null for scalars, [] for lists), numbers given as numeric
/// strings are accepted, vocabulary strings are lowercased and empty list
/// strings are dropped.
struct Schema {
    std::string name;
    std::vector<FieldSpec> fields;
    /// Cross-field rule run on the cleaned object; returns an error message
    /// or an empty string.
    std::function<std::string(const nlohmann::json&)> check;

    /// The cleaned value, or an explanation of the first violation.
    struct Outcome {
        nlohmann::json value;
        std::string error;
        bool ok() const { return error.empty(); }
    };
    Outcome validate(const nlohmann::json& value) const;
};

/// The reply could not be coerced into the schema after every retry.
class SchemaViolationError : public Error {
public:
    SchemaViolationError(const std::string& message, std::string raw)
        : Error(message), raw_(std::move(raw))
    {
    }
    /// The last raw reply.
    const std::string& raw() const { return raw_; }

private:
    std::string raw_;
};

/// The first balanced {...} object in a reply, skipping code fences and
/// prose around it; nullopt when there is none or it does not parse.
std::optional<nlohmann::json> extract_json_object(std::string_view reply);

/// Sends system + user, validates the reply against `schema`, and on failure
/// resends with the bad reply and a corrective user message appended, up to
/// config.max_retries extra times. Backend errors propagate unchanged.
nlohmann::json complete_structured(LlmBackend& backend, const std::string& system_prompt,
                                   const std::string& user_prompt, const Schema& schema,
                                   const GenerationConfig& config);

} // namespace foodkg::enrich
