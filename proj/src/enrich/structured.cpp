// SPDX-License-Identifier: Apache-2.0

#include "foodkg/enrich/structured.hpp"

#include <algorithm>
#include <charconv>

#include "foodkg/common/text.hpp"
#include "foodkg/ingest/quantity.hpp"

namespace foodkg::enrich {

using nlohmann::json;

namespace {

struct FieldError {
    std::string message;
};

std::optional<long> as_integer(const json& v)
{
    if (v.is_number_integer())
        return v.get<long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == static_cast<double>(static_cast<long>(d)))
            return static_cast<long>(d);
        return std::nullopt;
    }
    if (v.is_string()) {
        const std::string s = text::trim(v.get<std::string>());
        long out = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec == std::errc() && end == s.data() + s.size() && !s.empty())
            return out;
    }
    return std::nullopt;
}

std::string vocabulary_text(const FieldSpec& f)
{
    std::string out;
    for (std::size_t i = 0; i < f.allowed.size() && i < 30; ++i)
        out += (i ? ", " : "") + f.allowed[i];
    if (f.allowed.size() > 30)
        out += ", ...";
    return out;
}

json clean_string(const FieldSpec& f, const json& v, const std::string& where)
{
    if (!v.is_string())
        throw FieldError{where + " must be a string"};
    if (f.allowed.empty())
        return text::trim(v.get<std::string>());
    const std::string s = text::to_lower(text::trim(v.get<std::string>()));
    if (std::find(f.allowed.begin(), f.allowed.end(), s) == f.allowed.end())
        throw FieldError{where + " value '" + s + "' is not one of: " + vocabulary_text(f)};
    return s;
}

json clean_integer(const FieldSpec& f, const json& v, const std::string& where)
{
    const auto n = as_integer(v);
    if (!n)
        throw FieldError{where + " must be an integer"};
    if (f.range && (*n < f.range->first || *n > f.range->second))
        throw FieldError{where + " value " + std::to_string(*n) + " is outside " + std::to_string(f.range->first) +
                         ".." + std::to_string(f.range->second)};
    return *n;
}

json clean_field(const FieldSpec& f, const json& v)
{
    const std::string where = "field '" + f.name + "'";
    if (v.is_null()) {
        if (f.type == FieldType::string_list || f.type == FieldType::integer_list)
            return json::array();
        if (f.nullable)
            return nullptr;
        throw FieldError{where + " must not be null"};
    }
    switch (f.type) {
    case FieldType::string:
        return clean_string(f, v, where);
    case FieldType::integer:
        return clean_integer(f, v, where);
    case FieldType::number:
        if (v.is_number())
            return v.get<double>();
        if (v.is_string())
            if (const auto q = ingest::parse_quantity(v.get<std::string>()))
                return *q;
        throw FieldError{where + " must be a number"};
    case FieldType::boolean:
        if (!v.is_boolean())
            throw FieldError{where + " must be true or false"};
        return v;
    case FieldType::string_list:
    case FieldType::integer_list: {
        const json items = v.is_array() ? v : json::array({v});
        json out = json::array();
        for (const auto& item : items) {
            json cleaned = f.type == FieldType::string_list ? clean_string(f, item, where + " item")
                                                            : clean_integer(f, item, where + " item");
            if (f.type == FieldType::string_list && cleaned.get<std::string>().empty())
                continue;
            if (!f.unique || std::find(out.begin(), out.end(), cleaned) == out.end())
                out.push_back(std::move(cleaned));
        }
        return out;
    }
    }
    return nullptr;
}

} // namespace

Schema::Outcome Schema::validate(const json& value) const
{
    if (!value.is_object())
        return {nullptr, "reply must be a JSON object"};
    json out = json::object();
    try {
        for (const auto& f : fields) {
            const auto it = value.find(f.name);
            if (it == value.end()) {
                if (f.required)
                    throw FieldError{"missing field '" + f.name + "'"};
                out[f.name] = clean_field(f, nullptr);
                continue;
            }
            out[f.name] = clean_field(f, *it);
        }
    } catch (const FieldError& e) {
        return {nullptr, e.message};
    }
    if (check) {
        std::string problem = check(out);
        if (!problem.empty())
            return {nullptr, std::move(problem)};
    }
    return {out, {}};
}

std::optional<json> extract_json_object(std::string_view reply)
{
    for (std::size_t start = reply.find('{'); start != std::string_view::npos; start = reply.find('{', start + 1)) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = start; i < reply.size(); ++i) {
            const char c = reply[i];
            if (in_string) {
                if (escaped)
                    escaped = false;
                else if (c == '\\')
                    escaped = true;
                else if (c == '"')
                    in_string = false;
                continue;
            }
            if (c == '"') {
                in_string = true;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}' && --depth == 0) {
                try {
                    return json::parse(reply.substr(start, i - start + 1));
                } catch (const json::parse_error&) {
                    break;
                }
            }
        }
    }
    return std::nullopt;
}

json complete_structured(LlmBackend& backend, const std::string& system_prompt, const std::string& user_prompt,
                         const Schema& schema, const GenerationConfig& config)
{
    std::vector<ChatMessage> messages{{"system", system_prompt}, {"user", user_prompt}};
    std::string raw;
    std::string problem;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        raw = backend.complete(messages, config);
        const auto parsed = extract_json_object(raw);
        if (!parsed) {
            problem = "reply contains no JSON object";
        } else {
            auto outcome = schema.validate(*parsed);
            if (outcome.ok())
                return std::move(outcome.value);
            problem = outcome.error;
        }
        messages.push_back({"assistant", raw});
        messages.push_back({"user", "Your previous reply was invalid: " + problem +
                                        ". Answer again with only the JSON object in the required format."});
    }
    throw SchemaViolationError(schema.name + " reply rejected after " + std::to_string(config.max_retries + 1) +
                                   " attempts: " + problem,
                               raw);
}

} // namespace foodkg::enrich
