// SPDX-License-Identifier: Apache-2.0

#include "foodkg/enrich/backend.hpp"

#include <httplib.h>

#include <sstream>

#include "foodkg/common/hash.hpp"
#include "foodkg/common/http.hpp"
#include "foodkg/common/io.hpp"

namespace foodkg::enrich {

using nlohmann::json;

GenerationConfig apply_overrides(GenerationConfig base, const json& overrides)
{
    if (overrides.is_null())
        return base;
    if (!overrides.is_object())
        throw InvalidArgumentError("generation overrides must be an object");
    try {
        for (const auto& [key, value] : overrides.items()) {
            if (key == "temperature")
                base.temperature = value.get<double>();
            else if (key == "seed")
                base.seed = value.get<long>();
            else if (key == "context_window")
                base.context_window = value.get<long>();
            else if (key == "top_p")
                base.top_p = value.get<double>();
            else if (key == "top_k")
                base.top_k = value.get<long>();
            else if (key == "thinking")
                base.thinking = value.get<bool>();
            else if (key == "max_retries")
                base.max_retries = value.get<int>();
            else
                throw InvalidArgumentError("unknown generation setting '" + key + "'");
        }
    } catch (const json::type_error& e) {
        throw InvalidArgumentError(std::string("generation setting has the wrong type: ") + e.what());
    }
    if (base.max_retries < 0 || base.context_window <= 0)
        throw InvalidArgumentError("max_retries must be >= 0 and context_window > 0");
    return base;
}

json to_json(const GenerationConfig& c)
{
    return json{{"temperature", c.temperature}, {"seed", c.seed},   {"context_window", c.context_window},
                {"top_p", c.top_p},             {"top_k", c.top_k}, {"thinking", c.thinking},
                {"max_retries", c.max_retries}};
}

namespace {

json options_json(const GenerationConfig& c)
{
    return json{{"temperature", c.temperature},
                {"seed", c.seed},
                {"top_p", c.top_p},
                {"top_k", c.top_k},
                {"num_ctx", c.context_window}};
}

json messages_json(const std::vector<ChatMessage>& messages)
{
    json out = json::array();
    for (const auto& m : messages)
        out.push_back(json{{"role", m.role}, {"content", m.content}});
    return out;
}

std::string last_with_role(const std::vector<ChatMessage>& messages, std::string_view role)
{
    for (auto it = messages.rbegin(); it != messages.rend(); ++it)
        if (it->role == role)
            return it->content;
    return {};
}

} // namespace

json canonical_request(const std::vector<ChatMessage>& messages, const GenerationConfig& config)
{
    json options = options_json(config);
    options["think"] = config.thinking;
    return json{{"messages", messages_json(messages)}, {"options", options}};
}

std::string request_hash(const std::vector<ChatMessage>& messages, const GenerationConfig& config)
{
    return sha256_hex(canonical_request(messages, config).dump());
}

HttpChatBackend::HttpChatBackend(std::string url, std::string model, std::chrono::seconds timeout)
    : url_(std::move(url)), model_(std::move(model)), timeout_(timeout)
{
    parse_http_endpoint(url_);
}

std::string HttpChatBackend::complete(const std::vector<ChatMessage>& messages, const GenerationConfig& config)
{
    const auto ep = parse_http_endpoint(url_);
    httplib::Client client(ep.origin);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(timeout_);
    const json body{{"model", model_},
                    {"messages", messages_json(messages)},
                    {"options", options_json(config)},
                    {"stream", false},
                    {"think", config.thinking}};
    const auto res = client.Post(ep.path, body.dump(), "application/json");
    if (!res)
        throw BackendUnavailableError("chat backend unreachable at " + url_ + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw BackendError("chat backend returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    try {
        const json reply = json::parse(res->body);
        if (reply.contains("message"))
            return reply.at("message").at("content").get<std::string>();
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw BackendError(std::string("unreadable chat response: ") + e.what());
    }
}

TranscriptBackend::TranscriptBackend(const std::filesystem::path& path)
{
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            const json j = json::parse(line);
            replies_[j.at("hash").get<std::string>()] = j.at("response").get<std::string>();
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

TranscriptBackend::TranscriptBackend(std::map<std::string, std::string> replies) : replies_(std::move(replies)) {}

std::string TranscriptBackend::complete(const std::vector<ChatMessage>& messages, const GenerationConfig& config)
{
    const std::string hash = request_hash(messages, config);
    const auto it = replies_.find(hash);
    if (it == replies_.end())
        throw BackendError("no transcript entry for request " + hash);
    return it->second;
}

std::string RecordingBackend::complete(const std::vector<ChatMessage>& messages, const GenerationConfig& config)
{
    std::string reply = inner_.complete(messages, config);
    const std::string hash = request_hash(messages, config);
    std::lock_guard lock(mutex_);
    entries_[hash] = Entry{reply, last_with_role(messages, "system"), last_with_role(messages, "user")};
    return reply;
}

std::string RecordingBackend::transcript() const
{
    std::lock_guard lock(mutex_);
    std::string out;
    for (const auto& [hash, e] : entries_) {
        out += json{{"hash", hash}, {"response", e.response}, {"system", e.system.substr(0, e.system.find('\n'))},
                    {"user", e.user}}
                   .dump();
        out += '\n';
    }
    return out;
}

void RecordingBackend::save(const std::filesystem::path& path) const
{
    write_file_atomic(path, transcript());
}

} // namespace foodkg::enrich
