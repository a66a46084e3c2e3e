// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/common/error.hpp"

namespace foodkg::enrich {

/// Sampling settings sent with every chat request. The defaults pin
/// generation down to a single deterministic path.
struct GenerationConfig {
    double temperature = 0.0;
    long seed = 42;
    long context_window = 4096;
    double top_p = 0.0;
    long top_k = 1;
    bool thinking = false;
    /// Extra attempts after an invalid structured reply.
    int max_retries = 2;

    bool operator==(const GenerationConfig&) const = default;
};

/// Applies the keys present in `overrides` (temperature, seed,
/// context_window, top_p, top_k, thinking, max_retries); unknown keys throw
/// InvalidArgumentError.
GenerationConfig apply_overrides(GenerationConfig base, const nlohmann::json& overrides);
nlohmann::json to_json(const GenerationConfig& config);

struct ChatMessage {
    std::string role;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

/// The backend could not be reached at all (connection refused, timeout).
class BackendUnavailableError : public Error {
public:
    using Error::Error;
};

/// The backend answered, but not usefully (HTTP error, unreadable body,
/// missing transcript entry).
class BackendError : public Error {
public:
    using Error::Error;
};

class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    /// Returns the assistant message text. Implementations must be safe to
    /// call from several threads at once.
    virtual std::string complete(const std::vector<ChatMessage>& messages, const GenerationConfig& config) = 0;
};

/// {"messages": [...], "options": {...}} with sorted keys, the identity of a
/// request independent of model and endpoint.
nlohmann::json canonical_request(const std::vector<ChatMessage>& messages, const GenerationConfig& config);
std::string request_hash(const std::vector<ChatMessage>& messages, const GenerationConfig& config);

/// Chat-completion client for Ollama-style servers.
///
/// Request:  POST <url>  {"model", "messages": [{"role", "content"}],
///           "options": {"temperature", "seed", "top_p", "top_k", "num_ctx"},
///           "stream": false, "think": false}
/// Response: {"message": {"content": "..."}} or, OpenAI style,
///           {"choices": [{"message": {"content": "..."}}]}
class HttpChatBackend : public LlmBackend {
public:
    HttpChatBackend(std::string url, std::string model, std::chrono::seconds timeout = std::chrono::seconds(300));
    std::string complete(const std::vector<ChatMessage>& messages, const GenerationConfig& config) override;

private:
    std::string url_;
    std::string model_;
    std::chrono::seconds timeout_;
};

/// Replays recorded replies. The transcript is JSON lines of
/// {"hash": request_hash, "response": "...", ...}; other keys are ignored.
/// An unknown request throws BackendError naming the hash.
class TranscriptBackend : public LlmBackend {
public:
    explicit TranscriptBackend(const std::filesystem::path& path);
    explicit TranscriptBackend(std::map<std::string, std::string> replies);
    std::string complete(const std::vector<ChatMessage>& messages, const GenerationConfig& config) override;
    std::size_t size() const { return replies_.size(); }

private:
    std::map<std::string, std::string> replies_;
};

/// Forwards to another backend and remembers every exchange so it can be
/// written out as a transcript.
class RecordingBackend : public LlmBackend {
public:
    explicit RecordingBackend(LlmBackend& inner) : inner_(inner) {}
    std::string complete(const std::vector<ChatMessage>& messages, const GenerationConfig& config) override;
    /// Transcript lines sorted by hash, each {"hash", "response", "system",
    /// "user"} with the last user message for readability.
    std::string transcript() const;
    void save(const std::filesystem::path& path) const;

private:
    struct Entry {
        std::string response;
        std::string system;
        std::string user;
    };
    LlmBackend& inner_;
    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

} // namespace foodkg::enrich
