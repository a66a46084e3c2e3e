// SPDX-License-Identifier: Apache-2.0

// Chat backend that answers every task from hand-written answer sheets. It
// stands in for the model when the fixture transcripts are recorded.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foodkg/common/io.hpp"
#include "foodkg/common/text.hpp"
#include "foodkg/enrich/backend.hpp"
#include "foodkg/enrich/prompts.hpp"
#include "foodkg/graphrag/evaluate.hpp"
#include "support/fixtures.hpp"

namespace foodkg::testing {

inline const char* kUnsureAnswer = "I could not find that in the supplied facts.";

/// answers.json covers translation, splitting, labelling and tagging;
/// qa_script.json maps each question to {"plan", "answer", "wrong_answer"?}.
/// A synthesis request gets the scripted answer only when the expected text
/// of the question occurs in one of the supplied facts. With `perturbed`,
/// questions that have a wrong_answer get it instead.
class ScriptedResponder : public enrich::LlmBackend {
public:
    ScriptedResponder(const enrich::PromptPack& prompts, bool perturbed = false)
        : prompts_(prompts), perturbed_(perturbed)
    {
        answers_ = nlohmann::json::parse(read_file(corpus_dir() / "answers.json"));
        script_ = nlohmann::json::parse(read_file(corpus_dir() / "qa_script.json"));
        for (const auto& item : graphrag::load_qa_set(corpus_dir() / "qa.jsonl"))
            expected_[item.question] = item.expected;
        for (const auto& r : nlohmann::json::parse(read_file(corpus_dir() / "recipes.json")))
            if (r.is_object() && r.contains("id") && r.contains("name"))
                translation_key_[r.at("name").get<std::string>()] = r.at("id").get<std::string>();
    }

    std::string complete(const std::vector<enrich::ChatMessage>& messages, const enrich::GenerationConfig&) override
    {
        const auto task = prompts_.task_for(messages.front().content);
        if (!task)
            throw enrich::BackendError("scripted responder: unknown system prompt");
        const auto user = nlohmann::json::parse(messages.back().content);
        switch (*task) {
        case enrich::Task::translation:
            return lookup("translations", translation_key_.at(user.at("name").get<std::string>())).dump();
        case enrich::Task::splitting:
            return lookup("splits", user.at("line").get<std::string>()).dump();
        case enrich::Task::allergens:
            return nlohmann::json{{"allergens", ingredient(user)["allergens"]}}.dump();
        case enrich::Task::sfp:
            return nlohmann::json{{"sfp", ingredient(user)["sfp"]}}.dump();
        case enrich::Task::diets:
            return nlohmann::json{{"diets", ingredient(user)["diets"]}}.dump();
        case enrich::Task::tagging:
            return lookup("tags", user.at("name").get<std::string>()).dump();
        case enrich::Task::query_plan:
            return question(user).at("plan").dump();
        case enrich::Task::synthesis:
            return synthesis(user);
        }
        throw enrich::BackendError("scripted responder: unhandled task");
    }

private:
    nlohmann::json lookup(const char* section, const std::string& key) const
    {
        const auto& s = answers_.at(section);
        if (!s.contains(key))
            throw enrich::BackendError(std::string("scripted responder: no ") + section + " answer for '" + key + "'");
        return s.at(key);
    }

    nlohmann::json ingredient(const nlohmann::json& user) const
    {
        return lookup("ingredients", user.at("ingredient").get<std::string>());
    }

    const nlohmann::json& question(const nlohmann::json& user) const
    {
        const auto q = user.at("question").get<std::string>();
        if (!script_.contains(q))
            throw enrich::BackendError("scripted responder: no script for question '" + q + "'");
        return script_.at(q);
    }

    std::string synthesis(const nlohmann::json& user) const
    {
        const auto& entry = question(user);
        const auto q = user.at("question").get<std::string>();
        const auto it = expected_.find(q);
        bool grounded = false;
        if (it != expected_.end())
            for (const auto& f : user.at("facts"))
                grounded = grounded || text::to_lower(f.get<std::string>()).find(text::to_lower(it->second)) !=
                                           std::string::npos;
        if (!grounded)
            return kUnsureAnswer;
        if (perturbed_ && entry.contains("wrong_answer"))
            return entry.at("wrong_answer").get<std::string>();
        return entry.at("answer").get<std::string>();
    }

    const enrich::PromptPack& prompts_;
    bool perturbed_;
    nlohmann::json answers_;
    nlohmann::json script_;
    std::map<std::string, std::string> expected_;
    std::map<std::string, std::string> translation_key_;
};

} // namespace foodkg::testing
