// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "foodkg/kg/seed.hpp"

namespace foodkg::enrich {

enum class Task { translation, splitting, allergens, sfp, diets, tagging, query_plan, synthesis };

inline constexpr std::array<Task, 8> kAllTasks{Task::translation, Task::splitting, Task::allergens,
                                               Task::sfp,         Task::diets,     Task::tagging,
                                               Task::query_plan,  Task::synthesis};

/// File stem of the task's prompt ("translation", "query_plan", ...).
std::string_view to_string(Task task);

/// System prompts, one text file per task (<task>.txt) in a directory.
///
/// Files may reference the seeded vocabularies with {{allergen_categories}},
/// {{sfp_categories}}, {{diet_categories}}, {{seasons}} and {{cuisines}};
/// these are expanded from the catalog at load time. Checksums are taken
/// over the raw file bytes so a run report pins the exact prompt text.
class PromptPack {
public:
    /// Throws ParseError when a task file is missing or a placeholder is
    /// unknown.
    static PromptPack load(const std::filesystem::path& dir, const kg::SeedCatalog& catalog);

    const std::string& system(Task task) const;
    /// Task whose rendered system prompt equals `system_prompt`, if any.
    std::optional<Task> task_for(std::string_view system_prompt) const;

    /// sha256 of each raw file, keyed by task name.
    const std::map<std::string, std::string>& checksums() const { return checksums_; }
    /// sha256 over the sorted "name sha" lines.
    std::string checksum() const;

private:
    std::map<Task, std::string> rendered_;
    std::map<std::string, std::string> checksums_;
};

std::filesystem::path default_prompt_dir();

} // namespace foodkg::enrich
