// SPDX-License-Identifier: Apache-2.0

#include "foodkg/enrich/prompts.hpp"

#include "foodkg/common/error.hpp"
#include "foodkg/common/hash.hpp"
#include "foodkg/common/io.hpp"
#include "foodkg/common/text.hpp"

namespace foodkg::enrich {

std::string_view to_string(Task task)
{
    switch (task) {
    case Task::translation:
        return "translation";
    case Task::splitting:
        return "splitting";
    case Task::allergens:
        return "allergens";
    case Task::sfp:
        return "sfp";
    case Task::diets:
        return "diets";
    case Task::tagging:
        return "tagging";
    case Task::query_plan:
        return "query_plan";
    case Task::synthesis:
        return "synthesis";
    }
    return "translation";
}

namespace {

std::map<std::string, std::string> placeholders(const kg::SeedCatalog& catalog)
{
    std::map<std::string, std::string> out;
    std::string allergens;
    for (const auto& a : catalog.allergens)
        allergens += std::to_string(a.id) + ": " + a.name + "\n";
    std::string sfp;
    for (const auto& s : catalog.sfp_categories)
        sfp += std::to_string(s.id) + ": " + s.name + "\n";
    std::string diets;
    for (const auto& d : catalog.diets)
        diets += d.id + " (" + d.name + ")\n";
    out["allergen_categories"] = allergens;
    out["sfp_categories"] = sfp;
    out["diet_categories"] = diets;
    out["seasons"] = text::join(catalog.seasons, ", ");
    out["cuisines"] = text::join(catalog.cuisines, ", ");
    for (auto& [k, v] : out)
        if (v.ends_with('\n'))
            v.pop_back();
    return out;
}

std::string render(const std::string& raw, const std::map<std::string, std::string>& values, Task task)
{
    std::string out;
    std::size_t pos = 0;
    while (true) {
        const auto open = raw.find("{{", pos);
        if (open == std::string::npos) {
            out.append(raw, pos);
            return out;
        }
        const auto close = raw.find("}}", open);
        if (close == std::string::npos)
            throw ParseError("prompt '" + std::string(to_string(task)) + "' has an unclosed placeholder");
        const std::string key = raw.substr(open + 2, close - open - 2);
        const auto it = values.find(key);
        if (it == values.end())
            throw ParseError("prompt '" + std::string(to_string(task)) + "' uses unknown placeholder '" + key + "'");
        out.append(raw, pos, open - pos);
        out += it->second;
        pos = close + 2;
    }
}

} // namespace

PromptPack PromptPack::load(const std::filesystem::path& dir, const kg::SeedCatalog& catalog)
{
    PromptPack pack;
    const auto values = placeholders(catalog);
    for (const Task task : kAllTasks) {
        const auto path = dir / (std::string(to_string(task)) + ".txt");
        const std::string raw = read_file(path);
        pack.checksums_[std::string(to_string(task))] = sha256_hex(raw);
        pack.rendered_[task] = render(raw, values, task);
    }
    return pack;
}

const std::string& PromptPack::system(Task task) const
{
    return rendered_.at(task);
}

std::optional<Task> PromptPack::task_for(std::string_view system_prompt) const
{
    for (const auto& [task, text] : rendered_)
        if (text == system_prompt)
            return task;
    return std::nullopt;
}

std::string PromptPack::checksum() const
{
    std::string lines;
    for (const auto& [name, sha] : checksums_)
        lines += name + " " + sha + "\n";
    return sha256_hex(lines);
}

std::filesystem::path default_prompt_dir()
{
    return kg::default_data_dir() / "prompts";
}

} // namespace foodkg::enrich
