// SPDX-License-Identifier: Apache-2.0

#include "foodkg/app/graph_builder.hpp"

#include <cctype>
#include <set>

#include "foodkg/common/text.hpp"
#include "foodkg/kg/snapshot.hpp"

namespace foodkg::app {

using nlohmann::json;

MatchStageResult match_ingredients(const std::map<std::string, enrich::IngredientLabels>& ingredients,
                                   const match::NutrientMatcher& nutrients, const match::GiMatcher& gi)
{
    MatchStageResult out;
    for (const auto& [name, labels] : ingredients) {
        IngredientMatch m;
        if (const auto hit = nutrients.resolve(name))
            m.nutrients = match::nutrient_props(*hit);
        if (const auto hit = gi.resolve(name))
            m.gi = match::gi_props(*hit);
        out.ingredients.emplace(name, std::move(m));
    }
    return out;
}

json match_report(const MatchStageResult& result)
{
    std::map<std::string, std::size_t> ladder;
    std::size_t low_confidence = 0;
    std::size_t gi_attached = 0;
    std::size_t gi_low_confidence = 0;
    std::vector<std::string> without_nutrients;
    for (const auto& [name, m] : result.ingredients) {
        if (m.nutrients.empty()) {
            ++ladder["none"];
            without_nutrients.push_back(name);
        } else {
            ++ladder[kg::get_string(m.nutrients, "nutrients_method").value_or("?") + "/" +
                     kg::get_string(m.nutrients, "nutrients_source").value_or("?")];
            low_confidence += kg::get_bool(m.nutrients, "nutrients_low_confidence").value_or(false) ? 1 : 0;
        }
        if (!m.gi.empty()) {
            ++gi_attached;
            gi_low_confidence += kg::get_bool(m.gi, "gi_low_confidence").value_or(false) ? 1 : 0;
        }
    }
    return json{{"ingredients", result.ingredients.size()},
                {"ladder", ladder},
                {"low_confidence", low_confidence},
                {"zero_nutrient_ingredients", without_nutrients},
                {"gi_attached", gi_attached},
                {"gi_low_confidence", gi_low_confidence}};
}

void to_json(json& j, const MatchStageResult& r)
{
    j = json::object();
    for (const auto& [name, m] : r.ingredients)
        j[name] = {{"nutrients", kg::props_to_json(m.nutrients)}, {"gi", kg::props_to_json(m.gi)}};
}

void from_json(const json& j, MatchStageResult& r)
{
    r.ingredients.clear();
    for (const auto& [name, m] : j.items())
        r.ingredients.emplace(name, IngredientMatch{kg::props_from_json(m.at("nutrients")),
                                                    kg::props_from_json(m.at("gi"))});
}

namespace {

/// `name` occurs in `text` (both lowercase) at the start of a word.
bool mentions(const std::string& text, const std::string& name)
{
    if (name.empty())
        return false;
    for (auto pos = text.find(name); pos != std::string::npos; pos = text.find(name, pos + 1)) {
        if (pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1])))
            return true;
    }
    return false;
}

kg::Props recipe_props(const enrich::CanonicalRecipe& r)
{
    kg::Props props{{"source_language", std::string(ingest::to_string(r.source_language))}};
    if (!r.description.empty())
        props.emplace("description", r.description);
    if (!r.keywords.empty())
        props.emplace("keywords", text::join(r.keywords, ", "));
    for (const auto& [key, value] : r.nutrition)
        props.emplace("nutrition_" + key, value);
    if (r.diets_degenerate)
        props.emplace("diets_degenerate", true);
    return props;
}

kg::Props amount_props(const enrich::SplitIngredient& s)
{
    kg::Props props;
    if (s.quantity)
        props.emplace("quantity", *s.quantity);
    if (s.unit)
        props.emplace("unit", *s.unit);
    if (!s.notes.empty())
        props.emplace("notes", s.notes);
    return props;
}

kg::NodeId category(kg::GraphWriter& w, kg::NodeKind kind, const std::string& key)
{
    const auto id = w.find_node(kind, key);
    if (!id)
        throw NotFoundError(std::string(kg::to_string(kind)) + " '" + key + "' is not in the seeded catalog");
    return *id;
}

} // namespace

BuiltGraph build_graph(const enrich::EnrichmentResult& enriched, const MatchStageResult& matches,
                       const kg::SeedCatalog& catalog, const std::vector<ingest::SubstitutionEntry>& substitutions,
                       match::Embedder& embedder, double substitute_threshold)
{
    BuiltGraph out;
    auto& graph = out.graph;
    graph.batch([&](kg::GraphWriter& w) {
        kg::seed_graph(w, catalog);

        std::map<std::string, kg::NodeId> ingredient_ids;
        for (const auto& [name, labels] : enriched.ingredients) {
            kg::Props props;
            if (const auto it = matches.ingredients.find(name); it != matches.ingredients.end()) {
                props = it->second.nutrients;
                props.insert(it->second.gi.begin(), it->second.gi.end());
            }
            const auto id = w.add_node(kg::NodeKind::Ingredient, name, std::move(props));
            ingredient_ids.emplace(name, id);
            for (const int a : labels.allergens)
                w.add_edge(id, kg::EdgeKind::AllergenOf,
                           category(w, kg::NodeKind::AllergenCategory, std::to_string(a)));
            if (labels.sfp)
                w.add_edge(id, kg::EdgeKind::ClassifiedAs,
                           category(w, kg::NodeKind::SwissFoodPyramidCategory, std::to_string(*labels.sfp)));
            for (const auto& [diet, ok] : labels.diets)
                if (ok)
                    w.add_edge(id, kg::EdgeKind::IsSuitableFor, category(w, kg::NodeKind::DietRestriction, diet));
        }

        for (const auto& r : enriched.recipes) {
            const auto rid = w.add_node(kg::NodeKind::Recipe, r.name, recipe_props(r), r.id);
            for (const auto& s : r.ingredients) {
                auto it = ingredient_ids.find(s.name);
                if (it == ingredient_ids.end())
                    it = ingredient_ids.emplace(s.name, w.add_node(kg::NodeKind::Ingredient, s.name)).first;
                w.add_edge(rid, kg::EdgeKind::Contains, it->second, amount_props(s));
            }
            for (const auto& [diet, ok] : r.diets)
                if (ok)
                    w.add_edge(rid, kg::EdgeKind::IsSuitableFor, category(w, kg::NodeKind::DietRestriction, diet));
            for (const auto& season : r.tags.seasons)
                w.add_edge(rid, kg::EdgeKind::IsForSeason, category(w, kg::NodeKind::Season, season));
            if (r.tags.cuisine)
                w.add_edge(rid, kg::EdgeKind::IsPartOf, w.add_node(kg::NodeKind::Cuisine, *r.tags.cuisine));
            for (const auto& u : r.utensils)
                w.add_edge(rid, kg::EdgeKind::Uses, w.add_node(kg::NodeKind::Utensil, u));
            for (std::size_t i = 0; i < r.instructions.size(); ++i) {
                const auto step = i + 1;
                const auto key = r.id + "#" + std::to_string(step);
                const auto inst = w.add_node(kg::NodeKind::Instruction, r.instructions[i],
                                             {{"step", static_cast<double>(step)}}, key);
                w.add_edge(rid, kg::EdgeKind::Has, inst);
                const auto lower = text::to_lower(r.instructions[i]);
                std::set<std::string> linked;
                for (const auto& s : r.ingredients) {
                    if (linked.insert(s.name).second && mentions(lower, s.name)) {
                        w.add_edge(inst, kg::EdgeKind::Uses, ingredient_ids.at(s.name));
                        ++out.report.instruction_links;
                    }
                }
            }
        }
    });
    out.report.substitutions = match::link_substitutes(substitutions, graph, embedder, substitute_threshold);
    out.report.stats = graph.stats();
    return out;
}

json stats_to_json(const kg::GraphStats& stats)
{
    json nodes = json::object();
    for (const auto& [kind, n] : stats.nodes)
        nodes[std::string(kg::to_string(kind))] = n;
    json edges = json::array();
    for (const auto& [sig, n] : stats.edges)
        edges.push_back({{"src", kg::to_string(sig.src)},
                         {"kind", kg::to_string(sig.kind)},
                         {"dst", kg::to_string(sig.dst)},
                         {"count", n}});
    return json{{"nodes", nodes}, {"edges", edges}, {"total_nodes", stats.total_nodes},
                {"total_edges", stats.total_edges}};
}

json to_json(const BuildReport& report)
{
    json subs;
    match::to_json(subs, report.substitutions);
    return json{{"graph", stats_to_json(report.stats)},
                {"substitutions", subs},
                {"instruction_links", report.instruction_links}};
}

} // namespace foodkg::app
