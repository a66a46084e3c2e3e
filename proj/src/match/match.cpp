// SPDX-License-Identifier: Apache-2.0

#include "foodkg/match/match.hpp"

#include <set>

#include "foodkg/common/log.hpp"
#include "foodkg/common/text.hpp"

namespace foodkg::match {

using nlohmann::json;

std::string_view to_string(MatchMethod method)
{
    return method == MatchMethod::exact ? "exact" : "embedding";
}

std::string_view to_string(MatchSource source)
{
    switch (source) {
    case MatchSource::swiss: return "swiss";
    case MatchSource::usda: return "usda";
    case MatchSource::gi: return "gi";
    case MatchSource::subs: return "subs";
    }
    return "?";
}

namespace {

struct Best {
    double score = 0.0;
    std::vector<std::size_t> positions; // all entries at `score`, insertion order
};

Best best_of(const std::vector<double>& scores)
{
    Best best;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (best.positions.empty() || scores[i] > best.score) {
            best.score = scores[i];
            best.positions = {i};
        } else if (scores[i] == best.score) {
            best.positions.push_back(i);
        }
    }
    return best;
}

MatchResult embedding_result(const std::string& query, const VectorIndex& index, const Best& best, MatchSource source)
{
    MatchResult r;
    r.query = query;
    r.candidate = index.key(best.positions.front());
    r.score = best.score;
    r.method = MatchMethod::embedding;
    r.source = source;
    if (best.positions.size() > 1)
        for (const auto p : best.positions)
            r.ties.push_back(index.key(p));
    return r;
}

} // namespace

MatchResult nearest(const std::string& query, const EmbeddingVector& query_vector, const VectorIndex& index,
                    MatchSource source)
{
    if (index.empty())
        throw InvalidArgumentError("nearest on an empty index");
    return embedding_result(query, index, best_of(index.scores(query_vector)), source);
}

MatchResult nearest(const std::string& query, const VectorIndex& index, Embedder& embedder, MatchSource source)
{
    if (index.empty())
        throw InvalidArgumentError("nearest on an empty index");
    return nearest(query, embedder.embed_one(query), index, source);
}

MatchTarget::MatchTarget(MatchSource source, const std::vector<std::string>& names, Embedder& embedder)
    : source_(source), index_(VectorIndex::build(names, embedder))
{
    for (std::size_t i = 0; i < names.size(); ++i)
        exact_.emplace(text::normalize_name(names[i]), index_.find(names[i]).value());
}

std::optional<std::size_t> MatchTarget::exact(std::string_view name) const
{
    const auto it = exact_.find(text::normalize_name(name));
    if (it == exact_.end())
        return std::nullopt;
    return it->second;
}

MatchLadder::MatchLadder(std::vector<const MatchTarget*> targets, Embedder& embedder, double threshold)
    : targets_(std::move(targets)), embedder_(embedder), threshold_(threshold)
{
}

std::optional<MatchLadder::Hit> MatchLadder::resolve(const std::string& name) const
{
    for (const auto* t : targets_) {
        if (const auto pos = t->exact(name)) {
            MatchResult r;
            r.query = name;
            r.candidate = t->index().key(*pos);
            r.score = 1.0;
            r.method = MatchMethod::exact;
            r.source = t->source();
            return Hit{r, *pos};
        }
    }

    std::optional<EmbeddingVector> query;
    std::optional<Hit> fallback;
    for (const auto* t : targets_) {
        if (t->index().empty())
            continue;
        if (!query)
            query = embedder_.embed_one(name);
        const Best best = best_of(t->index().scores(*query));
        if (best.score <= 0.0)
            continue;
        Hit hit{embedding_result(name, t->index(), best, t->source()), best.positions.front()};
        if (best.score >= threshold_)
            return hit;
        if (!fallback || best.score > fallback->result.score)
            fallback = std::move(hit);
    }
    if (fallback)
        fallback->result.low_confidence = true;
    return fallback;
}

namespace {

std::vector<std::string> nutrient_names(const ingest::NutrientTable& table)
{
    std::vector<std::string> out;
    for (const auto& e : table.entries)
        out.push_back(e.name);
    return out;
}

/// First table row carrying `name`.
const ingest::NutrientEntry* nutrient_row(const ingest::NutrientTable& table, const std::string& name)
{
    for (const auto& e : table.entries)
        if (e.name == name)
            return &e;
    return nullptr;
}

} // namespace

NutrientMatcher::NutrientMatcher(const ingest::NutrientTable& swiss, const ingest::NutrientTable& usda,
                                 Embedder& embedder, double threshold)
    : swiss_(swiss), usda_(usda)
{
    if (swiss.entries.empty() && usda.entries.empty())
        throw InvalidArgumentError("both nutrient databases are empty");
    swiss_target_.emplace(MatchSource::swiss, nutrient_names(swiss), embedder);
    usda_target_.emplace(MatchSource::usda, nutrient_names(usda), embedder);
    ladder_.emplace(std::vector<const MatchTarget*>{&*swiss_target_, &*usda_target_}, embedder, threshold);
}

std::optional<NutrientMatch> NutrientMatcher::resolve(const std::string& name) const
{
    auto hit = ladder_->resolve(name);
    if (!hit)
        return std::nullopt;
    const auto& table = hit->result.source == MatchSource::swiss ? swiss_ : usda_;
    return NutrientMatch{hit->result, nutrient_row(table, hit->result.candidate)};
}

kg::Props nutrient_props(const NutrientMatch& match)
{
    kg::Props props;
    for (const auto& [key, value] : match.entry->nutrients)
        props[key] = value;
    props["nutrients_source"] = std::string(to_string(match.match.source));
    props["nutrients_match"] = match.match.candidate;
    props["nutrients_score"] = match.match.score;
    props["nutrients_method"] = std::string(to_string(match.match.method));
    props["nutrients_low_confidence"] = match.match.low_confidence;
    props["nutrients_line"] = static_cast<double>(match.entry->line);
    return props;
}

GiMatcher::GiMatcher(const ingest::GITable& table, Embedder& embedder, double threshold) : table_(table)
{
    if (table.entries.empty())
        return;
    std::vector<std::string> names;
    for (const auto& e : table.entries)
        names.push_back(e.name);
    target_.emplace(MatchSource::gi, names, embedder);
    ladder_.emplace(std::vector<const MatchTarget*>{&*target_}, embedder, threshold);
}

std::optional<GiMatch> GiMatcher::resolve(const std::string& name) const
{
    if (!ladder_)
        return std::nullopt;
    auto hit = ladder_->resolve(name);
    if (!hit)
        return std::nullopt;
    for (const auto& e : table_.entries)
        if (e.name == hit->result.candidate)
            return GiMatch{hit->result, &e};
    return std::nullopt;
}

kg::Props gi_props(const GiMatch& match)
{
    return kg::Props{{"gi", match.entry->gi},
                     {"gi_match", match.match.candidate},
                     {"gi_score", match.match.score},
                     {"gi_method", std::string(to_string(match.match.method))},
                     {"gi_low_confidence", match.match.low_confidence}};
}

namespace {

/// A name resolved against the graph's ingredients, or a new one to create.
struct Resolved {
    std::optional<kg::NodeId> node;
    std::string new_name;
};

class IngredientResolver {
public:
    IngredientResolver(const kg::Graph& graph, Embedder& embedder, double threshold)
        : nodes_(graph.nodes(kg::NodeKind::Ingredient))
    {
        std::vector<std::string> names;
        for (const auto& n : nodes_)
            names.push_back(n.name);
        target_.emplace(MatchSource::subs, names, embedder);
        ladder_.emplace(std::vector<const MatchTarget*>{&*target_}, embedder, threshold);
        for (const auto& n : nodes_)
            by_name_.emplace(n.name, n.id);
    }

    /// Only confident matches map onto an existing node.
    std::optional<kg::NodeId> find(const std::string& name) const
    {
        const auto hit = ladder_->resolve(name);
        if (!hit || hit->result.low_confidence)
            return std::nullopt;
        return by_name_.at(hit->result.candidate);
    }

    Resolved resolve(const std::string& name) const
    {
        if (auto id = find(name))
            return {id, {}};
        return {std::nullopt, text::normalize_name(name)};
    }

private:
    std::vector<kg::Node> nodes_;
    std::optional<MatchTarget> target_;
    std::optional<MatchLadder> ladder_;
    std::map<std::string, kg::NodeId> by_name_;
};

void put_amount(kg::Props& props, const ingest::SubstituteComponent& c)
{
    if (c.quantity)
        props["quantity"] = *c.quantity;
    if (c.unit)
        props["unit"] = *c.unit;
}

} // namespace

SubstitutionReport link_substitutes(const std::vector<ingest::SubstitutionEntry>& entries, kg::Graph& graph,
                                    Embedder& embedder, double threshold)
{
    SubstitutionReport report;
    if (entries.empty())
        return report;
    const IngredientResolver resolver(graph, embedder, threshold);

    struct Plan {
        kg::NodeId target;
        const ingest::Substitute* substitute;
        std::vector<Resolved> parts;
    };
    std::vector<Plan> plans;
    for (const auto& entry : entries) {
        const auto target = resolver.find(entry.target.name);
        if (!target) {
            report.unmatched_targets.push_back(entry.target.name);
            continue;
        }
        for (const auto& sub : entry.substitutes) {
            Plan plan{*target, &sub, {}};
            for (const auto& c : sub.components)
                plan.parts.push_back(resolver.resolve(c.name));
            plans.push_back(std::move(plan));
        }
    }

    graph.batch([&](kg::GraphWriter& w) {
        std::set<std::string> created;
        std::set<std::string> composites;
        const auto node_for = [&](const Resolved& r) {
            if (r.node)
                return *r.node;
            if (const auto existing = w.find_node(kg::NodeKind::Ingredient, r.new_name))
                return *existing;
            created.insert(r.new_name);
            return w.add_node(kg::NodeKind::Ingredient, r.new_name, kg::Props{{"is_substitute_only", true}});
        };
        for (const auto& plan : plans) {
            const auto& sub = *plan.substitute;
            kg::Props link;
            if (sub.ratio)
                link["ratio"] = *sub.ratio;
            if (!sub.notes.empty())
                link["notes"] = sub.notes;
            if (!sub.composite()) {
                const auto dst = node_for(plan.parts.front());
                if (dst == plan.target) {
                    logger()->warn("substitute '{}' resolves to its own target, skipped", sub.components.front().name);
                    continue;
                }
                put_amount(link, sub.components.front());
                w.add_edge(plan.target, kg::EdgeKind::SubstitutedBy, dst, link);
                ++report.substituted_by;
                continue;
            }
            std::vector<std::string> names;
            for (const auto& c : sub.components)
                names.push_back(text::normalize_name(c.name));
            const std::string composite_name = text::join(names, " + ");
            const bool fresh = !w.find_node(kg::NodeKind::CompositeSubstitute, composite_name);
            const auto composite = w.add_node(kg::NodeKind::CompositeSubstitute, composite_name);
            w.add_edge(plan.target, kg::EdgeKind::HasCompositeSubstitute, composite, link);
            ++report.has_composite;
            if (!fresh)
                continue;
            composites.insert(composite_name);
            for (std::size_t i = 0; i < sub.components.size(); ++i) {
                kg::Props amount;
                put_amount(amount, sub.components[i]);
                w.add_edge(composite, kg::EdgeKind::ComposedOf, node_for(plan.parts[i]), amount);
                ++report.composed_of;
            }
        }
        report.composite_nodes = composites.size();
        report.substitute_only_nodes = created.size();
    });
    return report;
}

void to_json(json& j, const MatchResult& m)
{
    j = json{{"query", m.query},
             {"candidate", m.candidate},
             {"score", m.score},
             {"method", to_string(m.method)},
             {"source", to_string(m.source)},
             {"low_confidence", m.low_confidence}};
    if (m.tied())
        j["ties"] = m.ties;
}

void to_json(json& j, const SubstitutionReport& r)
{
    j = json{{"substituted_by", r.substituted_by},
             {"composite_nodes", r.composite_nodes},
             {"has_composite_substitute", r.has_composite},
             {"composed_of", r.composed_of},
             {"substitute_only_nodes", r.substitute_only_nodes},
             {"unmatched_targets", r.unmatched_targets}};
}

} // namespace foodkg::match
