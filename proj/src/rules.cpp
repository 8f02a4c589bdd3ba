#include "redraft/rules.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace redraft {

namespace {

struct MatchIndex {
    std::unordered_map<EntityId, std::vector<EntityId>> children;
    std::unordered_map<EntityId, AttributeSet> own;
    std::unordered_map<EntityId, std::unordered_set<std::string>> own_names;
    std::unordered_map<EntityId, std::string> names;

    explicit MatchIndex(const ClassDiagram& d) {
        for (const Entity& e : d.entities()) names.emplace(e.id, e.name);
        for (const Generalization& g : d.generalizations())
            children[g.general].push_back(g.specific);
        for (const Property& p : d.properties()) {
            own[p.owner].emplace(p.name, p.type);
            own_names[p.owner].insert(p.name);
        }
    }

    const AttributeSet& attrs(EntityId e) const {
        static const AttributeSet empty;
        auto it = own.find(e);
        return it == own.end() ? empty : it->second;
    }

    bool owns_name(EntityId e, const std::string& name) const {
        auto it = own_names.find(e);
        return it != own_names.end() && it->second.count(name);
    }
};

bool owns_attribute(const ClassDiagram& d, EntityId e, const std::string& name,
                    const std::string& type) {
    for (const Property& p : d.properties())
        if (p.owner == e && p.name == name && p.type == type) return true;
    return false;
}

bool owns_property_named(const ClassDiagram& d, EntityId e, const std::string& name) {
    for (const Property& p : d.properties())
        if (p.owner == e && p.name == name) return true;
    return false;
}

PropertyId property_id_of(const ClassDiagram& d, EntityId owner, const std::string& name,
                          const std::string& type) {
    for (const Property& p : d.properties())
        if (p.owner == owner && p.name == name && p.type == type) return p.id;
    throw DiagramError("stale match: member lost property '" + name + "'");
}

}  // namespace

Step::Kind Step::kind() const {
    if (std::holds_alternative<PullUpMatch>(action)) return Kind::PullUp;
    return std::get<ExtractCandidate>(action).kind == ExtractCandidate::Kind::Subclass
               ? Kind::ExtractSub
               : Kind::ExtractRoot;
}

std::vector<PullUpMatch> find_pullup_matches(const ClassDiagram& d) {
    MatchIndex index(d);
    std::vector<PullUpMatch> matches;
    for (const Entity& super : d.entities()) {
        auto it = index.children.find(super.id);
        if (it == index.children.end() || it->second.size() < 2) continue;
        const std::vector<EntityId>& subs = it->second;

        // Attributes owned by every direct subclass.
        AttributeSet common = index.attrs(subs.front());
        for (std::size_t i = 1; i < subs.size() && !common.empty(); ++i) {
            const AttributeSet& next = index.attrs(subs[i]);
            AttributeSet kept;
            for (const AttributePair& a : common)
                if (next.count(a)) kept.insert(a);
            common = std::move(kept);
        }

        for (const AttributePair& a : common) {
            if (index.owns_name(super.id, a.first)) continue;
            PullUpMatch m;
            m.superclass = super.id;
            m.property_name = a.first;
            m.type_name = a.second;
            m.members.insert(subs.begin(), subs.end());
            m.count = m.members.size();
            matches.push_back(std::move(m));
        }
    }
    std::sort(matches.begin(), matches.end(), [&](const PullUpMatch& a, const PullUpMatch& b) {
        return std::tie(index.names.at(a.superclass), a.property_name, a.type_name) <
               std::tie(index.names.at(b.superclass), b.property_name, b.type_name);
    });
    return matches;
}

ClassDiagram apply_pullup(ClassDiagram d, const PullUpMatch& m) {
    if (!d.has_entity(m.superclass)) throw DiagramError("stale match: superclass is gone");
    if (m.count != m.members.size() || m.count < 2)
        throw DiagramError("stale match: malformed member set");
    if (direct_subclasses(d, m.superclass) != m.members)
        throw DiagramError("stale match: direct subclasses changed");
    if (owns_property_named(d, m.superclass, m.property_name))
        throw DiagramError("stale match: superclass already owns '" + m.property_name + "'");

    std::vector<PropertyId> doomed;
    for (EntityId member : m.members)
        doomed.push_back(property_id_of(d, member, m.property_name, m.type_name));
    for (PropertyId id : doomed) d.remove_property(id);
    d.add_property(m.superclass, m.property_name, m.type_name);
    return d;
}

std::vector<ExtractCandidate> find_extract_candidates(const ClassDiagram& d,
                                                      ExtractCandidate::Kind kind) {
    MatchIndex index(d);
    std::vector<ExtractCandidate> candidates;

    auto emit = [&](std::optional<EntityId> anchor, const AttributePair& attr,
                    std::set<EntityId> members) {
        ExtractCandidate c;
        c.kind = kind;
        c.anchor = anchor;
        c.property_name = attr.first;
        c.type_name = attr.second;
        c.count = members.size();
        c.members = std::move(members);
        candidates.push_back(std::move(c));
    };

    if (kind == ExtractCandidate::Kind::Subclass) {
        for (const Entity& anchor : d.entities()) {
            auto it = index.children.find(anchor.id);
            if (it == index.children.end() || it->second.size() < 2) continue;
            std::map<AttributePair, std::set<EntityId>> groups;
            for (EntityId sub : it->second)
                for (const AttributePair& a : index.attrs(sub)) groups[a].insert(sub);
            for (auto& [attr, members] : groups) {
                if (members.size() < 2) continue;
                bool full_cover = members.size() == it->second.size();
                if (full_cover && !index.owns_name(anchor.id, attr.first))
                    continue;  // that site belongs to the pull-up rule
                emit(anchor.id, attr, std::move(members));
            }
        }
    } else {
        std::map<AttributePair, std::set<EntityId>> groups;
        for (EntityId root : root_entities(d))
            for (const AttributePair& a : index.attrs(root)) groups[a].insert(root);
        for (auto& [attr, members] : groups) {
            if (members.size() < 2) continue;
            emit(std::nullopt, attr, std::move(members));
        }
    }

    std::sort(candidates.begin(), candidates.end(),
              [&](const ExtractCandidate& a, const ExtractCandidate& b) {
                  const std::string empty;
                  const std::string& an = a.anchor ? index.names.at(*a.anchor) : empty;
                  const std::string& bn = b.anchor ? index.names.at(*b.anchor) : empty;
                  return std::tie(an, a.property_name, a.type_name) <
                         std::tie(bn, b.property_name, b.type_name);
              });
    return candidates;
}

std::vector<ExtractCandidate> maximal_candidates(std::vector<ExtractCandidate> candidates) {
    std::size_t best = 0;
    for (const ExtractCandidate& c : candidates) best = std::max(best, c.count);
    std::erase_if(candidates, [&](const ExtractCandidate& c) { return c.count < best; });
    return candidates;
}

ClassDiagram apply_extract(ClassDiagram d, const ExtractCandidate& c) {
    if (c.count != c.members.size() || c.count < 2)
        throw DiagramError("stale match: malformed member set");

    if (c.kind == ExtractCandidate::Kind::Subclass) {
        if (!c.anchor || !d.has_entity(*c.anchor))
            throw DiagramError("stale match: anchor is gone");
        std::set<EntityId> subs = direct_subclasses(d, *c.anchor);
        std::set<EntityId> qualifying;
        for (EntityId sub : subs)
            if (owns_attribute(d, sub, c.property_name, c.type_name)) qualifying.insert(sub);
        if (qualifying != c.members)
            throw DiagramError("stale match: qualifying subclasses changed");
        if (qualifying == subs && !owns_property_named(d, *c.anchor, c.property_name))
            throw DiagramError("stale match: site now belongs to the pull-up rule");
    } else {
        std::set<EntityId> qualifying;
        for (EntityId root : root_entities(d))
            if (owns_attribute(d, root, c.property_name, c.type_name)) qualifying.insert(root);
        if (qualifying != c.members)
            throw DiagramError("stale match: qualifying roots changed");
    }

    std::string name = fresh_entity_name(d, c.property_name + "_" + c.type_name);
    EntityId fresh = d.add_entity(std::move(name), /*synthetic=*/true);
    d.add_property(fresh, c.property_name, c.type_name);
    for (EntityId member : c.members) {
        d.remove_property(property_id_of(d, member, c.property_name, c.type_name));
        if (c.kind == ExtractCandidate::Kind::Subclass)
            d.remove_generalization(*d.generalization_from(member));
        d.add_generalization(member, fresh);
    }
    if (c.kind == ExtractCandidate::Kind::Subclass) d.add_generalization(fresh, *c.anchor);
    return d;
}

std::vector<Step> applicable_steps(const ClassDiagram& d, const Policy& policy) {
    std::vector<Step> steps;
    auto add_pullups = [&] {
        for (PullUpMatch& m : find_pullup_matches(d)) steps.push_back(Step{std::move(m)});
    };
    auto add_extracts = [&](ExtractCandidate::Kind kind) {
        for (ExtractCandidate& c : maximal_candidates(find_extract_candidates(d, kind)))
            steps.push_back(Step{std::move(c)});
    };

    if (policy.mode == Policy::Mode::Priority) {
        add_pullups();
        if (steps.empty()) add_extracts(ExtractCandidate::Kind::Subclass);
        if (steps.empty()) add_extracts(ExtractCandidate::Kind::Root);
    } else {
        add_pullups();
        add_extracts(ExtractCandidate::Kind::Subclass);
        add_extracts(ExtractCandidate::Kind::Root);
    }
    return steps;
}

ClassDiagram apply_step(ClassDiagram d, const Step& step) {
    if (step.kind() == Step::Kind::PullUp) return apply_pullup(std::move(d), step.pullup());
    return apply_extract(std::move(d), step.extract());
}

std::string describe(const ClassDiagram& d, const Step& step) {
    auto name_of = [&](EntityId id) {
        const Entity* e = d.find_entity(id);
        return e ? e->name : "#" + std::to_string(id.value);
    };
    auto member_list = [&](const std::set<EntityId>& members) {
        std::vector<std::string> names;
        for (EntityId m : members) names.push_back(name_of(m));
        std::sort(names.begin(), names.end());
        std::string out = "{";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i > 0) out += ",";
            out += names[i];
        }
        return out + "}";
    };

    switch (step.kind()) {
        case Step::Kind::PullUp: {
            const PullUpMatch& m = step.pullup();
            return "pullup " + name_of(m.superclass) + "." + m.property_name + ":" +
                   m.type_name + " " + member_list(m.members);
        }
        case Step::Kind::ExtractSub: {
            const ExtractCandidate& c = step.extract();
            return "extract-sub " + name_of(*c.anchor) + " " + c.property_name + ":" +
                   c.type_name + " " + member_list(c.members);
        }
        case Step::Kind::ExtractRoot: {
            const ExtractCandidate& c = step.extract();
            return "extract-root " + c.property_name + ":" + c.type_name + " " +
                   member_list(c.members);
        }
    }
    return "unknown";
}

}  // namespace redraft
