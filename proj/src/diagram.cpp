#include "redraft/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace redraft {

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i > 0) out << "; ";
        const Violation& v = violations[i];
        out << v.element << ": " << v.rule;
        if (!v.detail.empty()) out << " (" << v.detail << ")";
    }
    return out.str();
}

EntityId ClassDiagram::add_entity(std::string name, bool synthetic) {
    EntityId id{next_entity_++};
    entities_.push_back(Entity{id, std::move(name), synthetic});
    return id;
}

PropertyId ClassDiagram::add_property(EntityId owner, std::string name, std::string type) {
    register_type(type);
    PropertyId id{next_property_++};
    properties_.push_back(Property{id, owner, std::move(name), std::move(type)});
    return id;
}

GeneralizationId ClassDiagram::add_generalization(EntityId specific, EntityId general) {
    GeneralizationId id{next_generalization_++};
    generalizations_.push_back(Generalization{id, specific, general});
    return id;
}

void ClassDiagram::register_type(std::string name) {
    types_.insert(std::move(name));
}

void ClassDiagram::remove_property(PropertyId id) {
    auto it = std::find_if(properties_.begin(), properties_.end(),
                           [&](const Property& p) { return p.id == id; });
    if (it == properties_.end()) throw DiagramError("no such property");
    properties_.erase(it);
}

void ClassDiagram::remove_generalization(GeneralizationId id) {
    auto it = std::find_if(generalizations_.begin(), generalizations_.end(),
                           [&](const Generalization& g) { return g.id == id; });
    if (it == generalizations_.end()) throw DiagramError("no such generalization");
    generalizations_.erase(it);
}

const Entity* ClassDiagram::find_entity(EntityId id) const {
    for (const Entity& e : entities_)
        if (e.id == id) return &e;
    return nullptr;
}

const Entity* ClassDiagram::find_entity(std::string_view name) const {
    for (const Entity& e : entities_)
        if (e.name == name) return &e;
    return nullptr;
}

const Property* ClassDiagram::find_property(PropertyId id) const {
    for (const Property& p : properties_)
        if (p.id == id) return &p;
    return nullptr;
}

AttributeSet ClassDiagram::own_attributes(EntityId owner) const {
    AttributeSet attrs;
    for (const Property& p : properties_)
        if (p.owner == owner) attrs.emplace(p.name, p.type);
    return attrs;
}

std::optional<GeneralizationId> ClassDiagram::generalization_from(EntityId e) const {
    for (const Generalization& g : generalizations_)
        if (g.specific == e) return g.id;
    return std::nullopt;
}

std::optional<EntityId> ClassDiagram::superclass_of(EntityId e) const {
    for (const Generalization& g : generalizations_)
        if (g.specific == e) return g.general;
    return std::nullopt;
}

bool valid_name(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (c == '.' || c == ':' || c == '#' || c == '"') return false;
        if (static_cast<unsigned char>(c) <= ' ' || c == 0x7f) return false;
    }
    return true;
}

namespace {

std::string entity_label(const ClassDiagram& d, EntityId id) {
    if (const Entity* e = d.find_entity(id)) return "entity '" + e->name + "'";
    return "entity #" + std::to_string(id.value);
}

}  // namespace

ValidationReport validate(const ClassDiagram& d) {
    ValidationReport report;
    auto flag = [&](std::string element, std::string rule, std::string detail = "") {
        report.violations.push_back({std::move(element), std::move(rule), std::move(detail)});
    };

    std::unordered_set<std::uint64_t> known;
    std::unordered_map<std::string, std::size_t> name_uses;
    for (const Entity& e : d.entities()) {
        known.insert(e.id.value);
        if (!valid_name(e.name))
            flag("entity '" + e.name + "'", "invalid name",
                 "names are nonempty and contain no whitespace, '.', ':', '#' or '\"'");
        ++name_uses[e.name];
    }
    for (const auto& [name, uses] : name_uses)
        if (uses > 1) flag("entity '" + name + "'", "duplicate entity name");

    for (const std::string& t : d.types())
        if (!valid_name(t)) flag("type '" + t + "'", "invalid name");

    // Properties: resolvable owner, registered type, per-owner unique names.
    std::map<std::pair<std::uint64_t, std::string>, std::size_t> prop_names;
    for (const Property& p : d.properties()) {
        if (!valid_name(p.name)) flag("property '" + p.name + "'", "invalid name");
        if (!known.count(p.owner.value)) {
            flag("property '" + p.name + "'", "unknown owner",
                 "owner #" + std::to_string(p.owner.value) + " does not exist");
            continue;
        }
        if (!d.types().count(p.type))
            flag("property '" + p.name + "'", "unknown type", "'" + p.type + "' is not registered");
        ++prop_names[{p.owner.value, p.name}];
    }
    for (const auto& [key, uses] : prop_names) {
        if (uses > 1)
            flag(entity_label(d, EntityId{key.first}), "duplicate property name",
                 "property '" + key.second + "' owned more than once");
    }

    // Generalizations: resolvable ends, no self loop, single inheritance.
    std::unordered_map<std::uint64_t, std::size_t> parent_count;
    for (const Generalization& g : d.generalizations()) {
        bool ends_ok = true;
        if (!known.count(g.specific.value)) {
            flag("generalization #" + std::to_string(g.id.value), "unknown specific",
                 "entity #" + std::to_string(g.specific.value) + " does not exist");
            ends_ok = false;
        }
        if (!known.count(g.general.value)) {
            flag("generalization #" + std::to_string(g.id.value), "unknown general",
                 "entity #" + std::to_string(g.general.value) + " does not exist");
            ends_ok = false;
        }
        if (!ends_ok) continue;
        if (g.specific == g.general)
            flag(entity_label(d, g.specific), "self generalization");
        ++parent_count[g.specific.value];
    }
    for (const auto& [specific, uses] : parent_count) {
        if (uses > 1)
            flag(entity_label(d, EntityId{specific}), "multiple inheritance",
                 "specific end of " + std::to_string(uses) + " generalizations");
    }

    // Cycle check over the resolvable part of the specific -> general relation.
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> outgoing;
    std::unordered_map<std::uint64_t, std::size_t> indegree;
    for (const Entity& e : d.entities()) indegree[e.id.value] = 0;
    for (const Generalization& g : d.generalizations()) {
        if (!known.count(g.specific.value) || !known.count(g.general.value)) continue;
        if (g.specific == g.general) continue;  // reported above
        outgoing[g.specific.value].push_back(g.general.value);
        ++indegree[g.general.value];
    }
    std::vector<std::uint64_t> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push_back(id);
    std::size_t removed = 0;
    while (!ready.empty()) {
        std::uint64_t id = ready.back();
        ready.pop_back();
        ++removed;
        for (std::uint64_t next : outgoing[id])
            if (--indegree[next] == 0) ready.push_back(next);
    }
    if (removed < indegree.size()) {
        std::vector<std::string> cyclic;
        for (const auto& [id, deg] : indegree)
            if (deg > 0)
                if (const Entity* e = d.find_entity(EntityId{id})) cyclic.push_back(e->name);
        std::sort(cyclic.begin(), cyclic.end());
        std::string names;
        for (const std::string& n : cyclic) {
            if (!names.empty()) names += ", ";
            names += n;
        }
        flag("generalization relation", "cycle", "involving " + names);
    }

    return report;
}

std::set<EntityId> direct_subclasses(const ClassDiagram& d, EntityId e) {
    if (!d.has_entity(e)) throw DiagramError("no such entity");
    std::set<EntityId> subs;
    for (const Generalization& g : d.generalizations())
        if (g.general == e) subs.insert(g.specific);
    return subs;
}

std::set<EntityId> root_entities(const ClassDiagram& d) {
    std::unordered_set<std::uint64_t> specifics;
    for (const Generalization& g : d.generalizations()) specifics.insert(g.specific.value);
    std::set<EntityId> roots;
    for (const Entity& e : d.entities())
        if (!specifics.count(e.id.value)) roots.insert(e.id);
    return roots;
}

AttributeSet flattened_attributes(const ClassDiagram& d, EntityId e) {
    if (!d.has_entity(e)) throw DiagramError("no such entity");
    AttributeSet attrs;
    std::unordered_set<std::uint64_t> visited;
    std::optional<EntityId> cur = e;
    while (cur) {
        if (!visited.insert(cur->value).second)
            throw DiagramError("generalization cycle reached from entity #" +
                               std::to_string(e.value));
        for (const Property& p : d.properties())
            if (p.owner == *cur) attrs.emplace(p.name, p.type);
        cur = d.superclass_of(*cur);
    }
    return attrs;
}

SemanticSignature semantic_signature(const ClassDiagram& d) {
    // One upward pass per entity is quadratic; fine at model sizes, and the
    // result is keyed by name so it only makes sense on validated diagrams.
    SemanticSignature sig;
    std::unordered_map<std::uint64_t, AttributeSet> own;
    for (const Property& p : d.properties()) own[p.owner.value].emplace(p.name, p.type);
    for (const Entity& e : d.entities()) {
        AttributeSet attrs;
        std::unordered_set<std::uint64_t> visited;
        std::optional<EntityId> cur = e.id;
        while (cur && visited.insert(cur->value).second) {
            auto it = own.find(cur->value);
            if (it != own.end()) attrs.insert(it->second.begin(), it->second.end());
            cur = d.superclass_of(*cur);
        }
        sig[e.name] = std::move(attrs);
    }
    return sig;
}

std::string fresh_entity_name(const ClassDiagram& d, const std::string& hint) {
    std::unordered_set<std::string> taken;
    for (const Entity& e : d.entities()) taken.insert(e.name);
    if (!taken.count(hint)) return hint;
    for (std::uint64_t k = 1;; ++k) {
        std::string candidate = hint + "_" + std::to_string(k);
        if (!taken.count(candidate)) return candidate;
    }
}

}  // namespace redraft
