#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace redraft {

/// Error raised when an operation's runtime precondition is violated:
/// unknown ids, invalid input diagrams, stale rule matches.
class DiagramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EntityId {
    std::uint64_t value = 0;
    friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

struct PropertyId {
    std::uint64_t value = 0;
    friend auto operator<=>(const PropertyId&, const PropertyId&) = default;
};

struct GeneralizationId {
    std::uint64_t value = 0;
    friend auto operator<=>(const GeneralizationId&, const GeneralizationId&) = default;
};

/// A class node. Non-synthetic names are stable identity across runs and
/// serializations; synthetic entities were created by a rule application and
/// have no identity beyond their structure.
struct Entity {
    EntityId id;
    std::string name;
    bool synthetic = false;
};

/// An attribute owned by an entity. Types are referenced by name; two
/// properties are the same attribute iff both name and type name agree.
struct Property {
    PropertyId id;
    EntityId owner;
    std::string name;
    std::string type;
};

/// A directed specific -> general inheritance link.
struct Generalization {
    GeneralizationId id;
    EntityId specific;
    EntityId general;
};

struct Violation {
    std::string element;  // "entity 'A'", "property 'B.x'", ...
    std::string rule;     // "cycle", "multiple inheritance", ...
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

using AttributePair = std::pair<std::string, std::string>;  // (name, type name)
using AttributeSet = std::set<AttributePair>;

/// Flattened (inherited-closure) attribute sets keyed by entity name.
using SemanticSignature = std::map<std::string, AttributeSet>;

/// The in-memory class diagram. A plain value: copying yields an independent
/// diagram, and no operation mutates its input observably.
///
/// Mutators intentionally do not enforce the model invariants (single
/// inheritance, acyclicity, name uniqueness, referential integrity); those are
/// reported by validate() so that ill-formed inputs can be represented and
/// diagnosed instead of crashing half-way through construction.
///
/// Ids are unique per kind within one diagram value and are never reused,
/// including after deletions.
class ClassDiagram {
public:
    EntityId add_entity(std::string name, bool synthetic = false);
    PropertyId add_property(EntityId owner, std::string name, std::string type);
    GeneralizationId add_generalization(EntityId specific, EntityId general);
    void register_type(std::string name);

    void remove_property(PropertyId id);
    void remove_generalization(GeneralizationId id);

    const std::vector<Entity>& entities() const { return entities_; }
    const std::vector<Property>& properties() const { return properties_; }
    const std::vector<Generalization>& generalizations() const { return generalizations_; }
    const std::set<std::string>& types() const { return types_; }

    const Entity* find_entity(EntityId id) const;
    const Entity* find_entity(std::string_view name) const;
    const Property* find_property(PropertyId id) const;

    bool has_entity(EntityId id) const { return find_entity(id) != nullptr; }

    /// Own (not inherited) attributes of one entity.
    AttributeSet own_attributes(EntityId owner) const;

    /// The generalization whose specific end is `e`, if any. With multiple
    /// inheritance present (an invalid diagram) the first one wins.
    std::optional<GeneralizationId> generalization_from(EntityId e) const;
    std::optional<EntityId> superclass_of(EntityId e) const;

    /// Combined number of classes and attributes.
    std::size_t size() const { return entities_.size() + properties_.size(); }

private:
    std::vector<Entity> entities_;
    std::vector<Property> properties_;
    std::vector<Generalization> generalizations_;
    std::set<std::string> types_;
    std::uint64_t next_entity_ = 1;
    std::uint64_t next_property_ = 1;
    std::uint64_t next_generalization_ = 1;
};

/// Name charset shared by the model and both serializers: nonempty, no
/// whitespace, none of '.' ':' '#' '"'. Keeping this in validate() makes every
/// valid diagram serializable in every supported format.
bool valid_name(std::string_view name);

ValidationReport validate(const ClassDiagram& d);

/// Entities that are the specific end of a generalization to `e`.
/// Throws DiagramError("no such entity") for an unknown id.
std::set<EntityId> direct_subclasses(const ClassDiagram& d, EntityId e);

/// Entities with no superclass.
std::set<EntityId> root_entities(const ClassDiagram& d);

/// Own attributes of `e` plus the flattened attributes of its superclass.
/// Set semantics: shadowed attributes collapse.
AttributeSet flattened_attributes(const ClassDiagram& d, EntityId e);

/// flattened_attributes of every entity, keyed by entity name.
SemanticSignature semantic_signature(const ClassDiagram& d);

/// `hint` if no entity carries that name, otherwise `hint_<k>` for the
/// smallest positive k that is unused. Pure function of the diagram.
std::string fresh_entity_name(const ClassDiagram& d, const std::string& hint);

}  // namespace redraft

template <>
struct std::hash<redraft::EntityId> {
    std::size_t operator()(const redraft::EntityId& id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};

template <>
struct std::hash<redraft::PropertyId> {
    std::size_t operator()(const redraft::PropertyId& id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
