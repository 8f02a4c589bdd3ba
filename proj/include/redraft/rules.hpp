#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "redraft/diagram.hpp"

namespace redraft {

/// Step selection policy.
///
/// Priority mode offers pull-ups while any exist, then maximal subclass
/// extractions, then maximal root extractions; Free mode offers all three at
/// once. Maximality is always enforced within each extraction kind.
/// Deterministic tie handling means a single consumer (the normalizer) takes
/// the first step in sort order; BranchAll means the explorer branches on
/// every offered step.
struct Policy {
    enum class Mode { Priority, Free };
    enum class Ties { Deterministic, BranchAll };
    Mode mode = Mode::Priority;
    Ties ties = Ties::Deterministic;
};

/// A site where the pull-up rule applies: every direct subclass of
/// `superclass` owns a property (name, type), there are at least two of them,
/// and the superclass does not already own a property with that name.
struct PullUpMatch {
    EntityId superclass;
    std::string property_name;
    std::string type_name;
    std::set<EntityId> members;  // all direct subclasses
    std::size_t count = 0;       // == members.size(), >= 2
};

/// A site where an extraction rule applies. For Subclass, `members` is the
/// full set of direct subclasses of `anchor` owning (name, type); for Root it
/// is the full set of root entities owning (name, type). Never a subset.
struct ExtractCandidate {
    enum class Kind { Subclass, Root };
    Kind kind = Kind::Subclass;
    std::optional<EntityId> anchor;  // common superclass; empty for Root
    std::string property_name;
    std::string type_name;
    std::set<EntityId> members;
    std::size_t count = 0;  // == members.size(), >= 2
};

/// Uniform transition label: one rule application at one site.
struct Step {
    enum class Kind { PullUp, ExtractSub, ExtractRoot };
    std::variant<PullUpMatch, ExtractCandidate> action;

    Kind kind() const;
    const PullUpMatch& pullup() const { return std::get<PullUpMatch>(action); }
    const ExtractCandidate& extract() const { return std::get<ExtractCandidate>(action); }
};

/// All pull-up sites, sorted by (superclass name, property name, type name).
/// Precondition: d passes validate.
std::vector<PullUpMatch> find_pullup_matches(const ClassDiagram& d);

/// Deletes the matched property from every member and creates one with the
/// same name and type on the superclass. Throws DiagramError("stale match")
/// if the site is no longer present in d.
ClassDiagram apply_pullup(ClassDiagram d, const PullUpMatch& m);

/// All extraction sites of one kind, sorted by (anchor name or "" for Root,
/// property name, type name). Member sets are always the full qualifying set
/// per (anchor, name, type). Subclass candidates that cover every direct
/// subclass of an anchor lacking the property name are dropped: that site
/// belongs to the pull-up rule. Precondition: d passes validate.
std::vector<ExtractCandidate> find_extract_candidates(const ClassDiagram& d,
                                                      ExtractCandidate::Kind kind);

/// The candidates whose count equals the maximum over the input; input order
/// preserved. Ties are kept, not resolved.
std::vector<ExtractCandidate> maximal_candidates(std::vector<ExtractCandidate> candidates);

/// Creates a synthetic entity owning one (name, type) property, re-targets the
/// members' generalizations through it (Subclass) or makes it a fresh root
/// above the members (Root), and deletes the members' matched properties.
/// Throws DiagramError("stale match") if the candidate no longer holds in d.
ClassDiagram apply_extract(ClassDiagram d, const ExtractCandidate& c);

/// The steps the policy offers on d, deterministically ordered: pull-ups,
/// then maximal subclass extractions, then maximal root extractions (Priority
/// mode stops at the first nonempty group). Precondition: d passes validate.
std::vector<Step> applicable_steps(const ClassDiagram& d, const Policy& policy);

ClassDiagram apply_step(ClassDiagram d, const Step& step);

/// Short human-readable label for a step, e.g. "pullup A.x:Int {B,C}".
/// Deterministic for a given (diagram, step) pair.
std::string describe(const ClassDiagram& d, const Step& step);

}  // namespace redraft
