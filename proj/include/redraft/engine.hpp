#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "redraft/diagram.hpp"
#include "redraft/rules.hpp"

namespace redraft {

/// Canonical byte string: equal exactly for isomorphic diagrams. Isomorphism
/// is a bijection on entities that preserves generalization edges, own
/// (name, type) attribute sets, the synthetic flag, and the names of
/// non-synthetic entities; synthetic entities may be renamed freely.
///
/// Valid diagrams form a forest under single inheritance, so a sorted
/// bottom-up subtree encoding is a complete invariant; no backtracking is
/// needed. Precondition: d passes validate.
using CanonicalKey = std::string;
CanonicalKey canonical_key(const ClassDiagram& d);

/// canonical_key(d1) == canonical_key(d2).
bool isomorphic(const ClassDiagram& d1, const ClassDiagram& d2);

struct TraceEntry {
    Step step;
    std::size_t size_after;  // classes + attributes after the step
};

struct Trace {
    std::vector<TraceEntry> entries;
    std::size_t step_count() const { return entries.size(); }
};

struct NormalizeResult {
    ClassDiagram diagram;
    Trace trace;
};

/// Applies the first applicable step until none applies. Deterministic;
/// terminates within the initial property count. Requires deterministic tie
/// handling and a valid input diagram.
NormalizeResult normalize(ClassDiagram d, const Policy& policy);

struct ExploreLimits {
    std::size_t max_states = 100000;
    double max_seconds = 0.0;  // 0 = unlimited
};

struct ExploreStats {
    std::size_t state_count = 0;
    std::size_t transition_count = 0;
    double wall_seconds = 0.0;
};

/// A transition is (source key, step label, target key); labels come from
/// describe() on the source representative.
using Transition = std::tuple<CanonicalKey, std::string, CanonicalKey>;

struct StateSpace {
    std::map<CanonicalKey, ClassDiagram> states;  // key -> representative
    std::set<Transition> transitions;
    CanonicalKey initial;
    std::set<CanonicalKey> finals;  // expanded states with no applicable step
    ExploreStats stats;
    bool complete = true;

    bool same_shape(const StateSpace& other) const;  // everything but stats
};

/// Breadth-first closure of applicable_steps with states deduplicated by
/// canonical key. Hitting a limit yields a partial space flagged incomplete.
///
/// This is the OpenMP kernel: each frontier level is expanded in parallel and
/// merged in frontier order, so the result is identical to explore_serial's.
StateSpace explore(const ClassDiagram& d, const Policy& policy, const ExploreLimits& limits = {});

/// Single-threaded queue-based reference implementation.
StateSpace explore_serial(const ClassDiagram& d, const Policy& policy,
                          const ExploreLimits& limits = {});

struct ConfluenceReport {
    bool confluent = false;
    std::size_t final_count = 0;
    std::vector<ClassDiagram> witnesses;  // two finals when not confluent
};

/// Confluent iff the complete exploration has exactly one final state.
/// Throws DiagramError("cannot decide on partial exploration") when the
/// space is flagged incomplete.
ConfluenceReport check_confluence(const StateSpace& space);

}  // namespace redraft
