#pragma once

#include <string>
#include <utility>
#include <vector>

#include "redraft/diagram.hpp"

namespace redraft::fixtures {

// Hand-built diagrams used across the test suite and the benchmark presets.
// Each builder returns a fresh copy; fixtures/<name>.native holds the same
// diagram in serialized form.

// A; B -> A with x:Int; C -> A with x:Int. One pull-up step.
ClassDiagram two_siblings();

// two_siblings plus a propertyless D -> A. The odd one out blocks the
// pull-up, so the x:Int pair is extracted into an intermediate subclass.
ClassDiagram two_siblings_plus_one();

// Three root entities: B and C own x:Str, D owns nothing. One root
// extraction over {B, C}.
ClassDiagram three_roots();

// A; B,C -> A with x:Int; D,E -> A with y:Str. Two independent subclass
// extractions that commute: four states, one final form.
ClassDiagram two_groups();

// A; B -> A with x:Int; C -> A with x:Int and y:Str; D -> A with y:Str.
// The two maximal extraction groups share C, so taking either one destroys
// the other: two non-isomorphic final forms. The standard non-confluence
// witness.
ClassDiagram overlapping_groups();

// Size-14 hierarchy (6 classes + 8 attributes) over two independent
// subtrees; normalizes in three pull-up steps.
ClassDiagram small_hierarchy();

// Size-18 hierarchy (10 classes + 8 attributes) exercising all three rules:
// one pull-up, one subclass extraction, one root extraction.
ClassDiagram medium_hierarchy();

// All of the above as (name, diagram) pairs, named like their fixture files.
std::vector<std::pair<std::string, ClassDiagram>> all();

}  // namespace redraft::fixtures
