#pragma once

#include <cstddef>
#include <cstdint>

#include "redraft/diagram.hpp"

namespace redraft {

// Parametric benchmark-case description. Two shapes:
//
//   PullUpLadder  one optional root plus `classes` subclasses, each owning
//                 the same `attrs_per_class` (name, type) properties. With
//                 the root present, normalization pulls every attribute
//                 group up in exactly `attrs_per_class` steps; without it,
//                 the same groups become root extractions.
//
//   Replicate     `copies` disjoint renamed copies of `base`; entity names
//                 get a "_<copy>" suffix, property names stay unchanged.
struct CaseSpec {
    enum class Shape { PullUpLadder, Replicate };

    Shape shape = Shape::PullUpLadder;

    // PullUpLadder parameters.
    std::size_t classes = 2;
    std::size_t attrs_per_class = 1;
    bool with_root = true;

    // Replicate parameters.
    ClassDiagram base;
    std::size_t copies = 1;

    // Reserved for shapes with randomized naming; the current shapes are
    // fully deterministic and ignore it.
    std::uint64_t seed = 0;
};

// Both generators produce diagrams that pass validate, deterministically
// for a given parameter set. They throw DiagramError on zero counts (and,
// for Replicate, on an invalid base).
ClassDiagram generate_ladder(std::size_t classes, std::size_t attrs_per_class,
                             bool with_root = true);
ClassDiagram generate_replicate(const ClassDiagram& base, std::size_t copies);

ClassDiagram generate_case(const CaseSpec& spec);

}  // namespace redraft
