#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "redraft/diagram.hpp"

namespace redraft {

/// Parse failure with a document location. `line` is 1-based; `col` is 1-based
/// or 0 when only the line is known.
class ParseError : public DiagramError {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

// --- native format ---------------------------------------------------------
//
// Line-oriented, one declaration per line, '#' starts a comment:
//
//   entity <name> [synthetic]
//   prop <entity>.<name>: <type>
//   gen <specific> -> <general>
//
// Entities must be declared before they are referenced. The writer emits
// entities, then properties, then generalizations, each in id order, so a
// parse/write pair is the identity on freshly parsed documents.

ClassDiagram parse_native(std::string_view text);
std::string write_native(const ClassDiagram& d);

// --- XMI subset ------------------------------------------------------------
//
// XML with root <model>; children <entity id name synthetic?>,
// <property id owner name type>, <generalization id specific general>.
// References are by id attribute. The writer renumbers ids in name-sorted
// element order; the parser assigns fresh element ids in document order.

ClassDiagram parse_xmi(std::string_view text);
std::string write_xmi(const ClassDiagram& d);

// --- DOT export ------------------------------------------------------------
//
// One record node per entity (name plus own properties), one edge per
// generalization (specific -> general). Synthetic entities render dashed.

std::string export_dot(const ClassDiagram& d);

}  // namespace redraft
