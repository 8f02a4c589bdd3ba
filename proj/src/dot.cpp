#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "redraft/io.hpp"

namespace redraft {

namespace {

// Graphviz needs its own escaping inside double-quoted strings and record
// labels; '|', '{', '}' and '<'/'>' are record structure characters.
std::string escape_dot(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\' || c == '|' || c == '{' || c == '}' || c == '<' || c == '>')
            out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string export_dot(const ClassDiagram& d) {
    std::vector<const Entity*> entities;
    for (const Entity& e : d.entities()) entities.push_back(&e);
    std::sort(entities.begin(), entities.end(),
              [](const Entity* a, const Entity* b) { return a->name < b->name; });

    std::unordered_map<EntityId, const std::string*> names;
    for (const Entity* e : entities) names.emplace(e->id, &e->name);

    std::ostringstream out;
    out << "digraph classdiagram {\n";
    if (!entities.empty()) out << "  node [shape=record];\n";
    for (const Entity* e : entities) {
        AttributeSet attrs = d.own_attributes(e->id);
        out << "  \"" << escape_dot(e->name) << "\" [label=\"{" << escape_dot(e->name);
        if (!attrs.empty()) {
            out << "|";
            for (const auto& [name, type] : attrs)
                out << escape_dot(name) << ": " << escape_dot(type) << "\\l";
        }
        out << "}\"";
        if (e->synthetic) out << " style=dashed";
        out << "];\n";
    }

    std::vector<std::pair<std::string, std::string>> edges;
    for (const Generalization& g : d.generalizations())
        edges.emplace_back(*names.at(g.specific), *names.at(g.general));
    std::sort(edges.begin(), edges.end());
    for (const auto& [specific, general] : edges)
        out << "  \"" << escape_dot(specific) << "\" -> \"" << escape_dot(general)
            << "\" [arrowhead=empty];\n";
    out << "}\n";
    return out.str();
}

}  // namespace redraft
