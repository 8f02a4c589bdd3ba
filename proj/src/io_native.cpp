#include <sstream>
#include <unordered_map>
#include <vector>

#include "redraft/io.hpp"

namespace redraft {

ParseError::ParseError(std::size_t line, std::size_t col, const std::string& message)
    : DiagramError(col == 0 ? "line " + std::to_string(line) + ": " + message
                            : "line " + std::to_string(line) + ", col " + std::to_string(col) +
                                  ": " + message),
      line_(line),
      col_(col) {}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    return tokens;
}

}  // namespace

ClassDiagram parse_native(std::string_view text) {
    ClassDiagram d;
    std::unordered_map<std::string, EntityId> by_name;

    auto resolve = [&](const std::string& name, std::size_t line) {
        auto it = by_name.find(name);
        if (it == by_name.end()) throw ParseError(line, 0, "unknown entity '" + name + "'");
        return it->second;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::vector<std::string> tokens = split_tokens(line);
        if (tokens.empty()) continue;

        const std::string& kind = tokens.front();
        if (kind == "entity") {
            if (tokens.size() < 2 || tokens.size() > 3 ||
                (tokens.size() == 3 && tokens[2] != "synthetic"))
                throw ParseError(line_no, 0, "expected 'entity <name> [synthetic]'");
            const std::string& name = tokens[1];
            if (by_name.count(name))
                throw ParseError(line_no, 0, "duplicate entity name '" + name + "'");
            by_name.emplace(name, d.add_entity(name, tokens.size() == 3));
        } else if (kind == "prop") {
            if (tokens.size() != 3)
                throw ParseError(line_no, 0, "expected 'prop <entity>.<name>: <type>'");
            std::string& target = tokens[1];
            if (target.empty() || target.back() != ':')
                throw ParseError(line_no, 0, "expected ':' after the property name");
            target.pop_back();
            std::size_t dot = target.find('.');
            if (dot == std::string::npos)
                throw ParseError(line_no, 0, "expected '<entity>.<name>' before ':'");
            std::string owner = target.substr(0, dot);
            std::string name = target.substr(dot + 1);
            if (owner.empty() || name.empty())
                throw ParseError(line_no, 0, "empty entity or property name");
            d.add_property(resolve(owner, line_no), std::move(name), tokens[2]);
        } else if (kind == "gen") {
            if (tokens.size() != 4 || tokens[2] != "->")
                throw ParseError(line_no, 0, "expected 'gen <specific> -> <general>'");
            d.add_generalization(resolve(tokens[1], line_no), resolve(tokens[3], line_no));
        } else {
            throw ParseError(line_no, 0, "unknown declaration '" + kind + "'");
        }
    }

    ValidationReport report = validate(d);
    if (!report.ok()) throw DiagramError("invalid diagram: " + report.summary());
    return d;
}

std::string write_native(const ClassDiagram& d) {
    std::ostringstream out;
    std::unordered_map<EntityId, const std::string*> names;
    for (const Entity& e : d.entities()) {
        names.emplace(e.id, &e.name);
        out << "entity " << e.name;
        if (e.synthetic) out << " synthetic";
        out << "\n";
    }
    for (const Property& p : d.properties())
        out << "prop " << *names.at(p.owner) << "." << p.name << ": " << p.type << "\n";
    for (const Generalization& g : d.generalizations())
        out << "gen " << *names.at(g.specific) << " -> " << *names.at(g.general) << "\n";
    return out.str();
}

}  // namespace redraft
