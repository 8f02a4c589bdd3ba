#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "redraft/io.hpp"

namespace redraft {

namespace {

// Minimal XML reader for the documented subset: one <model> root whose
// children are empty elements with attributes. Tracks line/column for
// diagnostics; supports comments, an optional declaration, and the five
// predefined character references.
class XmlCursor {
public:
    explicit XmlCursor(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, col_, message);
    }

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char next() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) != token) return false;
        for (std::size_t i = 0; i < token.size(); ++i) next();
        return true;
    }

    void expect(std::string_view token, const std::string& what) {
        if (!consume(token)) fail("expected " + what);
    }

    void skip_space_and_comments() {
        while (!done()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                next();
            } else if (text_.substr(pos_, 4) == "<!--") {
                std::size_t end = text_.find("-->", pos_ + 4);
                if (end == std::string_view::npos) fail("unterminated comment");
                while (pos_ < end + 3) next();
            } else {
                return;
            }
        }
    }

    std::string read_name() {
        std::string name;
        while (!done()) {
            char c = peek();
            bool word = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-';
            if (!word) break;
            name += next();
        }
        if (name.empty()) fail("expected a name");
        return name;
    }

    std::string read_attr_value() {
        expect("\"", "'\"'");
        std::string value;
        while (true) {
            if (done()) fail("unterminated attribute value");
            char c = next();
            if (c == '"') break;
            if (c == '<') fail("'<' in attribute value");
            if (c == '&') {
                if (consume("amp;"))
                    value += '&';
                else if (consume("lt;"))
                    value += '<';
                else if (consume("gt;"))
                    value += '>';
                else if (consume("quot;"))
                    value += '"';
                else if (consume("apos;"))
                    value += '\'';
                else
                    fail("unknown character reference");
            } else {
                value += c;
            }
        }
        return value;
    }

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct RawElement {
    std::string name;
    std::map<std::string, std::string> attrs;
    std::size_t line;
    std::size_t col;

    const std::string& required(const std::string& attr) const {
        auto it = attrs.find(attr);
        if (it == attrs.end())
            throw ParseError(line, col, "missing attribute '" + attr + "' on <" + name + ">");
        return it->second;
    }
};

// Attributes of one element up to '/>' (required) unless `allow_open`.
RawElement read_element(XmlCursor& cursor, bool allow_open, bool& open) {
    RawElement element;
    element.line = cursor.line();
    element.col = cursor.col();
    cursor.expect("<", "'<'");
    element.name = cursor.read_name();
    while (true) {
        cursor.skip_space_and_comments();
        if (cursor.done()) cursor.fail("unterminated element <" + element.name + ">");
        if (cursor.consume("/>")) {
            open = false;
            return element;
        }
        if (cursor.consume(">")) {
            if (!allow_open) cursor.fail("expected '/>' to close <" + element.name + ">");
            open = true;
            return element;
        }
        std::string attr = cursor.read_name();
        cursor.expect("=", "'=' after attribute name");
        std::string value = cursor.read_attr_value();
        if (!element.attrs.emplace(attr, std::move(value)).second)
            cursor.fail("duplicate attribute '" + attr + "'");
    }
}

void check_attrs(const RawElement& e, std::initializer_list<const char*> allowed,
                 std::initializer_list<const char*> optional = {}) {
    for (const auto& [attr, value] : e.attrs) {
        bool known = false;
        for (const char* a : allowed)
            if (attr == a) known = true;
        for (const char* a : optional)
            if (attr == a) known = true;
        if (!known)
            throw ParseError(e.line, e.col,
                             "unsupported attribute '" + attr + "' on <" + e.name + ">");
    }
}

std::string escape_attr(const std::string& value) {
    std::string out;
    for (char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

ClassDiagram parse_xmi(std::string_view text) {
    XmlCursor cursor(text);
    if (text.substr(0, 3) == "\xef\xbb\xbf") cursor.consume("\xef\xbb\xbf");
    cursor.skip_space_and_comments();
    if (cursor.consume("<?xml")) {
        while (!cursor.done() && !cursor.consume("?>")) cursor.next();
        cursor.skip_space_and_comments();
    }

    bool open = false;
    RawElement root = read_element(cursor, /*allow_open=*/true, open);
    if (root.name != "model")
        throw ParseError(root.line, root.col, "unsupported element '" + root.name + "'");
    check_attrs(root, {});

    std::vector<RawElement> elements;
    if (open) {
        while (true) {
            cursor.skip_space_and_comments();
            if (cursor.done()) cursor.fail("missing </model>");
            if (cursor.consume("</")) {
                std::string name = cursor.read_name();
                if (name != "model") cursor.fail("unexpected closing tag </" + name + ">");
                cursor.skip_space_and_comments();
                cursor.expect(">", "'>'");
                break;
            }
            if (cursor.peek() != '<') cursor.fail("unexpected text content");
            bool child_open = false;
            RawElement child = read_element(cursor, /*allow_open=*/false, child_open);
            elements.push_back(std::move(child));
        }
    }
    cursor.skip_space_and_comments();
    if (!cursor.done()) cursor.fail("content after </model>");

    ClassDiagram d;
    std::unordered_map<std::string, EntityId> entity_ids;
    // First pass: entities, so references can point anywhere in the document.
    for (const RawElement& e : elements) {
        if (e.name != "entity") continue;
        check_attrs(e, {"id", "name"}, {"synthetic"});
        const std::string& id = e.required("id");
        bool synthetic = false;
        if (auto it = e.attrs.find("synthetic"); it != e.attrs.end()) {
            if (it->second == "true")
                synthetic = true;
            else if (it->second != "false")
                throw ParseError(e.line, e.col, "synthetic must be 'true' or 'false'");
        }
        if (entity_ids.count(id)) throw ParseError(e.line, e.col, "duplicate id '" + id + "'");
        entity_ids.emplace(id, d.add_entity(e.required("name"), synthetic));
    }
    auto resolve = [&](const RawElement& e, const std::string& attr) {
        const std::string& id = e.required(attr);
        auto it = entity_ids.find(id);
        if (it == entity_ids.end()) throw ParseError(e.line, e.col, "dangling ref " + id);
        return it->second;
    };
    for (const RawElement& e : elements) {
        if (e.name == "entity") continue;
        if (e.name == "property") {
            check_attrs(e, {"id", "owner", "name", "type"});
            d.add_property(resolve(e, "owner"), e.required("name"), e.required("type"));
        } else if (e.name == "generalization") {
            check_attrs(e, {"id", "specific", "general"});
            d.add_generalization(resolve(e, "specific"), resolve(e, "general"));
        } else {
            throw ParseError(e.line, e.col, "unsupported element '" + e.name + "'");
        }
    }

    ValidationReport report = validate(d);
    if (!report.ok()) throw DiagramError("invalid diagram: " + report.summary());
    return d;
}

std::string write_xmi(const ClassDiagram& d) {
    std::vector<const Entity*> entities;
    for (const Entity& e : d.entities()) entities.push_back(&e);
    std::sort(entities.begin(), entities.end(),
              [](const Entity* a, const Entity* b) { return a->name < b->name; });

    std::unordered_map<EntityId, std::string> doc_id;
    std::unordered_map<EntityId, const std::string*> names;
    for (std::size_t i = 0; i < entities.size(); ++i) {
        doc_id.emplace(entities[i]->id, "e" + std::to_string(i + 1));
        names.emplace(entities[i]->id, &entities[i]->name);
    }

    std::vector<const Property*> properties;
    for (const Property& p : d.properties()) properties.push_back(&p);
    std::sort(properties.begin(), properties.end(), [&](const Property* a, const Property* b) {
        return std::tie(*names.at(a->owner), a->name, a->type) <
               std::tie(*names.at(b->owner), b->name, b->type);
    });

    std::vector<const Generalization*> generalizations;
    for (const Generalization& g : d.generalizations()) generalizations.push_back(&g);
    std::sort(generalizations.begin(), generalizations.end(),
              [&](const Generalization* a, const Generalization* b) {
                  return std::tie(*names.at(a->specific), *names.at(a->general)) <
                         std::tie(*names.at(b->specific), *names.at(b->general));
              });

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (entities.empty()) {
        out << "<model/>\n";
        return out.str();
    }
    out << "<model>\n";
    for (const Entity* e : entities) {
        out << "  <entity id=\"" << doc_id.at(e->id) << "\" name=\"" << escape_attr(e->name)
            << "\"";
        if (e->synthetic) out << " synthetic=\"true\"";
        out << "/>\n";
    }
    for (std::size_t i = 0; i < properties.size(); ++i) {
        const Property* p = properties[i];
        out << "  <property id=\"p" << (i + 1) << "\" owner=\"" << doc_id.at(p->owner)
            << "\" name=\"" << escape_attr(p->name) << "\" type=\"" << escape_attr(p->type)
            << "\"/>\n";
    }
    for (std::size_t i = 0; i < generalizations.size(); ++i) {
        const Generalization* g = generalizations[i];
        out << "  <generalization id=\"g" << (i + 1) << "\" specific=\""
            << doc_id.at(g->specific) << "\" general=\"" << doc_id.at(g->general) << "\"/>\n";
    }
    out << "</model>\n";
    return out.str();
}

}  // namespace redraft
