#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "redraft/engine.hpp"
#include "redraft/fixtures.hpp"
#include "redraft/io.hpp"
#include "support/test_support.hpp"

using namespace redraft;

namespace {

std::string fixture_bytes(const std::string& name) {
    std::ifstream in(std::string(REDRAFT_FIXTURE_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename Id>
std::vector<std::uint64_t> raw_ids(const std::vector<Id>& ids) {
    std::vector<std::uint64_t> out;
    for (const Id& id : ids) out.push_back(id.value);
    return out;
}

}  // namespace

TEST_CASE("native writer output is the checked-in fixture, byte for byte") {
    for (const auto& [name, diagram] : fixtures::all())
        CHECK(write_native(diagram) == fixture_bytes(name + ".native"));
}

TEST_CASE("native write/parse is the identity on fixtures, ids included") {
    for (const auto& [name, diagram] : fixtures::all()) {
        INFO(name);
        ClassDiagram back = parse_native(write_native(diagram));
        CHECK(testsupport::same_structure(back, diagram));

        std::vector<std::uint64_t> entity_ids, back_entity_ids;
        for (const Entity& e : diagram.entities()) entity_ids.push_back(e.id.value);
        for (const Entity& e : back.entities()) back_entity_ids.push_back(e.id.value);
        CHECK(entity_ids == back_entity_ids);
        CHECK(write_native(back) == write_native(diagram));
    }
}

TEST_CASE("native parser round-trips synthetic flags") {
    NormalizeResult result = normalize(fixtures::two_siblings_plus_one(), Policy{});
    REQUIRE(result.diagram.find_entity("x_Int") != nullptr);
    ClassDiagram back = parse_native(write_native(result.diagram));
    CHECK(back.find_entity("x_Int")->synthetic);
    CHECK(testsupport::same_structure(back, result.diagram));
}

TEST_CASE("native parser diagnostics carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_native("entity A\nentity A\n"),
                         "line 2: duplicate entity name 'A'", ParseError);
    CHECK_THROWS_WITH_AS(parse_native("prop A.x: Int\n"), "line 1: unknown entity 'A'",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_native("entity A\nprop A.x Int\n"),
                         "line 2: expected ':' after the property name", ParseError);
    CHECK_THROWS_WITH_AS(parse_native("entity A\ngen A <- A\n"),
                         "line 2: expected 'gen <specific> -> <general>'", ParseError);
    CHECK_THROWS_WITH_AS(parse_native("entitty A\n"), "line 1: unknown declaration 'entitty'",
                         ParseError);

    SUBCASE("comments and blank lines are skipped") {
        ClassDiagram d = parse_native("# header\n\nentity A # trailing\n");
        CHECK(d.entities().size() == 1);
        CHECK(d.find_entity("A") != nullptr);
    }
    SUBCASE("parsers reject exactly what validate rejects") {
        // Structurally well-formed text, semantically broken diagram.
        CHECK_THROWS_AS(parse_native("entity A\nentity B\nentity C\n"
                                     "gen C -> A\ngen C -> B\n"),
                        DiagramError);
        CHECK_THROWS_AS(parse_native("entity A\nentity B\ngen A -> B\ngen B -> A\n"),
                        DiagramError);
    }
}

TEST_CASE("xmi writer output is the checked-in fixture, byte for byte") {
    CHECK(write_xmi(fixtures::two_siblings()) == fixture_bytes("two_siblings.xmi"));
    CHECK(write_xmi(fixtures::two_siblings_plus_one()) ==
          fixture_bytes("two_siblings_plus_one.xmi"));
}

TEST_CASE("xmi round-trip preserves signature and structure") {
    for (const auto& [name, diagram] : fixtures::all()) {
        INFO(name);
        ClassDiagram back = parse_xmi(write_xmi(diagram));
        CHECK(semantic_signature(back) == semantic_signature(diagram));
        CHECK(testsupport::same_structure(back, diagram));
        // Stability: a second trip changes nothing, byte for byte.
        CHECK(write_xmi(back) == write_xmi(diagram));
    }
}

TEST_CASE("xmi writer counts elements as expected") {
    std::string text = write_xmi(fixtures::two_siblings());
    auto count = [&](const std::string& needle) {
        std::size_t n = 0, pos = 0;
        while ((pos = text.find(needle, pos)) != std::string::npos) ++n, pos += needle.size();
        return n;
    };
    CHECK(count("<entity ") == 3);
    CHECK(count("<property ") == 2);
    CHECK(count("<generalization ") == 2);

    SUBCASE("empty diagram is an empty model root") {
        CHECK(write_xmi(ClassDiagram{}) ==
              "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<model/>\n");
        ClassDiagram back = parse_xmi(write_xmi(ClassDiagram{}));
        CHECK(back.entities().empty());
    }
}

TEST_CASE("xmi parser accepts the documented subset only") {
    CHECK(parse_xmi("<model/>").entities().empty());
    ClassDiagram one = parse_xmi("<model>\n  <entity id=\"e1\" name=\"A\"/>\n</model>");
    CHECK(one.entities().size() == 1);
    CHECK(one.find_entity("A") != nullptr);

    SUBCASE("dangling references name the offending id") {
        CHECK_THROWS_WITH_AS(
            parse_xmi("<model><entity id=\"e1\" name=\"A\"/>"
                      "<property id=\"p1\" owner=\"e9\" name=\"x\" type=\"T\"/></model>"),
            "line 1, col 34: dangling ref e9", ParseError);
    }
    SUBCASE("unknown elements and attributes are refused") {
        CHECK_THROWS_AS(parse_xmi("<model><widget id=\"w1\"/></model>"), ParseError);
        CHECK_THROWS_AS(
            parse_xmi("<model><entity id=\"e1\" name=\"A\" color=\"red\"/></model>"),
            ParseError);
        CHECK_THROWS_AS(parse_xmi("<diagram/>"), ParseError);
    }
    SUBCASE("duplicate and missing ids are refused") {
        CHECK_THROWS_AS(parse_xmi("<model><entity id=\"e1\" name=\"A\"/>"
                                  "<entity id=\"e1\" name=\"B\"/></model>"),
                        ParseError);
        CHECK_THROWS_AS(parse_xmi("<model><entity name=\"A\"/></model>"), ParseError);
    }
    SUBCASE("synthetic must be a boolean") {
        CHECK_THROWS_AS(
            parse_xmi("<model><entity id=\"e1\" name=\"A\" synthetic=\"maybe\"/></model>"),
            ParseError);
        ClassDiagram d = parse_xmi(
            "<model><entity id=\"e1\" name=\"A\" synthetic=\"true\"/></model>");
        CHECK(d.find_entity("A")->synthetic);
    }
    SUBCASE("declaration, comments and whitespace are tolerated") {
        ClassDiagram d = parse_xmi("<?xml version=\"1.0\"?>\n<!-- note -->\n<model>\n"
                                   "  <!-- another -->\n  <entity id=\"e1\" name=\"A\"/>\n"
                                   "</model>\n");
        CHECK(d.entities().size() == 1);
    }
    SUBCASE("trailing content is an error") {
        CHECK_THROWS_AS(parse_xmi("<model/><model/>"), ParseError);
    }
    SUBCASE("semantically broken documents are rejected like validate") {
        CHECK_THROWS_AS(parse_xmi("<model>"
                                  "<entity id=\"e1\" name=\"A\"/>"
                                  "<entity id=\"e2\" name=\"B\"/>"
                                  "<generalization id=\"g1\" specific=\"e1\" general=\"e2\"/>"
                                  "<generalization id=\"g2\" specific=\"e2\" general=\"e1\"/>"
                                  "</model>"),
                        DiagramError);
    }
}

TEST_CASE("xmi escapes awkward characters in attribute values") {
    ClassDiagram d;
    EntityId a = d.add_entity("a&b<c>'d");
    d.add_property(a, "x", "T<p>&q");
    REQUIRE(validate(d).ok());

    std::string text = write_xmi(d);
    CHECK(text.find("a&amp;b&lt;c&gt;&apos;d") != std::string::npos);
    ClassDiagram back = parse_xmi(text);
    CHECK(testsupport::same_structure(back, d));
}

TEST_CASE("native and xmi forms of one fixture parse to isomorphic diagrams") {
    ClassDiagram from_native = parse_native(fixture_bytes("two_siblings_plus_one.native"));
    ClassDiagram from_xmi = parse_xmi(fixture_bytes("two_siblings_plus_one.xmi"));
    CHECK(isomorphic(from_native, from_xmi));
    CHECK(semantic_signature(from_native) == semantic_signature(from_xmi));
}

TEST_CASE("dot export renders entities, edges and synthetic styling") {
    ClassDiagram f1 = fixtures::two_siblings();
    std::string dot = export_dot(f1);
    auto count = [&](const std::string& needle) {
        std::size_t n = 0, pos = 0;
        while ((pos = dot.find(needle, pos)) != std::string::npos) ++n, pos += needle.size();
        return n;
    };
    CHECK(count("label=") == 3);
    CHECK(count(" -> ") == 2);
    CHECK(dot.find("x: Int") != std::string::npos);

    SUBCASE("empty diagram, empty digraph") {
        CHECK(export_dot(ClassDiagram{}) == "digraph classdiagram {\n}\n");
    }
    SUBCASE("synthetic entities are dashed") {
        NormalizeResult result = normalize(fixtures::two_siblings_plus_one(), Policy{});
        std::string styled = export_dot(result.diagram);
        CHECK(styled.find("style=dashed") != std::string::npos);
    }
    SUBCASE("deterministic output") {
        CHECK(export_dot(fixtures::medium_hierarchy()) ==
              export_dot(fixtures::medium_hierarchy()));
    }
}
