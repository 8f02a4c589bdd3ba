#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <tuple>

#include "redraft/fixtures.hpp"
#include "redraft/rules.hpp"
#include "support/test_support.hpp"

using namespace redraft;
using testsupport::Rng;

namespace {

std::set<EntityId> ids_of(const ClassDiagram& d, std::initializer_list<const char*> names) {
    std::set<EntityId> out;
    for (const char* name : names) {
        const Entity* e = d.find_entity(name);
        REQUIRE(e != nullptr);
        out.insert(e->id);
    }
    return out;
}

// (specific name, general name) pairs for easy whole-relation comparison.
std::set<std::pair<std::string, std::string>> gen_pairs(const ClassDiagram& d) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Generalization& g : d.generalizations())
        out.emplace(d.find_entity(g.specific)->name, d.find_entity(g.general)->name);
    return out;
}

std::size_t step_count(const Step& step) {
    return step.kind() == Step::Kind::PullUp ? step.pullup().count : step.extract().count;
}

}  // namespace

TEST_CASE("pull-up matches require every direct subclass to own the pair") {
    ClassDiagram f1 = fixtures::two_siblings();
    std::vector<PullUpMatch> matches = find_pullup_matches(f1);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].superclass == f1.find_entity("A")->id);
    CHECK(matches[0].property_name == "x");
    CHECK(matches[0].type_name == "Int");
    CHECK(matches[0].members == ids_of(f1, {"B", "C"}));
    CHECK(matches[0].count == 2);

    SUBCASE("one incomplete subclass kills the match") {
        CHECK(find_pullup_matches(fixtures::two_siblings_plus_one()).empty());
    }
    SUBCASE("a single subclass is not enough") {
        ClassDiagram d;
        EntityId a = d.add_entity("A");
        EntityId b = d.add_entity("B");
        d.add_property(b, "x", "Int");
        d.add_generalization(b, a);
        CHECK(find_pullup_matches(d).empty());
    }
    SUBCASE("superclass already owning the name blocks the pull-up") {
        ClassDiagram d = fixtures::two_siblings();
        d.add_property(d.find_entity("A")->id, "x", "Str");  // same name, other type
        CHECK(find_pullup_matches(d).empty());
    }
}

TEST_CASE("apply_pullup moves the property to the superclass") {
    ClassDiagram f1 = fixtures::two_siblings();
    std::vector<PullUpMatch> matches = find_pullup_matches(f1);
    REQUIRE(matches.size() == 1);

    std::size_t props_before = f1.properties().size();
    ClassDiagram out = apply_pullup(f1, matches[0]);

    CHECK(testsupport::own_attrs(out, "A") == AttributeSet{{"x", "Int"}});
    CHECK(testsupport::own_attrs(out, "B").empty());
    CHECK(testsupport::own_attrs(out, "C").empty());
    CHECK(out.properties().size() == props_before - (matches[0].count - 1));
    CHECK(validate(out).ok());

    // Inherited view: B and C keep (x, Int), A gains it.
    SemanticSignature sig = semantic_signature(out);
    CHECK(sig.at("A") == AttributeSet{{"x", "Int"}});
    CHECK(sig.at("B") == AttributeSet{{"x", "Int"}});
    CHECK(sig.at("C") == AttributeSet{{"x", "Int"}});

    SUBCASE("the input diagram is untouched") {
        CHECK(testsupport::own_attrs(f1, "A").empty());
        CHECK(f1.properties().size() == props_before);
    }
    SUBCASE("applying the same match twice is stale") {
        CHECK_THROWS_AS(apply_pullup(out, matches[0]), DiagramError);
    }
    SUBCASE("a mutated site is detected") {
        ClassDiagram d = fixtures::two_siblings();
        d.remove_property(d.properties().front().id);  // B loses x
        CHECK_THROWS_WITH_AS(apply_pullup(d, matches[0]),
                             "stale match: member lost property 'x'", DiagramError);
    }
}

TEST_CASE("extract candidates group qualifying subclasses per (name, type)") {
    ClassDiagram f2 = fixtures::two_siblings_plus_one();
    std::vector<ExtractCandidate> candidates =
        find_extract_candidates(f2, ExtractCandidate::Kind::Subclass);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].anchor == f2.find_entity("A")->id);
    CHECK(candidates[0].property_name == "x");
    CHECK(candidates[0].type_name == "Int");
    CHECK(candidates[0].members == ids_of(f2, {"B", "C"}));
    CHECK(candidates[0].count == 2);

    SUBCASE("full cover belongs to the pull-up rule") {
        CHECK(find_extract_candidates(fixtures::two_siblings(),
                                      ExtractCandidate::Kind::Subclass)
                  .empty());
    }
    SUBCASE("full cover with an occupied superclass stays extractable") {
        ClassDiagram d = fixtures::two_siblings();
        d.add_property(d.find_entity("A")->id, "x", "Str");
        std::vector<ExtractCandidate> cs =
            find_extract_candidates(d, ExtractCandidate::Kind::Subclass);
        REQUIRE(cs.size() == 1);
        CHECK(cs[0].members == ids_of(d, {"B", "C"}));
    }
}

TEST_CASE("root candidates group property-owning roots") {
    ClassDiagram f3 = fixtures::three_roots();
    std::vector<ExtractCandidate> candidates =
        find_extract_candidates(f3, ExtractCandidate::Kind::Root);
    REQUIRE(candidates.size() == 1);
    CHECK_FALSE(candidates[0].anchor.has_value());
    CHECK(candidates[0].property_name == "x");
    CHECK(candidates[0].type_name == "Str");
    CHECK(candidates[0].members == ids_of(f3, {"B", "C"}));
    CHECK(candidates[0].count == 2);

    SUBCASE("non-roots never qualify") {
        CHECK(find_extract_candidates(fixtures::two_siblings(), ExtractCandidate::Kind::Root)
                  .empty());
    }
}

TEST_CASE("maximal_candidates keeps the largest counts, in order") {
    ClassDiagram f2 = fixtures::two_siblings_plus_one();
    std::vector<ExtractCandidate> cs =
        find_extract_candidates(f2, ExtractCandidate::Kind::Subclass);
    REQUIRE(cs.size() == 1);

    ExtractCandidate small = cs[0];
    ExtractCandidate large = cs[0];
    large.members.insert(f2.find_entity("D")->id);
    large.count = 3;

    std::vector<ExtractCandidate> picked = maximal_candidates({small, large, small});
    REQUIRE(picked.size() == 1);
    CHECK(picked[0].count == 3);

    SUBCASE("ties are preserved, not resolved") {
        std::vector<ExtractCandidate> tied = maximal_candidates({small, small});
        CHECK(tied.size() == 2);
    }
    SUBCASE("empty in, empty out") { CHECK(maximal_candidates({}).empty()); }
}

TEST_CASE("apply_extract inserts a synthetic intermediate class") {
    ClassDiagram f2 = fixtures::two_siblings_plus_one();
    std::vector<ExtractCandidate> cs =
        find_extract_candidates(f2, ExtractCandidate::Kind::Subclass);
    REQUIRE(cs.size() == 1);

    ClassDiagram out = apply_extract(f2, cs[0]);
    CHECK(validate(out).ok());
    CHECK(out.entities().size() == 5);
    const Entity* fresh = out.find_entity("x_Int");
    REQUIRE(fresh != nullptr);
    CHECK(fresh->synthetic);
    CHECK(testsupport::own_attrs(out, "x_Int") == AttributeSet{{"x", "Int"}});
    CHECK(testsupport::own_attrs(out, "B").empty());
    CHECK(testsupport::own_attrs(out, "C").empty());
    CHECK(gen_pairs(out) == std::set<std::pair<std::string, std::string>>{
                                {"B", "x_Int"}, {"C", "x_Int"}, {"x_Int", "A"}, {"D", "A"}});
    CHECK(out.properties().size() == f2.properties().size() - (cs[0].count - 1));

    SUBCASE("the fresh name dodges collisions") {
        ClassDiagram crowded = fixtures::two_siblings_plus_one();
        crowded.add_entity("x_Int");
        std::vector<ExtractCandidate> again =
            find_extract_candidates(crowded, ExtractCandidate::Kind::Subclass);
        REQUIRE(again.size() == 1);
        ClassDiagram out2 = apply_extract(crowded, again[0]);
        const Entity* renamed = out2.find_entity("x_Int_1");
        REQUIRE(renamed != nullptr);
        CHECK(renamed->synthetic);
    }
    SUBCASE("stale candidates are rejected") {
        CHECK_THROWS_AS(apply_extract(out, cs[0]), DiagramError);
    }
}

TEST_CASE("apply_extract for roots creates a fresh root superclass") {
    ClassDiagram f3 = fixtures::three_roots();
    std::vector<ExtractCandidate> cs = find_extract_candidates(f3, ExtractCandidate::Kind::Root);
    REQUIRE(cs.size() == 1);

    ClassDiagram out = apply_extract(f3, cs[0]);
    CHECK(validate(out).ok());
    const Entity* fresh = out.find_entity("x_Str");
    REQUIRE(fresh != nullptr);
    CHECK(fresh->synthetic);
    CHECK(out.superclass_of(fresh->id) == std::nullopt);
    CHECK(testsupport::own_attrs(out, "x_Str") == AttributeSet{{"x", "Str"}});
    CHECK(gen_pairs(out) ==
          std::set<std::pair<std::string, std::string>>{{"B", "x_Str"}, {"C", "x_Str"}});
    // D keeps its place as an untouched, propertyless root.
    CHECK(out.superclass_of(out.find_entity("D")->id) == std::nullopt);
    CHECK(testsupport::own_attrs(out, "D").empty());
}

TEST_CASE("applicable_steps honors rule priority") {
    Policy priority;  // defaults: Priority + Deterministic

    SUBCASE("pull-up wins when it matches") {
        std::vector<Step> steps = applicable_steps(fixtures::two_siblings(), priority);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].kind() == Step::Kind::PullUp);
    }
    SUBCASE("subclass extraction is next in line") {
        std::vector<Step> steps = applicable_steps(fixtures::two_siblings_plus_one(), priority);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].kind() == Step::Kind::ExtractSub);
    }
    SUBCASE("root extraction comes last") {
        std::vector<Step> steps = applicable_steps(fixtures::three_roots(), priority);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].kind() == Step::Kind::ExtractRoot);
    }
    SUBCASE("normal forms have no steps") {
        ClassDiagram done;
        EntityId a = done.add_entity("A");
        done.add_property(a, "x", "Int");
        CHECK(applicable_steps(done, priority).empty());
    }
    SUBCASE("free mode unions the rule kinds") {
        Policy free;
        free.mode = Policy::Mode::Free;
        std::vector<Step> steps = applicable_steps(fixtures::overlapping_groups(), free);
        CHECK(steps.size() == 2);
        CHECK(steps[0].kind() == Step::Kind::ExtractSub);
        CHECK(steps[1].kind() == Step::Kind::ExtractSub);
    }
    SUBCASE("priority mode in the small hierarchy finds all three pull-ups") {
        std::vector<Step> steps = applicable_steps(fixtures::small_hierarchy(), priority);
        REQUIRE(steps.size() == 3);
        for (const Step& s : steps) CHECK(s.kind() == Step::Kind::PullUp);
        // Deterministic order: (superclass name, property name, type name).
        ClassDiagram d = fixtures::small_hierarchy();
        CHECK(describe(d, steps[0]) == "pullup A.x:Int {B,C}");
        CHECK(describe(d, steps[1]) == "pullup A.y:Str {B,C}");
        CHECK(describe(d, steps[2]) == "pullup D.z:Int {E,F}");
    }
}

TEST_CASE("describe labels extraction steps") {
    Policy priority;
    ClassDiagram f2 = fixtures::two_siblings_plus_one();
    std::vector<Step> sub = applicable_steps(f2, priority);
    REQUIRE(sub.size() == 1);
    CHECK(describe(f2, sub[0]) == "extract-sub A x:Int {B,C}");

    ClassDiagram f3 = fixtures::three_roots();
    std::vector<Step> root = applicable_steps(f3, priority);
    REQUIRE(root.size() == 1);
    CHECK(describe(f3, root[0]) == "extract-root x:Str {B,C}");
}

TEST_CASE("every step drops the property count by count minus one") {
    Rng rng(7788991122);
    Policy free;
    free.mode = Policy::Mode::Free;
    free.ties = Policy::Ties::BranchAll;

    int steps_seen = 0;
    for (int i = 0; i < 300; ++i) {
        ClassDiagram d = testsupport::random_diagram(rng);
        for (const Step& step : applicable_steps(d, free)) {
            ClassDiagram out = apply_step(d, step);
            ++steps_seen;
            CHECK(out.properties().size() ==
                  d.properties().size() - (step_count(step) - 1));
            CHECK(step_count(step) >= 2);
            CHECK(validate(out).ok());
            CHECK(out.entities().size() >=
                  d.entities().size());  // steps never delete entities
        }
    }
    CHECK(steps_seen > 100);  // the corpus actually exercises the rules
}

TEST_CASE("single steps preserve the flattened view of input leaves") {
    Rng rng(5566442211);
    Policy free;
    free.mode = Policy::Mode::Free;
    free.ties = Policy::Ties::BranchAll;

    for (int i = 0; i < 300; ++i) {
        ClassDiagram d = testsupport::random_diagram(rng);
        SemanticSignature before = semantic_signature(d);

        std::set<std::string> leaves;
        for (const Entity& e : d.entities())
            if (direct_subclasses(d, e.id).empty()) leaves.insert(e.name);

        for (const Step& step : applicable_steps(d, free)) {
            ClassDiagram out = apply_step(d, step);
            SemanticSignature after = semantic_signature(out);
            for (const auto& [name, attrs] : before) {
                INFO("entity ", name, " in case ", i);
                const AttributeSet& flat = after.at(name);
                CHECK(std::includes(flat.begin(), flat.end(), attrs.begin(), attrs.end()));
                if (leaves.count(name)) CHECK(flat == attrs);
            }
        }
    }
}

TEST_CASE("a site is never both a pull-up and a subclass extraction") {
    Rng rng(99887766);
    for (int i = 0; i < 300; ++i) {
        ClassDiagram d = testsupport::random_diagram(rng);
        std::set<std::tuple<EntityId, std::string, std::string>> pullup_sites;
        for (const PullUpMatch& m : find_pullup_matches(d))
            pullup_sites.emplace(m.superclass, m.property_name, m.type_name);
        for (const ExtractCandidate& c :
             find_extract_candidates(d, ExtractCandidate::Kind::Subclass)) {
            REQUIRE(c.anchor.has_value());
            CHECK(pullup_sites.count({*c.anchor, c.property_name, c.type_name}) == 0);
        }
    }
}
