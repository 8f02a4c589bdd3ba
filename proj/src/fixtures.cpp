#include "redraft/fixtures.hpp"

namespace redraft::fixtures {

ClassDiagram two_siblings() {
    ClassDiagram d;
    EntityId a = d.add_entity("A");
    EntityId b = d.add_entity("B");
    EntityId c = d.add_entity("C");
    d.add_property(b, "x", "Int");
    d.add_property(c, "x", "Int");
    d.add_generalization(b, a);
    d.add_generalization(c, a);
    return d;
}

ClassDiagram two_siblings_plus_one() {
    ClassDiagram d;
    EntityId a = d.add_entity("A");
    EntityId b = d.add_entity("B");
    EntityId c = d.add_entity("C");
    EntityId e = d.add_entity("D");
    d.add_property(b, "x", "Int");
    d.add_property(c, "x", "Int");
    d.add_generalization(b, a);
    d.add_generalization(c, a);
    d.add_generalization(e, a);
    return d;
}

ClassDiagram three_roots() {
    ClassDiagram d;
    EntityId b = d.add_entity("B");
    EntityId c = d.add_entity("C");
    d.add_entity("D");
    d.add_property(b, "x", "Str");
    d.add_property(c, "x", "Str");
    return d;
}

ClassDiagram two_groups() {
    ClassDiagram d;
    EntityId a = d.add_entity("A");
    EntityId b = d.add_entity("B");
    EntityId c = d.add_entity("C");
    EntityId e = d.add_entity("D");
    EntityId f = d.add_entity("E");
    d.add_property(b, "x", "Int");
    d.add_property(c, "x", "Int");
    d.add_property(e, "y", "Str");
    d.add_property(f, "y", "Str");
    d.add_generalization(b, a);
    d.add_generalization(c, a);
    d.add_generalization(e, a);
    d.add_generalization(f, a);
    return d;
}

ClassDiagram overlapping_groups() {
    ClassDiagram d;
    EntityId a = d.add_entity("A");
    EntityId b = d.add_entity("B");
    EntityId c = d.add_entity("C");
    EntityId e = d.add_entity("D");
    d.add_property(b, "x", "Int");
    d.add_property(c, "x", "Int");
    d.add_property(c, "y", "Str");
    d.add_property(e, "y", "Str");
    d.add_generalization(b, a);
    d.add_generalization(c, a);
    d.add_generalization(e, a);
    return d;
}

ClassDiagram small_hierarchy() {
    ClassDiagram d;
    EntityId a = d.add_entity("A");
    EntityId b = d.add_entity("B");
    EntityId c = d.add_entity("C");
    EntityId e = d.add_entity("D");
    EntityId f = d.add_entity("E");
    EntityId g = d.add_entity("F");
    d.add_property(a, "w", "Str");
    d.add_property(b, "x", "Int");
    d.add_property(b, "y", "Str");
    d.add_property(c, "x", "Int");
    d.add_property(c, "y", "Str");
    d.add_property(e, "v", "Int");
    d.add_property(f, "z", "Int");
    d.add_property(g, "z", "Int");
    d.add_generalization(b, a);
    d.add_generalization(c, a);
    d.add_generalization(f, e);
    d.add_generalization(g, e);
    return d;
}

ClassDiagram medium_hierarchy() {
    ClassDiagram d;
    EntityId a = d.add_entity("A");
    EntityId b = d.add_entity("B");
    EntityId c = d.add_entity("C");
    EntityId e = d.add_entity("D");
    EntityId f = d.add_entity("E");
    EntityId g = d.add_entity("F");
    EntityId h = d.add_entity("H");
    EntityId k = d.add_entity("K");
    EntityId l = d.add_entity("L");
    EntityId m = d.add_entity("M");
    d.add_property(b, "x", "Int");
    d.add_property(c, "x", "Int");
    d.add_property(e, "d", "Int");
    d.add_property(f, "s", "Str");
    d.add_property(g, "s", "Str");
    d.add_property(h, "s", "Str");
    d.add_property(l, "q", "Int");
    d.add_property(m, "q", "Int");
    d.add_generalization(b, a);
    d.add_generalization(c, a);
    d.add_generalization(e, a);
    d.add_generalization(l, k);
    d.add_generalization(m, k);
    return d;
}

std::vector<std::pair<std::string, ClassDiagram>> all() {
    return {
        {"two_siblings", two_siblings()},
        {"two_siblings_plus_one", two_siblings_plus_one()},
        {"three_roots", three_roots()},
        {"two_groups", two_groups()},
        {"overlapping_groups", overlapping_groups()},
        {"small_hierarchy", small_hierarchy()},
        {"medium_hierarchy", medium_hierarchy()},
    };
}

}  // namespace redraft::fixtures
