#include <string>
#include <unordered_map>
#include <vector>

#include "redraft/generator.hpp"

namespace redraft {

namespace {

std::string padded(std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return digits;
}

std::size_t width_for(std::size_t max_value, std::size_t minimum) {
    std::size_t width = std::to_string(max_value).size();
    return width < minimum ? minimum : width;
}

}  // namespace

ClassDiagram generate_ladder(std::size_t classes, std::size_t attrs_per_class, bool with_root) {
    if (classes == 0) throw DiagramError("ladder needs at least one class");
    if (attrs_per_class == 0) throw DiagramError("ladder needs at least one attribute per class");

    ClassDiagram d;
    EntityId root{};
    if (with_root) root = d.add_entity("Base");

    std::size_t class_width = width_for(classes, 4);
    std::size_t attr_width = width_for(attrs_per_class, 2);
    for (std::size_t i = 1; i <= classes; ++i) {
        EntityId klass = d.add_entity("C" + padded(i, class_width));
        for (std::size_t j = 1; j <= attrs_per_class; ++j) {
            const char* type = (j % 2 == 1) ? "Int" : "Str";
            d.add_property(klass, "a" + padded(j, attr_width), type);
        }
        if (with_root) d.add_generalization(klass, root);
    }
    return d;
}

ClassDiagram generate_replicate(const ClassDiagram& base, std::size_t copies) {
    if (copies == 0) throw DiagramError("replicate needs at least one copy");
    ValidationReport report = validate(base);
    if (!report.ok()) throw DiagramError("replicate base is invalid: " + report.summary());

    ClassDiagram d;
    std::unordered_map<EntityId, EntityId> mapped;
    mapped.reserve(base.entities().size());
    for (std::size_t copy = 1; copy <= copies; ++copy) {
        std::string suffix = "_" + std::to_string(copy);
        mapped.clear();
        for (const Entity& e : base.entities())
            mapped.emplace(e.id, d.add_entity(e.name + suffix, e.synthetic));
        for (const Property& p : base.properties())
            d.add_property(mapped.at(p.owner), p.name, p.type);
        for (const Generalization& g : base.generalizations())
            d.add_generalization(mapped.at(g.specific), mapped.at(g.general));
    }
    return d;
}

ClassDiagram generate_case(const CaseSpec& spec) {
    switch (spec.shape) {
        case CaseSpec::Shape::PullUpLadder:
            return generate_ladder(spec.classes, spec.attrs_per_class, spec.with_root);
        case CaseSpec::Shape::Replicate:
            return generate_replicate(spec.base, spec.copies);
    }
    throw DiagramError("unknown case shape");
}

}  // namespace redraft
