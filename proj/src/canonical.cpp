#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "redraft/engine.hpp"

namespace redraft {

namespace {

void append_length_prefixed(std::string& out, const std::string& s) {
    out += std::to_string(s.size());
    out += ':';
    out += s;
}

}  // namespace

// Encoding: enc(e) = "(" label children-encodings-sorted ")", where the label
// of a synthetic entity is its sorted own attributes and the label of a
// non-synthetic entity additionally carries its name. All strings are
// length-prefixed, so the key is unambiguous for arbitrary names. The diagram
// key is the sorted concatenation of the root encodings.
CanonicalKey canonical_key(const ClassDiagram& d) {
    const std::vector<Entity>& entities = d.entities();
    const std::size_t n = entities.size();

    std::unordered_map<EntityId, std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index.emplace(entities[i].id, i);

    std::vector<std::vector<std::size_t>> children(n);
    std::vector<std::size_t> pending(n, 0);  // unencoded children per entity
    std::vector<std::optional<std::size_t>> parent(n);
    for (const Generalization& g : d.generalizations()) {
        auto sp = index.find(g.specific);
        auto ge = index.find(g.general);
        if (sp == index.end() || ge == index.end())
            throw DiagramError("canonical_key requires a validated diagram (dangling reference)");
        if (parent[sp->second])
            throw DiagramError("canonical_key requires a validated diagram (multiple inheritance)");
        parent[sp->second] = ge->second;
        children[ge->second].push_back(sp->second);
        ++pending[ge->second];
    }

    std::vector<AttributeSet> attrs(n);
    for (const Property& p : d.properties()) {
        auto it = index.find(p.owner);
        if (it == index.end())
            throw DiagramError("canonical_key requires a validated diagram (dangling owner)");
        attrs[it->second].emplace(p.name, p.type);
    }

    std::vector<std::string> label(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Entity& e = entities[i];
        std::string& l = label[i];
        if (e.synthetic) {
            l += "S";
        } else {
            l += "N";
            append_length_prefixed(l, e.name);
        }
        l += "A" + std::to_string(attrs[i].size());
        for (const AttributePair& a : attrs[i]) {
            append_length_prefixed(l, a.first);
            append_length_prefixed(l, a.second);
        }
    }

    // Bottom-up: an entity is encodable once all its subclasses are encoded.
    std::vector<std::string> enc(n);
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (pending[i] == 0) ready.push_back(i);
    std::size_t processed = 0;
    while (!ready.empty()) {
        std::size_t i = ready.back();
        ready.pop_back();
        ++processed;
        std::vector<std::string> parts;
        parts.reserve(children[i].size());
        for (std::size_t c : children[i]) parts.push_back(std::move(enc[c]));
        std::sort(parts.begin(), parts.end());
        std::string& e = enc[i];
        e += "(";
        e += label[i];
        for (std::string& p : parts) e += p;
        e += ")";
        if (parent[i] && --pending[*parent[i]] == 0) ready.push_back(*parent[i]);
    }
    if (processed != n)
        throw DiagramError("canonical_key requires a validated diagram (generalization cycle)");

    std::vector<std::string> roots;
    for (std::size_t i = 0; i < n; ++i)
        if (!parent[i]) roots.push_back(std::move(enc[i]));
    std::sort(roots.begin(), roots.end());
    CanonicalKey key;
    for (std::string& r : roots) key += r;
    return key;
}

bool isomorphic(const ClassDiagram& d1, const ClassDiagram& d2) {
    return canonical_key(d1) == canonical_key(d2);
}

}  // namespace redraft
