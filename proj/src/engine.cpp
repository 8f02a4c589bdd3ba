#include "redraft/engine.hpp"

#include <chrono>
#include <deque>
#include <exception>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace redraft {

namespace {

using Clock = std::chrono::steady_clock;

void require_valid(const ClassDiagram& d, const char* operation) {
    ValidationReport report = validate(d);
    if (!report.ok())
        throw DiagramError(std::string(operation) + ": invalid diagram: " + report.summary());
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool over_deadline(const ExploreLimits& limits, Clock::time_point start) {
    return limits.max_seconds > 0.0 && seconds_since(start) > limits.max_seconds;
}

struct Successor {
    std::string label;
    CanonicalKey key;
    ClassDiagram diagram;
};

std::vector<Successor> expand(const ClassDiagram& d, const Policy& policy) {
    std::vector<Step> steps = applicable_steps(d, policy);
    if (policy.ties == Policy::Ties::Deterministic && steps.size() > 1) steps.resize(1);
    std::vector<Successor> out;
    out.reserve(steps.size());
    for (const Step& step : steps) {
        Successor s;
        s.label = describe(d, step);
        s.diagram = apply_step(d, step);
        s.key = canonical_key(s.diagram);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

NormalizeResult normalize(ClassDiagram d, const Policy& policy) {
    if (policy.ties != Policy::Ties::Deterministic)
        throw DiagramError("normalize requires deterministic tie handling");
    require_valid(d, "normalize");

    const std::size_t budget = d.properties().size();
    NormalizeResult result;
    while (true) {
        std::vector<Step> steps = applicable_steps(d, policy);
        if (steps.empty()) break;
        d = apply_step(std::move(d), steps.front());
        result.trace.entries.push_back({std::move(steps.front()), d.size()});
        if (result.trace.entries.size() > budget)
            throw std::logic_error("normalize exceeded its property-count step budget");
    }
    result.diagram = std::move(d);
    return result;
}

bool StateSpace::same_shape(const StateSpace& other) const {
    if (initial != other.initial || complete != other.complete) return false;
    if (transitions != other.transitions || finals != other.finals) return false;
    if (states.size() != other.states.size()) return false;
    auto it = other.states.begin();
    for (const auto& [key, diagram] : states) {
        if (it->first != key) return false;
        if (canonical_key(diagram) != canonical_key(it->second)) return false;
        ++it;
    }
    return true;
}

StateSpace explore_serial(const ClassDiagram& d, const Policy& policy,
                          const ExploreLimits& limits) {
    require_valid(d, "explore");
    const auto start = Clock::now();

    StateSpace space;
    space.initial = canonical_key(d);
    space.states.emplace(space.initial, d);
    std::deque<CanonicalKey> queue{space.initial};

    while (!queue.empty()) {
        if (over_deadline(limits, start)) {
            space.complete = false;
            break;
        }
        CanonicalKey key = std::move(queue.front());
        queue.pop_front();

        std::vector<Successor> successors = expand(space.states.at(key), policy);
        if (successors.empty()) {
            space.finals.insert(key);
            continue;
        }
        for (Successor& s : successors) {
            space.transitions.emplace(key, std::move(s.label), s.key);
            if (space.states.count(s.key)) continue;
            if (space.states.size() >= limits.max_states) {
                space.complete = false;
                queue.clear();
                break;
            }
            space.states.emplace(s.key, std::move(s.diagram));
            queue.push_back(std::move(s.key));
        }
        if (!space.complete) break;
    }

    space.stats.state_count = space.states.size();
    space.stats.transition_count = space.transitions.size();
    space.stats.wall_seconds = seconds_since(start);
    return space;
}

// Level-synchronous variant: every state of the current frontier is expanded
// in parallel (matching, application and canonicalization are the heavy part),
// then successors are merged serially in frontier order. The merge performs
// the same insert-if-absent sequence as the queue-based reference, so both
// explorers produce identical state spaces.
StateSpace explore(const ClassDiagram& d, const Policy& policy, const ExploreLimits& limits) {
    require_valid(d, "explore");
    const auto start = Clock::now();

    StateSpace space;
    space.initial = canonical_key(d);
    space.states.emplace(space.initial, d);
    std::vector<CanonicalKey> frontier{space.initial};

    while (!frontier.empty()) {
        if (over_deadline(limits, start)) {
            space.complete = false;
            break;
        }

        std::vector<std::vector<Successor>> expanded(frontier.size());
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(frontier.size()); ++i) {
            try {
                expanded[i] = expand(space.states.at(frontier[i]), policy);
            } catch (...) {
#pragma omp critical(redraft_explore_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        std::vector<CanonicalKey> next;
        for (std::size_t i = 0; i < frontier.size() && space.complete; ++i) {
            if (expanded[i].empty()) {
                space.finals.insert(frontier[i]);
                continue;
            }
            for (Successor& s : expanded[i]) {
                space.transitions.emplace(frontier[i], std::move(s.label), s.key);
                if (space.states.count(s.key)) continue;
                if (space.states.size() >= limits.max_states) {
                    space.complete = false;
                    break;
                }
                space.states.emplace(s.key, std::move(s.diagram));
                next.push_back(std::move(s.key));
            }
        }
        if (!space.complete) break;
        frontier = std::move(next);
    }

    space.stats.state_count = space.states.size();
    space.stats.transition_count = space.transitions.size();
    space.stats.wall_seconds = seconds_since(start);
    return space;
}

ConfluenceReport check_confluence(const StateSpace& space) {
    if (!space.complete) throw DiagramError("cannot decide on partial exploration");
    ConfluenceReport report;
    report.final_count = space.finals.size();
    report.confluent = space.finals.size() == 1;
    if (!report.confluent) {
        for (const CanonicalKey& key : space.finals) {
            report.witnesses.push_back(space.states.at(key));
            if (report.witnesses.size() == 2) break;
        }
    }
    return report;
}

}  // namespace redraft
