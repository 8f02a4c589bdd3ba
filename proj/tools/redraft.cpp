// Command-line front end: parse a class diagram, normalize or explore it,
// check confluence, generate benchmark cases, or run the preset benchmarks.
//
// Exit codes: 0 success, 1 input/validation error, 2 incomplete exploration,
// 3 internal error.

#include <sys/resource.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redraft/diagram.hpp"
#include "redraft/engine.hpp"
#include "redraft/fixtures.hpp"
#include "redraft/generator.hpp"
#include "redraft/io.hpp"
#include "redraft/rules.hpp"

namespace {

using redraft::ClassDiagram;
using redraft::Policy;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitInternal = 3;

struct IncompleteExploration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Native, Xmi };

Format format_for(const std::string& path, const std::string& override_name) {
    if (override_name == "native") return Format::Native;
    if (override_name == "xmi") return Format::Xmi;
    std::filesystem::path p(path);
    if (p.extension() == ".xmi") return Format::Xmi;
    return Format::Native;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw redraft::DiagramError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spill(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw redraft::DiagramError("cannot write '" + path + "'");
    out << bytes;
}

ClassDiagram load(const std::string& path, const std::string& format) {
    std::string bytes = slurp(path);
    try {
        return format_for(path, format) == Format::Xmi ? redraft::parse_xmi(bytes)
                                                       : redraft::parse_native(bytes);
    } catch (const redraft::ParseError& e) {
        throw redraft::DiagramError(path + ": " + e.what());
    }
}

void store(const std::string& path, const ClassDiagram& d, const std::string& format) {
    Format f = format_for(path, format);
    if (f == Format::Xmi)
        spill(path, redraft::write_xmi(d));
    else
        spill(path, redraft::write_native(d));
}

double wall_ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

double peak_rss_mb() {
    struct rusage usage {};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss) / 1024.0;  // ru_maxrss is in KiB on Linux
}

std::size_t default_max_states() {
    if (const char* env = std::getenv("REDRAFT_MAX_STATES")) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
        std::cerr << "warning: ignoring invalid REDRAFT_MAX_STATES='" << env << "'\n";
    }
    return 100000;
}

struct PolicyFlags {
    std::string policy = "priority";
    std::string ties = "det";

    Policy to_policy() const {
        Policy p;
        p.mode = policy == "free" ? Policy::Mode::Free : Policy::Mode::Priority;
        p.ties = ties == "branch" ? Policy::Ties::BranchAll : Policy::Ties::Deterministic;
        return p;
    }
};

void add_policy_flags(CLI::App* cmd, PolicyFlags& flags) {
    cmd->add_option("--policy", flags.policy, "Rule policy: priority (default) or free")
        ->check(CLI::IsMember({"priority", "free"}));
    cmd->add_option("--ties", flags.ties, "Tie handling: det (default) or branch")
        ->check(CLI::IsMember({"det", "branch"}));
}

// One record per line, space-separated key=value fields.
void append_report(const std::string& path, const std::vector<std::pair<std::string, std::string>>& fields) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw redraft::DiagramError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << " ";
        out << fields[i].first << "=" << fields[i].second;
    }
    out << "\n";
}

std::string fmt_ms(double ms) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f", ms);
    return buffer;
}

int run_transform(const std::string& input, const std::string& output, const std::string& format,
                  const PolicyFlags& flags) {
    ClassDiagram d = load(input, format);
    std::size_t before = d.properties().size();
    auto start = std::chrono::steady_clock::now();
    redraft::NormalizeResult result = redraft::normalize(std::move(d), flags.to_policy());
    double ms = wall_ms_since(start);
    std::cout << "steps: " << result.trace.step_count() << "\n"
              << "properties: " << before << " -> " << result.diagram.properties().size() << "\n"
              << "wall_ms: " << fmt_ms(ms) << "\n";
    if (!output.empty()) store(output, result.diagram, format);
    return kExitOk;
}

int run_explore(const std::string& input, const std::string& format, const PolicyFlags& flags,
                const redraft::ExploreLimits& limits, const std::string& report_path,
                bool serial) {
    ClassDiagram d = load(input, format);
    Policy policy = flags.to_policy();
    redraft::StateSpace space = serial ? redraft::explore_serial(d, policy, limits)
                                       : redraft::explore(d, policy, limits);
    std::cout << "states: " << space.stats.state_count << "\n"
              << "transitions: " << space.stats.transition_count << "\n"
              << "finals: " << space.finals.size() << "\n"
              << "complete: " << (space.complete ? "yes" : "no") << "\n"
              << "wall_ms: " << fmt_ms(space.stats.wall_seconds * 1000.0) << "\n";
    if (!space.complete)
        std::cout << "incomplete: hit a state or time limit before exhausting the space\n";
    if (!report_path.empty())
        append_report(report_path,
                      {{"states", std::to_string(space.stats.state_count)},
                       {"transitions", std::to_string(space.stats.transition_count)},
                       {"finals", std::to_string(space.finals.size())},
                       {"complete", space.complete ? "yes" : "no"},
                       {"wall_ms", fmt_ms(space.stats.wall_seconds * 1000.0)}});
    if (!space.complete) throw IncompleteExploration("exploration incomplete");
    return kExitOk;
}

int run_confluence(const std::string& input, const std::string& output,
                   const std::string& format, const redraft::ExploreLimits& limits) {
    ClassDiagram d = load(input, format);
    // Confluence is a statement about every reachable outcome, so branch on
    // every tie and take the union of rule kinds.
    Policy policy;
    policy.mode = Policy::Mode::Free;
    policy.ties = Policy::Ties::BranchAll;
    redraft::StateSpace space = redraft::explore(d, policy, limits);
    if (!space.complete) {
        std::cout << "incomplete: hit a state or time limit before exhausting the space\n";
        throw IncompleteExploration("exploration incomplete");
    }
    redraft::ConfluenceReport report = redraft::check_confluence(space);
    std::cout << "states: " << space.stats.state_count << "\n"
              << "finals: " << report.final_count << "\n"
              << "confluent: " << (report.confluent ? "yes" : "no") << "\n";
    if (!output.empty()) {
        if (report.confluent) {
            store(output, space.states.at(*space.finals.begin()), format);
        } else {
            // out.native -> out.1.native, out.2.native
            std::filesystem::path base(output);
            std::filesystem::path ext = base.extension();
            std::filesystem::path stem = base.parent_path() / base.stem();
            for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
                std::filesystem::path path = stem;
                path += "." + std::to_string(i + 1);
                path += ext;
                store(path.string(), report.witnesses[i], format);
            }
        }
    }
    return kExitOk;
}

int run_generate(const std::string& shape, std::size_t classes, std::size_t attrs, bool no_root,
                 const std::string& base_path, std::size_t copies, std::uint64_t seed,
                 const std::string& output, const std::string& format) {
    redraft::CaseSpec spec;
    spec.seed = seed;
    if (shape == "ladder") {
        spec.shape = redraft::CaseSpec::Shape::PullUpLadder;
        spec.classes = classes;
        spec.attrs_per_class = attrs;
        spec.with_root = !no_root;
    } else {
        spec.shape = redraft::CaseSpec::Shape::Replicate;
        if (base_path.empty())
            throw redraft::DiagramError("--shape replicate requires --base PATH");
        spec.base = load(base_path, format);
        spec.copies = copies;
    }
    ClassDiagram d = redraft::generate_case(spec);
    std::cout << "entities: " << d.entities().size() << "\n"
              << "attributes: " << d.properties().size() << "\n"
              << "size: " << d.size() << "\n";
    if (!output.empty()) store(output, d, format);
    return kExitOk;
}

struct BenchPreset {
    std::string name;
    ClassDiagram (*make)();
};

ClassDiagram make_small() { return redraft::fixtures::small_hierarchy(); }
ClassDiagram make_medium() { return redraft::fixtures::medium_hierarchy(); }
ClassDiagram make_ladder() { return redraft::generate_ladder(500, 10); }
ClassDiagram make_replicated() {
    return redraft::generate_replicate(redraft::fixtures::medium_hierarchy(), 1000);
}

int run_bench(const std::string& only, const std::string& report_path) {
    const std::vector<BenchPreset> presets = {
        {"small", &make_small},
        {"medium", &make_medium},
        {"ladder", &make_ladder},
        {"replicated", &make_replicated},
    };

    std::vector<std::string> wanted;
    {
        std::stringstream names(only);
        std::string name;
        while (std::getline(names, name, ',')) {
            if (!name.empty()) wanted.push_back(name);
        }
    }
    auto selected = [&](const std::string& name) {
        if (only == "all") return true;
        for (const std::string& w : wanted)
            if (w == name) return true;
        return false;
    };
    for (const std::string& w : wanted) {
        bool known = false;
        for (const BenchPreset& p : presets) known |= (p.name == w);
        if (!known) throw redraft::DiagramError("unknown preset '" + w + "'");
    }

    for (const BenchPreset& preset : presets) {
        if (!selected(preset.name)) continue;
        ClassDiagram d;
        try {
            d = preset.make();
            std::size_t classes = d.entities().size();
            std::size_t attrs = d.properties().size();
            std::size_t size = d.size();
            auto start = std::chrono::steady_clock::now();
            redraft::NormalizeResult result = redraft::normalize(std::move(d), Policy{});
            double ms = wall_ms_since(start);
            std::vector<std::pair<std::string, std::string>> fields = {
                {"preset", preset.name},
                {"classes", std::to_string(classes)},
                {"attrs", std::to_string(attrs)},
                {"size", std::to_string(size)},
                {"steps", std::to_string(result.trace.step_count())},
                {"wall_ms", fmt_ms(ms)},
                {"peak_rss_mb", fmt_ms(peak_rss_mb())},
            };
            for (std::size_t i = 0; i < fields.size(); ++i)
                std::cout << (i ? " " : "") << fields[i].first << "=" << fields[i].second;
            std::cout << "\n";
            if (!report_path.empty()) append_report(report_path, fields);
        } catch (const std::exception& e) {
            throw redraft::DiagramError("preset '" + preset.name + "' failed: " + e.what());
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class-diagram restructuring: pull up shared attributes, extract"
                 " intermediate subclasses and shared roots, explore rule orderings,"
                 " and check confluence."};
    app.require_subcommand(1);

    std::string input, output, format, report_path;
    PolicyFlags flags;
    std::size_t max_states = default_max_states();
    double max_seconds = 0.0;
    bool serial = false;

    CLI::App* transform = app.add_subcommand("transform", "Rewrite a diagram to normal form");
    transform->add_option("input", input, "Diagram file (.native or .xmi)")->required();
    transform->add_option("-o,--output", output, "Where to write the normal form");
    transform->add_option("--format", format, "Force a format instead of inferring from the extension")
        ->check(CLI::IsMember({"native", "xmi"}));
    add_policy_flags(transform, flags);

    CLI::App* explore = app.add_subcommand("explore", "Enumerate every reachable diagram");
    explore->add_option("input", input, "Diagram file (.native or .xmi)")->required();
    explore->add_option("--format", format, "Force a format instead of inferring from the extension")
        ->check(CLI::IsMember({"native", "xmi"}));
    add_policy_flags(explore, flags);
    explore->add_option("--max-states", max_states, "Stop after storing this many states");
    explore->add_option("--max-seconds", max_seconds, "Stop after this much wall time");
    explore->add_option("--report", report_path, "Append a key=value record to this file");
    explore->add_flag("--serial", serial, "Use the serial reference explorer");

    CLI::App* confluence =
        app.add_subcommand("confluence", "Decide whether all rule orderings converge");
    confluence->add_option("input", input, "Diagram file (.native or .xmi)")->required();
    confluence->add_option("-o,--output", output,
                           "Write the unique normal form, or <name>.N.<ext> witnesses");
    confluence
        ->add_option("--format", format, "Force a format instead of inferring from the extension")
        ->check(CLI::IsMember({"native", "xmi"}));
    confluence->add_option("--max-states", max_states, "Stop after storing this many states");
    confluence->add_option("--max-seconds", max_seconds, "Stop after this much wall time");

    std::string shape = "ladder", base_path;
    std::size_t classes = 2, attrs = 1, copies = 1;
    std::uint64_t seed = 0;
    bool no_root = false;
    CLI::App* generate = app.add_subcommand("generate", "Emit a parametric benchmark case");
    generate->add_option("--shape", shape, "ladder or replicate")
        ->check(CLI::IsMember({"ladder", "replicate"}));
    generate->add_option("--classes", classes, "Ladder: number of subclasses");
    generate->add_option("--attrs", attrs, "Ladder: shared attributes per class");
    generate->add_flag("--no-root", no_root, "Ladder: omit the common root class");
    generate->add_option("--base", base_path, "Replicate: diagram file to copy");
    generate->add_option("--copies", copies, "Replicate: number of copies");
    generate->add_option("--seed", seed, "Reserved for randomized shapes");
    generate->add_option("-o,--output", output, "Where to write the generated diagram");
    generate->add_option("--format", format, "Force a format instead of inferring from the extension")
        ->check(CLI::IsMember({"native", "xmi"}));

    std::string only = "all";
    CLI::App* bench = app.add_subcommand("bench", "Normalize the built-in benchmark presets");
    bench->add_option("--only", only, "Comma-separated preset names (small,medium,ladder,replicated)");
    bench->add_option("--report", report_path, "Append one key=value record per preset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Keep the documented exit-code contract: any usage error is an
        // input error, not whatever code CLI11 would pick.
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    redraft::ExploreLimits limits;
    limits.max_states = max_states;
    limits.max_seconds = max_seconds;

    try {
        if (transform->parsed()) return run_transform(input, output, format, flags);
        if (explore->parsed())
            return run_explore(input, format, flags, limits, report_path, serial);
        if (confluence->parsed()) return run_confluence(input, output, format, limits);
        if (generate->parsed())
            return run_generate(shape, classes, attrs, no_root, base_path, copies, seed, output,
                                format);
        if (bench->parsed()) return run_bench(only, report_path);
    } catch (const IncompleteExploration&) {
        return kExitIncomplete;
    } catch (const redraft::DiagramError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;  // unreachable: a subcommand is required
}
