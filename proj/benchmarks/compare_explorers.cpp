// Compares the level-synchronous parallel explorer against the serial
// queue-based reference on state spaces of growing width, and verifies that
// both produce the same space. Workload: disjoint copies of the two_groups
// fixture, whose 2k independent extractions span 2^(2k) states.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "redraft/engine.hpp"
#include "redraft/fixtures.hpp"
#include "redraft/generator.hpp"

int main(int argc, char** argv) {
    std::size_t max_copies = 6;
    if (argc > 1) max_copies = std::strtoull(argv[1], nullptr, 10);

    redraft::Policy policy;
    policy.mode = redraft::Policy::Mode::Free;
    policy.ties = redraft::Policy::Ties::BranchAll;
    redraft::ExploreLimits limits;
    limits.max_states = 1u << 20;

    std::printf("%-7s %9s %12s %11s %13s %9s %6s\n", "copies", "states", "transitions",
                "serial_ms", "parallel_ms", "speedup", "same");
    for (std::size_t copies = 1; copies <= max_copies; ++copies) {
        redraft::ClassDiagram d =
            redraft::generate_replicate(redraft::fixtures::two_groups(), copies);

        redraft::StateSpace serial = redraft::explore_serial(d, policy, limits);
        redraft::StateSpace parallel = redraft::explore(d, policy, limits);
        bool same = serial.same_shape(parallel);

        double serial_ms = serial.stats.wall_seconds * 1000.0;
        double parallel_ms = parallel.stats.wall_seconds * 1000.0;
        std::printf("%-7zu %9zu %12zu %11.1f %13.1f %8.2fx %6s\n", copies,
                    serial.stats.state_count, serial.stats.transition_count, serial_ms,
                    parallel_ms, parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0,
                    same ? "yes" : "NO");
        if (!same) return 1;
    }
    return 0;
}
