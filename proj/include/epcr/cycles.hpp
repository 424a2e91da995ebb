#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epcr/graph.hpp"
#include "epcr/simulator.hpp"
#include "epcr/solve.hpp"

namespace epcr {

// Edge-periodic cycle: patterns[i] labels edge {i, (i + 1) mod n}.
struct CycleSpec {
    std::vector<Pattern> patterns;

    std::uint32_t length() const noexcept { return static_cast<std::uint32_t>(patterns.size()); }
    PeriodSummary period() const;
    EdgePeriodicGraph to_graph() const;

    // Throws DomainError unless g is exactly the cycle 0-1-...-(n-1)-0.
    static CycleSpec from_graph(const EdgePeriodicGraph& g);
    static CycleSpec uniform(std::uint32_t n, const Pattern& p);
};

// 3M-cycle with edges {0,1},{1,2} patterned 0^(M-1)1, all others "1".
CycleSpec gen_theorem17_cycle(std::uint32_t M);
// Cop start of the construction: distance M-1 from vertex 2 and 2M-1 from vertex 0.
inline Vertex theorem17_cop_start(std::uint32_t M) { return M + 1; }
// As above with the second edge from the cop start towards the M-path
// (edge {M-1, M}) re-patterned to "01". M odd, >= 3.
CycleSpec gen_theorem18_cycle(std::uint32_t M);
// Pads the cycle to `new_length` by inserting "1" edges before vertex 0.
// The closing edge {n-1, 0} must be "1".
CycleSpec extend_cycle(const CycleSpec& c, std::uint32_t new_length);
// Uniformly random valid patterns of length 1..max_len.
CycleSpec gen_random_cycle(std::uint32_t n, std::uint32_t max_len, std::uint64_t seed);

// Every valid pattern with length in [1, max_len], shortest first.
std::vector<Pattern> all_patterns_up_to(std::uint32_t max_len);

// Robber policy for cycles meeting n >= 2 * l * LCM. Keeps antipodal to the
// cop when the required edge is present (lowest vertex id among reachable
// antipodal vertices); otherwise steps away from the cop along the shorter
// arc whenever that edge is present. Memoryless. Throws DomainError if the
// length bound fails.
Policy hide_escape_policy(const CycleSpec& c);

// "optimal", "stay", "random" for either side; "rank-max" and "hide-escape"
// for the robber only. Throws DomainError on an unknown name.
Policy policy_by_name(const std::string& kind, const SolveResult& res, Mover role, std::uint64_t seed);

struct Strip {
    std::uint32_t index = 0;       // 1-based
    std::uint64_t first_edge = 0;  // positions on the unrolled path
    std::uint64_t last_edge = 0;
    std::uint64_t cop_first = 0;   // first time the cop can cross first / last edge
    std::uint64_t cop_last = 0;
    std::optional<std::uint64_t> robber_first; // robber starts on the first vertex of strip 2
    std::optional<std::uint64_t> robber_last;
    std::optional<std::uint64_t> robber_next_first; // T^F_R of the following strip

    std::uint64_t edge_count() const { return last_edge - first_edge + 1; }
};

struct EscapeAnalysis {
    std::uint64_t block = 0; // B
    std::uint32_t max_len = 0;
    std::vector<Strip> strips;

    // Violated invariants, empty when all hold.
    std::vector<std::string> violations() const;
};

// Unrolls the cycle from `cop_start` in `direction` (+1: i -> i+1) and
// simulates the earliest cop walk from time t0 and the robber walk from the
// first vertex of strip 2. Reports strips completed within `horizon` steps
// (0 selects 4 * B strips).
EscapeAnalysis strip_analysis(const CycleSpec& c, Vertex cop_start, int direction, std::uint64_t t0,
                              std::uint64_t horizon = 0);

enum class SweepMode : std::uint8_t { Exhaustive, Sample };

struct SweepOptions {
    SweepMode mode = SweepMode::Exhaustive;
    std::size_t samples = 0;
    // Sample mode: set n to the threshold of the sampled length profile
    // instead of drawing it from the length set.
    bool at_threshold = false;
    std::uint64_t seed = 1;
    unsigned threads = 0; // 0: hardware concurrency
    SolveOptions solve;
    bool keep_instances = false;
    // Called for every solved instance, possibly from several threads.
    std::function<void(const CycleSpec&, const SolveResult&)> on_solved;
};

enum class InstanceStatus : std::uint8_t { Checked, BelowBound, Skipped };

struct SweepInstance {
    std::uint64_t id = 0;
    CycleSpec cycle;
    std::uint64_t lcm = 1;
    std::uint32_t l = 2;
    std::uint64_t threshold = 0;
    InstanceStatus status = InstanceStatus::Checked;
    std::optional<Winner> verdict;
    std::string note;
};

struct SweepReport {
    std::uint64_t total = 0;
    std::uint64_t checked = 0;
    std::uint64_t robber_win = 0;
    std::uint64_t below_bound = 0;
    std::uint64_t below_bound_cop_win = 0;
    std::uint64_t skipped = 0;
    std::int64_t min_margin = 0; // n - threshold over checked instances
    std::int64_t max_margin = 0;
    double mean_margin = 0;
    std::vector<SweepInstance> counterexamples;
    std::vector<SweepInstance> skipped_instances;
    std::vector<SweepInstance> below_bound_cop_wins; // tightness evidence, first 64
    std::vector<SweepInstance> instances;            // only with keep_instances
};

// Decides every generated cycle; with n >= 2 * l * LCM the verdict must be
// robber-win, anything else is listed as a counterexample.
SweepReport verify_theorem16(const std::vector<std::uint32_t>& lengths, const std::vector<Pattern>& pool,
                             const SweepOptions& options = {});

} // namespace epcr
