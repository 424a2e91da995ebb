#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epcr/graph.hpp"

namespace epcr {

enum class Mover : std::uint8_t { Cop, Robber };

// Live game position. `time` is the unreduced step counter.
struct Position {
    Vertex cop = 0;
    Vertex robber = 0;
    Mover mover = Mover::Cop;
    std::uint64_t time = 0;

    bool captured() const noexcept { return cop == robber; }
    Vertex mover_vertex() const noexcept { return mover == Mover::Cop ? cop : robber; }

    friend bool operator==(const Position&, const Position&) = default;
};

// Waiting plus every neighbour across an edge present at p.time, ascending.
std::vector<Vertex> legal_moves(const EdgePeriodicGraph& g, const Position& p);

// Moves the player to act to `dest`. Cop moves keep the time, robber moves
// advance it by one. Throws RuleViolation for an illegal destination.
Position apply_move(const EdgePeriodicGraph& g, const Position& p, Vertex dest);

// Chooses the destination for the player to act in a position.
struct Policy {
    std::function<Vertex(const Position&)> choose;
    std::string name;
    // Deterministic and a function of (cop, robber, mover, time mod LCM) only.
    bool memoryless = false;
};

Policy stay_put_policy();
// Uniform over legal moves. `g` must outlive the policy.
Policy random_policy(const EdgePeriodicGraph& g, std::uint64_t seed);

enum class Outcome : std::uint8_t { Captured, EvasionCertified, Cutoff };

struct Playout {
    std::vector<Position> moves; // starting position first
    Outcome outcome = Outcome::Cutoff;
    // Captured: index into `moves` of the capturing position. Otherwise the
    // number of moves played.
    std::uint64_t steps = 0;
};

struct PlayoutOptions {
    // 0 selects 4 * |V'| = 8 * LCM * n^2.
    std::uint64_t max_steps = 0;
    // Stop on a repeated reduced position when both policies are memoryless.
    bool certify_evasion = true;
};

std::uint64_t default_max_steps(const EdgePeriodicGraph& g);

Playout playout(const EdgePeriodicGraph& g, const Policy& cop, const Policy& robber, Vertex cop_start,
                Vertex robber_start, const PlayoutOptions& options = {});

} // namespace epcr
