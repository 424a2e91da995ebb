#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "epcr/game_graph.hpp"

namespace epcr {

inline constexpr std::uint32_t kUnranked = std::numeric_limits<std::uint32_t>::max();
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

// Attr(F) together with ranks and memoryless strategies for both players.
//
// rank[s] is the least i with s in Attr_i(F). cop_strategy_edge[s] is set for
// Player 0 states of rank >= 1 and points at a successor of smaller rank.
// robber_strategy_edge[s] is set for Player 1 states outside Attr(F) and
// points at a successor that is also outside.
struct AttractorResult {
    std::vector<std::uint8_t> in_attractor;
    std::vector<std::uint32_t> rank;
    std::vector<StateId> cop_strategy_edge;
    std::vector<StateId> robber_strategy_edge;
    std::size_t attractor_size = 0;

    bool contains(StateId s) const { return in_attractor.at(s) != 0; }
    std::optional<std::uint32_t> rank_of(StateId s) const {
        return rank.at(s) == kUnranked ? std::nullopt : std::optional(rank[s]);
    }
    std::optional<StateId> cop_move(StateId s) const {
        return cop_strategy_edge.at(s) == kNoState ? std::nullopt : std::optional(cop_strategy_edge[s]);
    }
    std::optional<StateId> robber_move(StateId s) const {
        return robber_strategy_edge.at(s) == kNoState ? std::nullopt : std::optional(robber_strategy_edge[s]);
    }
};

// Backward propagation from F with per-state escape counters (linear in
// |V'| + |E'|). FIFO order, so ranks coincide with the iteration index.
AttractorResult compute_attractor(const GameGraph& gg);

// One application of the Attr_{i+1} recurrence to the membership vector `current`.
std::vector<std::uint8_t> attractor_step(const GameGraph& gg, const std::vector<std::uint8_t>& current);

struct NaiveOracleOptions {
    std::size_t max_states = 20000;
    std::size_t max_iterations = std::numeric_limits<std::size_t>::max();
};

// Literal iteration of the recurrence until nothing changes (or
// `max_iterations` steps). Sorted state ids. Throws DomainError above the cap.
std::vector<StateId> naive_attractor_oracle(const GameGraph& gg, const NaiveOracleOptions& options = {});

} // namespace epcr
