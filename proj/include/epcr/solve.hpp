#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "epcr/attractor.hpp"
#include "epcr/game_graph.hpp"
#include "epcr/simulator.hpp"

namespace epcr {

enum class Winner : std::uint8_t { CopWin, RobberWin };

struct SolveStats {
    std::size_t states = 0;
    std::size_t edges = 0;
    double build_ms = 0;
    double attractor_ms = 0;
    double total_ms = 0;
};

struct SolveResult {
    Winner winner = Winner::RobberWin;
    // Least v with (v, r, C, 0) attracted for every r.
    std::optional<Vertex> cop_start;
    // robber_start_map[v]: least u with (v, u, C, 0) outside the attractor.
    std::optional<std::vector<Vertex>> robber_start_map;
    AttractorResult attractor;
    std::shared_ptr<const GameGraph> game;
    SolveStats stats;

    const EdgePeriodicGraph& graph() const { return game->graph(); }
    // Game state of a live position (time reduced mod LCM).
    StateId state_of(const Position& p) const;
    bool winning_for_cop(const Position& p) const { return attractor.contains(state_of(p)); }
};

struct SolveOptions {
    BuildOptions build;
};

SolveResult decide(std::shared_ptr<const EdgePeriodicGraph> g, const SolveOptions& options = {});
SolveResult decide(const EdgePeriodicGraph& g, const SolveOptions& options = {});
// Decision on an already built single-cop game graph.
SolveResult solve_game(std::shared_ptr<const GameGraph> game);

struct KCopVerdict {
    Winner winner = Winner::RobberWin;
    std::optional<std::vector<Vertex>> cop_start;
    std::size_t states = 0;
    std::size_t edges = 0;
};

// Cops win iff some start tuple has (tuple, r, Cop(0), 0) attracted for every r.
KCopVerdict decide_k_cops(const EdgePeriodicGraph& g, std::uint32_t k, const SolveOptions& options = {});
KCopVerdict verdict_from_attractor(const GameGraph& gg, const AttractorResult& attr);

// --- strategies ---------------------------------------------------------

using Strategy = std::function<Position(const Position&)>;

// Follows the cop's attractor edge. The returned function throws DomainError
// on positions whose state is final or outside Attr(F). `res` must outlive it.
Strategy cop_strategy(const SolveResult& res);
// Follows the robber's escape edge; throws DomainError inside Attr(F).
Strategy robber_strategy(const SolveResult& res);

// Policies for playouts. Each keeps a reference to `res`.
//
// optimal cop: attractor edge where defined, otherwise the legal move closest
// (static hop distance) to the robber.
Policy optimal_cop_policy(const SolveResult& res);
// optimal robber: escape edge outside Attr(F), otherwise the successor of
// highest rank.
Policy optimal_robber_policy(const SolveResult& res);
Policy rank_maximizing_robber_policy(const SolveResult& res);

// Robber start reply to a cop start: robber_start_map when robber-win,
// otherwise the reply of highest rank.
Vertex optimal_robber_start(const SolveResult& res, Vertex cop_start);
// Cop start: cop_start when cop-win, otherwise the vertex with the fewest
// escaping robber starts.
Vertex optimal_cop_start(const SolveResult& res);

struct ClosureReport {
    bool disjoint = true;
    std::size_t visited = 0;
    std::optional<StateId> witness; // first attracted state reached
};

// States reachable from `starts` when the robber plays `robber_move` and the
// cop plays every legal move. Reports whether that set avoids Attr(F).
ClosureReport robber_closure(const SolveResult& res, const std::vector<StateId>& starts,
                             const std::function<StateId(StateId)>& robber_move);
// Closure for the synthesized escape strategy from every (v, robber_start_map[v], C, 0).
ClosureReport certify_robber_strategy(const SolveResult& res);
// Closure for a memoryless robber policy (evaluated at time t in [0, LCM)).
ClosureReport certify_robber_policy(const SolveResult& res, const Policy& robber,
                                    const std::vector<StateId>& starts);

} // namespace epcr
