#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "epcr/graph.hpp"

namespace epcr {

using StateId = std::uint32_t;

// Player 0 owns every cop layer, Player 1 the robber layer.
enum class Owner : std::uint8_t { Player0 = 0, Player1 = 1 };

// A node of the reachability game. `layer` in [0, k) means cop `layer` moves
// next; layer == k means the robber moves next.
struct GameState {
    std::vector<Vertex> cops;
    Vertex robber = 0;
    std::uint32_t layer = 0;
    std::uint64_t time = 0;

    friend bool operator==(const GameState&, const GameState&) = default;
};

struct GameMeta {
    std::uint32_t n = 0;
    std::uint32_t cops = 1;
    PeriodSummary period;

    std::uint64_t lcm() const noexcept { return period.lcm; }
    std::uint32_t layers() const noexcept { return cops + 1; }
};

struct BuildOptions {
    std::uint64_t max_states = std::uint64_t{1} << 24;
    std::uint64_t max_edges = std::uint64_t{1} << 27;
};

// (k+1) * lcm * n^(k+1), or ResourceError if it does not fit in 64 bits.
std::uint64_t game_state_count(std::uint32_t n, std::uint32_t cops, std::uint64_t lcm);

// Mixed-radix index over (layer, time, cop_0..cop_{k-1}, robber), most
// significant first. Throws DomainError when `s` violates the state invariants.
std::uint64_t state_index(const GameState& s, const GameMeta& meta);
GameState state_of(std::uint64_t index, const GameMeta& meta);

// Finite directed game graph with flat successor / predecessor arrays.
class GameGraph {
public:
    const GameMeta& meta() const noexcept { return meta_; }
    const EdgePeriodicGraph& graph() const noexcept { return *graph_; }
    std::shared_ptr<const EdgePeriodicGraph> graph_ptr() const noexcept { return graph_; }

    std::size_t state_count() const noexcept { return final_.size(); }
    std::size_t edge_count() const noexcept { return succ_.size(); }
    std::size_t max_out_degree() const noexcept { return max_out_degree_; }

    std::span<const StateId> successors(StateId s) const {
        return {succ_.data() + succ_offsets_[s], succ_.data() + succ_offsets_[s + 1]};
    }
    std::span<const StateId> predecessors(StateId s) const {
        return {pred_.data() + pred_offsets_[s], pred_.data() + pred_offsets_[s + 1]};
    }
    std::size_t out_degree(StateId s) const { return succ_offsets_[s + 1] - succ_offsets_[s]; }

    bool is_final(StateId s) const { return final_[s] != 0; }
    std::uint32_t layer(StateId s) const { return static_cast<std::uint32_t>(s / layer_stride_); }
    Owner owner(StateId s) const { return layer(s) < meta_.cops ? Owner::Player0 : Owner::Player1; }
    std::uint64_t time(StateId s) const { return (s / time_stride_) % meta_.lcm(); }
    Vertex robber(StateId s) const { return s % meta_.n; }

    GameState state(StateId s) const { return state_of(s, meta_); }
    StateId index(const GameState& s) const { return static_cast<StateId>(state_index(s, meta_)); }

    // Base-game helpers (k = 1).
    Vertex cop(StateId s) const { return (s / meta_.n) % meta_.n; }
    StateId index(Vertex cop, Vertex robber, bool robber_to_move, std::uint64_t time) const;

private:
    friend class GameGraphAssembler;
    GameGraph() = default;

    GameMeta meta_;
    std::shared_ptr<const EdgePeriodicGraph> graph_;
    std::uint64_t time_stride_ = 1;  // n^(k+1)
    std::uint64_t layer_stride_ = 1; // lcm * n^(k+1)
    std::vector<std::uint64_t> succ_offsets_;
    std::vector<StateId> succ_;
    std::vector<std::uint64_t> pred_offsets_;
    std::vector<StateId> pred_;
    std::vector<std::uint8_t> final_;
    std::size_t max_out_degree_ = 0;
};

// One cop. Successors are ordered: wait first, then neighbours by id.
GameGraph build_game_graph(std::shared_ptr<const EdgePeriodicGraph> g, const BuildOptions& options = {});
GameGraph build_game_graph(const EdgePeriodicGraph& g, const BuildOptions& options = {});

// k cops moving in the fixed order 0..k-1, then the robber. Cops may share a vertex.
GameGraph build_k_cop_game_graph(std::shared_ptr<const EdgePeriodicGraph> g, std::uint32_t k,
                                 const BuildOptions& options = {});
GameGraph build_k_cop_game_graph(const EdgePeriodicGraph& g, std::uint32_t k, const BuildOptions& options = {});

// Text dump: "s <index> <cop...> <robber> <layer> <time>" lines followed by
// "<src> <dst>" edge lines, sections introduced by "# states" / "# edges".
void write_debug_dump(std::ostream& out, const GameGraph& gg);

} // namespace epcr
