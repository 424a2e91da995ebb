#include "epcr/game_graph.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <ostream>

#include "epcr/errors.hpp"

namespace epcr {

namespace {

constexpr std::uint64_t kMax64 = std::numeric_limits<std::uint64_t>::max();

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw ResourceError("game state space overflows 64 bits", kMax64, kMax64);
    return r;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

// Neighbours reachable over an edge present at t, for every t in [0, lcm).
struct PresenceTable {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> offsets; // (t * n + v) -> start
    std::vector<Vertex> targets;

    PresenceTable(const EdgePeriodicGraph& g, std::uint64_t lcm) : n(g.vertex_count()) {
        offsets.reserve(lcm * n + 1);
        offsets.push_back(0);
        for (std::uint64_t t = 0; t < lcm; ++t)
            for (Vertex v = 0; v < n; ++v) {
                for (const auto& nb : g.neighbors(v))
                    if (g.edge_present(nb.edge, t))
                        targets.push_back(nb.vertex);
                offsets.push_back(targets.size());
            }
    }

    std::span<const Vertex> at(std::uint64_t t, Vertex v) const {
        const auto i = t * n + v;
        return {targets.data() + offsets[i], targets.data() + offsets[i + 1]};
    }
    std::uint64_t degree(std::uint64_t t, Vertex v) const { return offsets[t * n + v + 1] - offsets[t * n + v]; }
};

} // namespace

std::uint64_t game_state_count(std::uint32_t n, std::uint32_t cops, std::uint64_t lcm) {
    return checked_mul(checked_mul(cops + 1ULL, lcm), ipow(n, cops + 1));
}

std::uint64_t state_index(const GameState& s, const GameMeta& meta) {
    if (s.cops.size() != meta.cops)
        throw DomainError("state has " + std::to_string(s.cops.size()) + " cops, game has " +
                          std::to_string(meta.cops));
    if (s.layer > meta.cops)
        throw DomainError("mover layer out of range");
    if (s.time >= meta.lcm())
        throw DomainError("state time " + std::to_string(s.time) + " not below LCM " + std::to_string(meta.lcm()));
    if (s.robber >= meta.n)
        throw DomainError("robber vertex out of range");
    std::uint64_t idx = std::uint64_t{s.layer} * meta.lcm() + s.time;
    for (Vertex c : s.cops) {
        if (c >= meta.n)
            throw DomainError("cop vertex out of range");
        idx = idx * meta.n + c;
    }
    return idx * meta.n + s.robber;
}

GameState state_of(std::uint64_t index, const GameMeta& meta) {
    if (index >= game_state_count(meta.n, meta.cops, meta.lcm()))
        throw DomainError("state index out of range");
    GameState s;
    s.robber = static_cast<Vertex>(index % meta.n);
    index /= meta.n;
    s.cops.resize(meta.cops);
    for (std::uint32_t i = meta.cops; i-- > 0;) {
        s.cops[i] = static_cast<Vertex>(index % meta.n);
        index /= meta.n;
    }
    s.time = index % meta.lcm();
    s.layer = static_cast<std::uint32_t>(index / meta.lcm());
    return s;
}

StateId GameGraph::index(Vertex cop, Vertex robber, bool robber_to_move, std::uint64_t time) const {
    if (meta_.cops != 1)
        throw DomainError("single-cop index on a " + std::to_string(meta_.cops) + "-cop game");
    return index(GameState{{cop}, robber, robber_to_move ? 1U : 0U, time});
}

class GameGraphAssembler {
public:
    GameGraphAssembler(std::shared_ptr<const EdgePeriodicGraph> g, std::uint32_t k, const BuildOptions& options)
        : g_(std::move(g)), k_(k) {
        if (!g_)
            throw DomainError("null graph");
        if (k_ == 0)
            throw DomainError("need at least one cop");
        meta_.n = g_->vertex_count();
        meta_.cops = k_;
        meta_.period = g_->period();
        states_ = game_state_count(meta_.n, k_, meta_.lcm());
        if (states_ > options.max_states || states_ > std::numeric_limits<StateId>::max())
            throw ResourceError("game graph state count exceeds budget", states_,
                                std::min<std::uint64_t>(options.max_states, std::numeric_limits<StateId>::max()));
        presence_.emplace(*g_, meta_.lcm());

        // Out-degree depends only on (time, mover vertex): 1 + present degree.
        per_layer_ = ipow(meta_.n, k_);
        std::uint64_t edges = 0;
        for (std::uint64_t t = 0; t < meta_.lcm(); ++t)
            for (Vertex v = 0; v < meta_.n; ++v)
                edges += (1 + presence_->degree(t, v)) * per_layer_;
        edges *= (k_ + 1);
        if (edges > options.max_edges)
            throw ResourceError("game graph edge count exceeds budget", edges, options.max_edges);
        edges_ = edges;
    }

    // Single cop: conditions (1)-(5) written out for the (c, r, s, t) layout.
    GameGraph build_single() {
        GameGraph gg = start();
        const std::uint32_t n = meta_.n;
        const std::uint64_t lcm = meta_.lcm();
        const std::uint64_t nn = std::uint64_t{n} * n;
        for (std::uint64_t s = 0; s < states_; ++s) {
            const Vertex r = static_cast<Vertex>(s % n);
            const Vertex c = static_cast<Vertex>((s / n) % n);
            const std::uint64_t t = (s / nn) % lcm;
            const bool robber_moves = s / (nn * lcm) == 1;
            if (!robber_moves) {
                const std::uint64_t base = (lcm + t) * nn; // robber layer, same t
                gg.succ_.push_back(static_cast<StateId>(base + std::uint64_t{c} * n + r));
                for (Vertex c2 : presence_->at(t, c))
                    gg.succ_.push_back(static_cast<StateId>(base + std::uint64_t{c2} * n + r));
            } else {
                const std::uint64_t base = ((t + 1) % lcm) * nn; // cop layer, t + 1
                gg.succ_.push_back(static_cast<StateId>(base + std::uint64_t{c} * n + r));
                for (Vertex r2 : presence_->at(t, r))
                    gg.succ_.push_back(static_cast<StateId>(base + std::uint64_t{c} * n + r2));
            }
            gg.succ_offsets_.push_back(gg.succ_.size());
            gg.final_[s] = c == r;
        }
        return finish(std::move(gg));
    }

    GameGraph build_layered() {
        GameGraph gg = start();
        const std::uint32_t n = meta_.n;
        const std::uint64_t lcm = meta_.lcm();
        std::vector<std::uint64_t> weight(k_); // weight of cop i inside the robber-free code
        for (std::uint32_t i = 0; i < k_; ++i)
            weight[i] = ipow(n, k_ - 1 - i) * n;
        std::vector<Vertex> cops(k_);
        for (std::uint64_t s = 0; s < states_; ++s) {
            const Vertex r = static_cast<Vertex>(s % n);
            std::uint64_t rest = s / n;
            bool caught = false;
            for (std::uint32_t i = k_; i-- > 0;) {
                cops[i] = static_cast<Vertex>(rest % n);
                rest /= n;
                caught |= cops[i] == r;
            }
            const std::uint64_t t = rest % lcm;
            const auto layer = static_cast<std::uint32_t>(rest / lcm);
            const std::uint64_t within = s % (per_layer_ * n); // cop code * n + robber
            if (layer < k_) {
                const std::uint64_t base = ((layer + 1ULL) * lcm + t) * per_layer_ * n;
                const Vertex c = cops[layer];
                gg.succ_.push_back(static_cast<StateId>(base + within));
                for (Vertex c2 : presence_->at(t, c))
                    gg.succ_.push_back(static_cast<StateId>(base + within - c * weight[layer] + c2 * weight[layer]));
            } else {
                const std::uint64_t base = ((t + 1) % lcm) * per_layer_ * n;
                gg.succ_.push_back(static_cast<StateId>(base + within));
                for (Vertex r2 : presence_->at(t, r))
                    gg.succ_.push_back(static_cast<StateId>(base + within - r + r2));
            }
            gg.succ_offsets_.push_back(gg.succ_.size());
            gg.final_[s] = caught;
        }
        return finish(std::move(gg));
    }

private:
    GameGraph start() {
        GameGraph gg;
        gg.meta_ = meta_;
        gg.graph_ = g_;
        gg.time_stride_ = per_layer_ * meta_.n;
        gg.layer_stride_ = gg.time_stride_ * meta_.lcm();
        gg.succ_offsets_.reserve(states_ + 1);
        gg.succ_offsets_.push_back(0);
        gg.succ_.reserve(edges_);
        gg.final_.assign(states_, 0);
        return gg;
    }

    GameGraph finish(GameGraph gg) {
        presence_.reset();
        gg.pred_offsets_.assign(states_ + 1, 0);
        for (StateId dst : gg.succ_)
            ++gg.pred_offsets_[dst + 1];
        for (std::uint64_t s = 0; s < states_; ++s)
            gg.pred_offsets_[s + 1] += gg.pred_offsets_[s];
        gg.pred_.resize(gg.succ_.size());
        std::vector<std::uint64_t> cursor(gg.pred_offsets_.begin(), gg.pred_offsets_.end() - 1);
        for (std::uint64_t s = 0; s < states_; ++s) {
            for (auto i = gg.succ_offsets_[s]; i < gg.succ_offsets_[s + 1]; ++i)
                gg.pred_[cursor[gg.succ_[i]]++] = static_cast<StateId>(s);
            gg.max_out_degree_ =
                std::max<std::size_t>(gg.max_out_degree_, gg.succ_offsets_[s + 1] - gg.succ_offsets_[s]);
        }
        return gg;
    }

    std::shared_ptr<const EdgePeriodicGraph> g_;
    std::uint32_t k_;
    GameMeta meta_;
    std::uint64_t states_ = 0;
    std::uint64_t edges_ = 0;
    std::uint64_t per_layer_ = 1; // n^k
    std::optional<PresenceTable> presence_;
};

GameGraph build_game_graph(std::shared_ptr<const EdgePeriodicGraph> g, const BuildOptions& options) {
    return GameGraphAssembler(std::move(g), 1, options).build_single();
}

GameGraph build_game_graph(const EdgePeriodicGraph& g, const BuildOptions& options) {
    return build_game_graph(std::make_shared<const EdgePeriodicGraph>(g), options);
}

GameGraph build_k_cop_game_graph(std::shared_ptr<const EdgePeriodicGraph> g, std::uint32_t k,
                                 const BuildOptions& options) {
    return GameGraphAssembler(std::move(g), k, options).build_layered();
}

GameGraph build_k_cop_game_graph(const EdgePeriodicGraph& g, std::uint32_t k, const BuildOptions& options) {
    return build_k_cop_game_graph(std::make_shared<const EdgePeriodicGraph>(g), k, options);
}

void write_debug_dump(std::ostream& out, const GameGraph& gg) {
    const auto& meta = gg.meta();
    out << "# states n=" << meta.n << " cops=" << meta.cops << " lcm=" << meta.lcm() << '\n';
    for (StateId s = 0; s < gg.state_count(); ++s) {
        const auto st = gg.state(s);
        out << "s " << s;
        for (Vertex c : st.cops)
            out << ' ' << c;
        out << ' ' << st.robber << ' ';
        if (st.layer == meta.cops)
            out << 'R';
        else if (meta.cops == 1)
            out << 'C';
        else
            out << 'C' << st.layer;
        out << ' ' << st.time << '\n';
    }
    out << "# edges\n";
    for (StateId s = 0; s < gg.state_count(); ++s)
        for (StateId d : gg.successors(s))
            out << s << ' ' << d << '\n';
}

} // namespace epcr
