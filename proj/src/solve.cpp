#include "epcr/solve.hpp"

#include <chrono>
#include <deque>
#include <limits>

#include "epcr/errors.hpp"

namespace epcr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Hop distances in the underlying graph, ignoring patterns.
std::vector<std::uint32_t> all_pairs_hops(const EdgePeriodicGraph& g) {
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint32_t> dist(std::size_t{n} * n, std::numeric_limits<std::uint32_t>::max());
    std::deque<Vertex> queue;
    for (Vertex src = 0; src < n; ++src) {
        auto* row = dist.data() + std::size_t{src} * n;
        row[src] = 0;
        queue.assign(1, src);
        while (!queue.empty()) {
            const Vertex v = queue.front();
            queue.pop_front();
            for (const auto& nb : g.neighbors(v))
                if (row[nb.vertex] == std::numeric_limits<std::uint32_t>::max()) {
                    row[nb.vertex] = row[v] + 1;
                    queue.push_back(nb.vertex);
                }
        }
    }
    return dist;
}

} // namespace

StateId SolveResult::state_of(const Position& p) const {
    return game->index(p.cop, p.robber, p.mover == Mover::Robber, p.time % game->meta().lcm());
}

SolveResult solve_game(std::shared_ptr<const GameGraph> game) {
    if (!game || game->meta().cops != 1)
        throw DomainError("solve_game expects a single-cop game graph");
    const auto start = Clock::now();
    SolveResult res;
    res.attractor = compute_attractor(*game);
    res.stats.attractor_ms = ms_since(start);
    res.stats.states = game->state_count();
    res.stats.edges = game->edge_count();

    const std::uint32_t n = game->meta().n;
    std::vector<Vertex> replies(n);
    for (Vertex v = 0; v < n; ++v) {
        std::optional<Vertex> escape;
        for (Vertex r = 0; r < n && !escape; ++r)
            if (!res.attractor.contains(game->index(v, r, false, 0)))
                escape = r;
        if (!escape) {
            res.cop_start = v;
            break;
        }
        replies[v] = *escape;
    }
    if (res.cop_start) {
        res.winner = Winner::CopWin;
    } else {
        res.winner = Winner::RobberWin;
        res.robber_start_map = std::move(replies);
    }
    res.game = std::move(game);
    res.stats.total_ms = res.stats.attractor_ms;
    return res;
}

SolveResult decide(std::shared_ptr<const EdgePeriodicGraph> g, const SolveOptions& options) {
    const auto start = Clock::now();
    auto game = std::make_shared<const GameGraph>(build_game_graph(std::move(g), options.build));
    const double build_ms = ms_since(start);
    SolveResult res = solve_game(std::move(game));
    res.stats.build_ms = build_ms;
    res.stats.total_ms = ms_since(start);
    return res;
}

SolveResult decide(const EdgePeriodicGraph& g, const SolveOptions& options) {
    return decide(std::make_shared<const EdgePeriodicGraph>(g), options);
}

KCopVerdict verdict_from_attractor(const GameGraph& gg, const AttractorResult& attr) {
    const auto& meta = gg.meta();
    KCopVerdict out;
    out.states = gg.state_count();
    out.edges = gg.edge_count();
    // Cop tuples in lexicographic order; state index of (tuple, r, Cop(0), 0) is code * n + r.
    const std::uint64_t tuples = gg.state_count() / (std::uint64_t{meta.layers()} * meta.lcm() * meta.n);
    for (std::uint64_t code = 0; code < tuples; ++code) {
        bool all = true;
        for (Vertex r = 0; r < meta.n && all; ++r)
            all = attr.contains(static_cast<StateId>(code * meta.n + r));
        if (all) {
            out.winner = Winner::CopWin;
            out.cop_start = gg.state(static_cast<StateId>(code * meta.n)).cops;
            return out;
        }
    }
    out.winner = Winner::RobberWin;
    return out;
}

KCopVerdict decide_k_cops(const EdgePeriodicGraph& g, std::uint32_t k, const SolveOptions& options) {
    const auto gg = build_k_cop_game_graph(g, k, options.build);
    return verdict_from_attractor(gg, compute_attractor(gg));
}

Strategy cop_strategy(const SolveResult& res) {
    if (res.winner != Winner::CopWin)
        throw DomainError("cop strategy requested on a robber-win graph");
    return [&res](const Position& p) {
        if (p.mover != Mover::Cop)
            throw DomainError("cop strategy applied to a robber-to-move position");
        const StateId s = res.state_of(p);
        const auto next = res.attractor.cop_move(s);
        if (!next)
            throw DomainError("cop strategy undefined here: state " + std::to_string(s) +
                              (res.attractor.contains(s) ? " is already final" : " is outside Attr(F)"));
        return apply_move(res.graph(), p, res.game->cop(*next));
    };
}

Strategy robber_strategy(const SolveResult& res) {
    if (res.winner != Winner::RobberWin)
        throw DomainError("robber strategy requested on a cop-win graph");
    return [&res](const Position& p) {
        if (p.mover != Mover::Robber)
            throw DomainError("robber strategy applied to a cop-to-move position");
        const StateId s = res.state_of(p);
        const auto next = res.attractor.robber_move(s);
        if (!next)
            throw DomainError("robber strategy undefined here: state " + std::to_string(s) + " is inside Attr(F)");
        return apply_move(res.graph(), p, res.game->robber(*next));
    };
}

Policy optimal_cop_policy(const SolveResult& res) {
    auto hops = std::make_shared<const std::vector<std::uint32_t>>(all_pairs_hops(res.graph()));
    return {[&res, hops](const Position& p) {
                const StateId s = res.state_of(p);
                if (auto next = res.attractor.cop_move(s))
                    return res.game->cop(*next);
                const std::uint32_t n = res.graph().vertex_count();
                Vertex best = p.cop;
                std::uint32_t best_dist = std::numeric_limits<std::uint32_t>::max();
                for (Vertex d : legal_moves(res.graph(), p)) {
                    const auto dist = (*hops)[std::size_t{d} * n + p.robber];
                    if (dist < best_dist) {
                        best_dist = dist;
                        best = d;
                    }
                }
                return best;
            },
            "optimal-cop", true};
}

Policy rank_maximizing_robber_policy(const SolveResult& res) {
    return {[&res](const Position& p) {
                const StateId s = res.state_of(p);
                if (auto escape = res.attractor.robber_move(s))
                    return res.game->robber(*escape);
                StateId best = kNoState;
                for (StateId d : res.game->successors(s))
                    if (best == kNoState || res.attractor.rank[d] > res.attractor.rank[best])
                        best = d;
                return res.game->robber(best);
            },
            "rank-max-robber", true};
}

Policy optimal_robber_policy(const SolveResult& res) {
    Policy p = rank_maximizing_robber_policy(res);
    p.name = "optimal-robber";
    return p;
}

Vertex optimal_robber_start(const SolveResult& res, Vertex cop_start) {
    const std::uint32_t n = res.graph().vertex_count();
    if (cop_start >= n)
        throw DomainError("cop start outside the graph");
    if (res.robber_start_map)
        return (*res.robber_start_map)[cop_start];
    Vertex best = 0;
    std::uint32_t best_rank = 0;
    for (Vertex r = 0; r < n; ++r) {
        const auto rank = res.attractor.rank[res.game->index(cop_start, r, false, 0)];
        if (r == 0 || rank > best_rank) {
            best = r;
            best_rank = rank;
        }
    }
    return best;
}

Vertex optimal_cop_start(const SolveResult& res) {
    if (res.cop_start)
        return *res.cop_start;
    const std::uint32_t n = res.graph().vertex_count();
    Vertex best = 0;
    std::uint32_t fewest = std::numeric_limits<std::uint32_t>::max();
    for (Vertex v = 0; v < n; ++v) {
        std::uint32_t escapes = 0;
        for (Vertex r = 0; r < n; ++r)
            escapes += !res.attractor.contains(res.game->index(v, r, false, 0));
        if (escapes < fewest) {
            fewest = escapes;
            best = v;
        }
    }
    return best;
}

ClosureReport robber_closure(const SolveResult& res, const std::vector<StateId>& starts,
                             const std::function<StateId(StateId)>& robber_move) {
    const GameGraph& gg = *res.game;
    ClosureReport report;
    std::vector<std::uint8_t> seen(gg.state_count(), 0);
    std::deque<StateId> queue;
    auto visit = [&](StateId s) {
        if (seen[s])
            return;
        seen[s] = 1;
        ++report.visited;
        if (res.attractor.contains(s) && !report.witness) {
            report.disjoint = false;
            report.witness = s;
        }
        queue.push_back(s);
    };
    for (StateId s : starts)
        visit(s);
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        if (gg.is_final(s))
            continue;
        if (gg.owner(s) == Owner::Player0) {
            for (StateId d : gg.successors(s))
                visit(d);
        } else {
            visit(robber_move(s));
        }
    }
    return report;
}

ClosureReport certify_robber_strategy(const SolveResult& res) {
    if (res.winner != Winner::RobberWin)
        throw DomainError("no robber strategy on a cop-win graph");
    std::vector<StateId> starts;
    for (Vertex v = 0; v < res.graph().vertex_count(); ++v)
        starts.push_back(res.game->index(v, (*res.robber_start_map)[v], false, 0));
    return robber_closure(res, starts, [&res](StateId s) {
        const auto next = res.attractor.robber_move(s);
        if (!next)
            throw DomainError("escape strategy undefined at state " + std::to_string(s));
        return *next;
    });
}

ClosureReport certify_robber_policy(const SolveResult& res, const Policy& robber,
                                    const std::vector<StateId>& starts) {
    const GameGraph& gg = *res.game;
    return robber_closure(res, starts, [&](StateId s) {
        const Position p{gg.cop(s), gg.robber(s), Mover::Robber, gg.time(s)};
        const Position next = apply_move(gg.graph(), p, robber.choose(p));
        return res.state_of(next);
    });
}

} // namespace epcr
