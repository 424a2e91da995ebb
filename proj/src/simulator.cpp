#include "epcr/simulator.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <unordered_set>

#include "epcr/errors.hpp"

namespace epcr {

std::vector<Vertex> legal_moves(const EdgePeriodicGraph& g, const Position& p) {
    const Vertex at = p.mover_vertex();
    if (at >= g.vertex_count() || p.cop >= g.vertex_count() || p.robber >= g.vertex_count())
        throw DomainError("position references a vertex outside the graph");
    std::vector<Vertex> out;
    bool placed_self = false;
    for (const auto& nb : g.neighbors(at)) {
        if (!placed_self && nb.vertex > at) {
            out.push_back(at);
            placed_self = true;
        }
        if (g.edge_present(nb.edge, p.time))
            out.push_back(nb.vertex);
    }
    if (!placed_self)
        out.push_back(at);
    return out;
}

Position apply_move(const EdgePeriodicGraph& g, const Position& p, Vertex dest) {
    const Vertex at = p.mover_vertex();
    const char* who = p.mover == Mover::Cop ? "cop" : "robber";
    if (dest >= g.vertex_count())
        throw RuleViolation(std::string(who) + " destination " + std::to_string(dest) + " is not a vertex");
    if (dest != at) {
        if (!g.has_edge(at, dest))
            throw RuleViolation(std::string(who) + " cannot move " + std::to_string(at) + " -> " +
                                std::to_string(dest) + ": no edge {" + std::to_string(at) + "," +
                                std::to_string(dest) + "}");
        if (!g.edge_present(at, dest, p.time))
            throw RuleViolation(std::string(who) + " cannot move " + std::to_string(at) + " -> " +
                                std::to_string(dest) + ": edge {" + std::to_string(std::min(at, dest)) + "," +
                                std::to_string(std::max(at, dest)) + "} is absent at time step " +
                                std::to_string(p.time));
    }
    Position next = p;
    if (p.mover == Mover::Cop) {
        next.cop = dest;
        next.mover = Mover::Robber;
    } else {
        next.robber = dest;
        next.mover = Mover::Cop;
        ++next.time;
    }
    return next;
}

Policy stay_put_policy() {
    return {[](const Position& p) { return p.mover_vertex(); }, "stay-put", true};
}

Policy random_policy(const EdgePeriodicGraph& g, std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return {[&g, rng](const Position& p) {
                const auto moves = legal_moves(g, p);
                std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
                return moves[pick(*rng)];
            },
            "random(" + std::to_string(seed) + ")", false};
}

std::uint64_t default_max_steps(const EdgePeriodicGraph& g) {
    const std::uint64_t n = g.vertex_count();
    return 8 * g.period().lcm * n * n;
}

Playout playout(const EdgePeriodicGraph& g, const Policy& cop, const Policy& robber, Vertex cop_start,
                Vertex robber_start, const PlayoutOptions& options) {
    if (cop_start >= g.vertex_count() || robber_start >= g.vertex_count())
        throw DomainError("start vertex outside the graph");
    const std::uint64_t max_steps = options.max_steps ? options.max_steps : default_max_steps(g);
    const bool certify = options.certify_evasion && cop.memoryless && robber.memoryless;
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t lcm = g.period().lcm;
    auto key = [&](const Position& p) {
        return ((std::uint64_t(p.mover) * lcm + p.time % lcm) * n + p.cop) * n + p.robber;
    };

    Playout out;
    Position p{cop_start, robber_start, Mover::Cop, 0};
    out.moves.push_back(p);
    if (p.captured()) {
        out.outcome = Outcome::Captured;
        return out;
    }
    std::unordered_set<std::uint64_t> seen;
    if (certify)
        seen.insert(key(p));
    for (std::uint64_t step = 1; step <= max_steps; ++step) {
        const Policy& actor = p.mover == Mover::Cop ? cop : robber;
        const Vertex dest = actor.choose(p);
        try {
            p = apply_move(g, p, dest);
        } catch (const RuleViolation& err) {
            throw RuleViolation((p.mover == Mover::Cop ? "cop policy '" : "robber policy '") + actor.name +
                                "' made an illegal move: " + err.what());
        }
        out.moves.push_back(p);
        if (p.captured()) {
            out.outcome = Outcome::Captured;
            out.steps = step;
            return out;
        }
        if (certify && !seen.insert(key(p)).second) {
            out.outcome = Outcome::EvasionCertified;
            out.steps = step;
            return out;
        }
    }
    out.outcome = Outcome::Cutoff;
    out.steps = max_steps;
    return out;
}

} // namespace epcr
