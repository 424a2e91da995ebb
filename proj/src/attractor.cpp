#include "epcr/attractor.hpp"

#include <deque>

#include "epcr/errors.hpp"

namespace epcr {

AttractorResult compute_attractor(const GameGraph& gg) {
    const std::size_t count = gg.state_count();
    AttractorResult res;
    res.in_attractor.assign(count, 0);
    res.rank.assign(count, kUnranked);
    res.cop_strategy_edge.assign(count, kNoState);
    res.robber_strategy_edge.assign(count, kNoState);

    // Player 1 states: number of successors not yet known to be attracted.
    std::vector<std::uint32_t> escapes(count, 0);
    std::deque<StateId> queue;
    for (StateId s = 0; s < count; ++s) {
        if (gg.is_final(s)) {
            res.in_attractor[s] = 1;
            res.rank[s] = 0;
            queue.push_back(s);
        } else if (gg.owner(s) == Owner::Player1) {
            escapes[s] = static_cast<std::uint32_t>(gg.out_degree(s));
        }
    }

    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        const std::uint32_t next_rank = res.rank[s] + 1;
        for (StateId p : gg.predecessors(s)) {
            if (res.in_attractor[p])
                continue;
            if (gg.owner(p) == Owner::Player0) {
                res.cop_strategy_edge[p] = s;
            } else if (--escapes[p] != 0) {
                continue;
            }
            res.in_attractor[p] = 1;
            res.rank[p] = next_rank;
            queue.push_back(p);
        }
    }

    for (StateId s = 0; s < count; ++s) {
        if (res.in_attractor[s]) {
            ++res.attractor_size;
            continue;
        }
        if (gg.owner(s) != Owner::Player1)
            continue;
        for (StateId d : gg.successors(s))
            if (!res.in_attractor[d]) {
                res.robber_strategy_edge[s] = d;
                break;
            }
    }
    return res;
}

std::vector<std::uint8_t> attractor_step(const GameGraph& gg, const std::vector<std::uint8_t>& current) {
    std::vector<std::uint8_t> next = current;
    for (StateId s = 0; s < gg.state_count(); ++s) {
        if (current[s])
            continue;
        const auto succ = gg.successors(s);
        bool attracted = false;
        if (gg.owner(s) == Owner::Player0) {
            for (StateId d : succ)
                attracted = attracted || current[d];
        } else {
            attracted = true;
            for (StateId d : succ)
                attracted = attracted && current[d];
        }
        next[s] = attracted;
    }
    return next;
}

std::vector<StateId> naive_attractor_oracle(const GameGraph& gg, const NaiveOracleOptions& options) {
    if (gg.state_count() > options.max_states)
        throw DomainError("naive attractor oracle limited to " + std::to_string(options.max_states) + " states, got " +
                          std::to_string(gg.state_count()));
    std::vector<std::uint8_t> current(gg.state_count(), 0);
    for (StateId s = 0; s < gg.state_count(); ++s)
        current[s] = gg.is_final(s);
    for (std::size_t i = 0; i < options.max_iterations; ++i) {
        auto next = attractor_step(gg, current);
        if (next == current)
            break;
        current = std::move(next);
    }
    std::vector<StateId> out;
    for (StateId s = 0; s < gg.state_count(); ++s)
        if (current[s])
            out.push_back(s);
    return out;
}

} // namespace epcr
