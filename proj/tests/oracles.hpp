#pragma once

// Test-only oracles. None of these touch GameGraph construction or the
// counter-based attractor; they work on explicit tuples and edge_present.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "epcr/cycles.hpp"
#include "epcr/graph.hpp"

namespace oracle {

using epcr::EdgePeriodicGraph;
using epcr::Pattern;
using epcr::Vertex;

// (cops..., robber, layer, time)
using Tuple = std::vector<std::uint64_t>;

inline Tuple tuple_at(const std::vector<Vertex>& cops, Vertex r, std::uint32_t layer, std::uint64_t t) {
    Tuple out(cops.begin(), cops.end());
    out.push_back(r);
    out.push_back(layer);
    out.push_back(t);
    return out;
}

inline std::vector<Tuple> all_tuples(const EdgePeriodicGraph& g, std::uint32_t k) {
    const std::uint32_t n = g.vertex_count();
    const std::uint64_t lcm = g.period().lcm;
    std::vector<Tuple> out;
    std::vector<Vertex> cops(k, 0);
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < k; ++i)
        combos *= n;
    for (std::uint32_t layer = 0; layer <= k; ++layer)
        for (std::uint64_t t = 0; t < lcm; ++t)
            for (std::uint64_t code = 0; code < combos; ++code) {
                std::uint64_t x = code;
                for (std::uint32_t i = k; i-- > 0;) {
                    cops[i] = static_cast<Vertex>(x % n);
                    x /= n;
                }
                for (Vertex r = 0; r < n; ++r)
                    out.push_back(tuple_at(cops, r, layer, t));
            }
    return out;
}

inline bool step_ok(const EdgePeriodicGraph& g, Vertex from, Vertex to, std::uint64_t t) {
    return from == to || (g.has_edge(from, to) && g.edge_present(from, to, t));
}

// Single-cop edge relation tested pair by pair against conditions (1)-(5).
inline bool beta_edge(const EdgePeriodicGraph& g, const Tuple& a, const Tuple& b) {
    const std::uint64_t lcm = g.period().lcm;
    const auto c = Vertex(a[0]), r = Vertex(a[1]), c2 = Vertex(b[0]), r2 = Vertex(b[1]);
    const auto s = a[2], s2 = b[2], t = a[3], t2 = b[3];
    if (a == b)
        return false;
    if (!((s == 0 && s2 == 1) || (s == 1 && s2 == 0)))
        return false;
    if (s == 0) {
        if (!(c == c2 || g.has_edge(c, c2)) || r != r2 || t2 != t)
            return false;
        if (c != c2 && !g.edge_present(c, c2, t % g.pattern(g.edge_id(c, c2)).length()))
            return false;
    } else {
        if (!(r == r2 || g.has_edge(r, r2)) || c != c2 || t2 != (t + 1) % lcm)
            return false;
        if (r != r2 && !g.edge_present(r, r2, t % g.pattern(g.edge_id(r, r2)).length()))
            return false;
    }
    return true;
}

inline std::set<std::pair<Tuple, Tuple>> generate_and_filter(const EdgePeriodicGraph& g) {
    const auto states = all_tuples(g, 1);
    std::set<std::pair<Tuple, Tuple>> edges;
    for (const auto& a : states)
        for (const auto& b : states)
            if (beta_edge(g, a, b))
                edges.emplace(a, b);
    return edges;
}

// Successors of a k-cop tuple by direct rule application.
inline std::vector<Tuple> tuple_successors(const EdgePeriodicGraph& g, std::uint32_t k, const Tuple& s) {
    const std::uint64_t lcm = g.period().lcm;
    const auto layer = static_cast<std::uint32_t>(s[k + 1]);
    const std::uint64_t t = s[k + 2];
    std::vector<Tuple> out;
    const std::size_t slot = layer < k ? layer : k;
    for (Vertex d = 0; d < g.vertex_count(); ++d) {
        if (!step_ok(g, Vertex(s[slot]), d, t))
            continue;
        Tuple next = s;
        next[slot] = d;
        if (layer < k) {
            next[k + 1] = layer + 1;
        } else {
            next[k + 1] = 0;
            next[k + 2] = (t + 1) % lcm;
        }
        out.push_back(next);
    }
    return out;
}

// Cop-winning tuples by naive iteration on explicit positions.
inline std::set<Tuple> brute_force_winning(const EdgePeriodicGraph& g, std::uint32_t k) {
    const auto states = all_tuples(g, k);
    std::set<Tuple> win;
    for (const auto& s : states)
        for (std::uint32_t i = 0; i < k; ++i)
            if (s[i] == s[k])
                win.insert(s);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& s : states) {
            if (win.count(s))
                continue;
            const auto succ = tuple_successors(g, k, s);
            const bool cop_turn = s[k + 1] < k;
            const bool good = cop_turn ? std::any_of(succ.begin(), succ.end(), [&](const Tuple& x) { return win.count(x) > 0; })
                                       : std::all_of(succ.begin(), succ.end(), [&](const Tuple& x) { return win.count(x) > 0; });
            if (good) {
                win.insert(s);
                changed = true;
            }
        }
    }
    return win;
}

inline bool brute_force_cop_win(const EdgePeriodicGraph& g, std::uint32_t k = 1) {
    const auto win = brute_force_winning(g, k);
    const std::uint32_t n = g.vertex_count();
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < k; ++i)
        combos *= n;
    std::vector<Vertex> cops(k);
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::uint64_t x = code;
        for (std::uint32_t i = k; i-- > 0;) {
            cops[i] = static_cast<Vertex>(x % n);
            x /= n;
        }
        bool all = true;
        for (Vertex r = 0; r < n && all; ++r)
            all = win.count(tuple_at(cops, r, 0, 0)) > 0;
        if (all)
            return true;
    }
    return false;
}

inline Pattern random_pattern(std::mt19937_64& rng, std::uint32_t max_len) {
    const std::uint32_t len = 1 + static_cast<std::uint32_t>(rng() % max_len);
    std::vector<bool> bits(len);
    do {
        for (std::uint32_t i = 0; i < len; ++i)
            bits[i] = rng() & 1U;
    } while (std::none_of(bits.begin(), bits.end(), [](bool b) { return b; }));
    return Pattern::from_bits(bits);
}

inline EdgePeriodicGraph random_graph(std::mt19937_64& rng, std::uint32_t max_n, std::uint32_t max_len,
                                      double density = 0.5) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % max_n);
    EdgePeriodicGraph::Builder b(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng) < density)
                b.add_edge(u, v, random_pattern(rng, max_len));
    return std::move(b).build();
}

inline EdgePeriodicGraph static_graph(std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    EdgePeriodicGraph::Builder b(n);
    for (auto [u, v] : edges)
        b.add_edge(u, v, Pattern::always());
    return std::move(b).build();
}

inline EdgePeriodicGraph static_cycle(std::uint32_t n) {
    return epcr::CycleSpec::uniform(n, Pattern::always()).to_graph();
}

// Every labelled tree on n vertices via Prüfer sequences.
template <typename Fn>
void for_each_tree(std::uint32_t n, Fn&& fn) {
    if (n == 1) {
        fn(static_graph(1, {}));
        return;
    }
    if (n == 2) {
        fn(static_graph(2, {{0, 1}}));
        return;
    }
    std::vector<Vertex> seq(n - 2, 0);
    while (true) {
        std::vector<std::uint32_t> degree(n, 1);
        for (Vertex v : seq)
            ++degree[v];
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex v : seq) {
            Vertex leaf = 0;
            while (degree[leaf] != 1)
                ++leaf;
            edges.emplace_back(leaf, v);
            --degree[leaf];
            --degree[v];
        }
        Vertex a = n, b = n;
        for (Vertex v = 0; v < n; ++v)
            if (degree[v] == 1)
                (a == n ? a : b) = v;
        edges.emplace_back(a, b);
        fn(static_graph(n, edges));
        std::size_t i = 0;
        while (i < seq.size() && ++seq[i] == n)
            seq[i++] = 0;
        if (i == seq.size())
            break;
    }
}

} // namespace oracle
