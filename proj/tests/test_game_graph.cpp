#include <doctest.h>

#include <random>
#include <sstream>

#include "epcr/cycles.hpp"
#include "epcr/epg_io.hpp"
#include "epcr/errors.hpp"
#include "epcr/game_graph.hpp"
#include "oracles.hpp"

using namespace epcr;

namespace {

oracle::Tuple tuple_of(const GameGraph& gg, StateId s) {
    const auto st = gg.state(s);
    return oracle::tuple_at(st.cops, st.robber, st.layer, st.time);
}

} // namespace

TEST_CASE("state index is a bijection") {
    for (std::uint32_t k : {1U, 2U, 3U}) {
        GameMeta meta;
        meta.n = 3;
        meta.cops = k;
        meta.period = summarize_lengths({2, 3});
        const auto count = game_state_count(meta.n, k, meta.lcm());
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto s = state_of(i, meta);
            REQUIRE(s.cops.size() == k);
            CHECK(state_index(s, meta) == i);
        }
    }
    GameMeta meta;
    meta.n = 2;
    std::set<std::uint64_t> seen;
    for (Vertex c = 0; c < 2; ++c)
        for (Vertex r = 0; r < 2; ++r)
            for (std::uint32_t layer = 0; layer < 2; ++layer)
                seen.insert(state_index(GameState{{c}, r, layer, 0}, meta));
    CHECK(seen.size() == 8);
    CHECK(*seen.rbegin() == 7);
    CHECK(state_index(GameState{{1}, 0, 0, 0}, meta) != state_index(GameState{{1}, 0, 1, 0}, meta));

    CHECK_THROWS_AS(state_index(GameState{{2}, 0, 0, 0}, meta), DomainError);
    CHECK_THROWS_AS(state_index(GameState{{0}, 0, 2, 0}, meta), DomainError);
    CHECK_THROWS_AS(state_index(GameState{{0}, 0, 0, 1}, meta), DomainError);
    CHECK_THROWS_AS(state_index(GameState{{0, 1}, 0, 0, 0}, meta), DomainError);
    CHECK_THROWS_AS(state_of(8, meta), DomainError);
}

TEST_CASE("state counts") {
    CHECK(game_state_count(2, 1, 1) == 8);
    CHECK(game_state_count(3, 2, 1) == 81);
    CHECK(build_k_cop_game_graph(oracle::static_cycle(3), 2).state_count() == 81);
    const auto gg = build_game_graph(gen_theorem17_cycle(2).to_graph());
    CHECK(gg.state_count() == 144);
    CHECK_THROWS_AS(game_state_count(1U << 31, 3, 1), ResourceError);
}

TEST_CASE("single static edge successors") {
    const auto gg = build_game_graph(parse_epg("n 2\ne 0 1 1"));
    const auto from = gg.index(0, 1, false, 0);
    std::set<StateId> succ(gg.successors(from).begin(), gg.successors(from).end());
    CHECK(succ == std::set<StateId>{gg.index(0, 1, true, 0), gg.index(1, 1, true, 0)});
    CHECK(gg.successors(from)[0] == gg.index(0, 1, true, 0));
}

TEST_CASE("game graph matches generate-and-filter") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 60; ++i) {
        const auto g = oracle::random_graph(rng, 4, 3);
        const auto gg = build_game_graph(g);
        const auto expected = oracle::generate_and_filter(g);
        std::set<std::pair<oracle::Tuple, oracle::Tuple>> got;
        for (StateId s = 0; s < gg.state_count(); ++s)
            for (StateId d : gg.successors(s))
                got.emplace(tuple_of(gg, s), tuple_of(gg, d));
        CHECK(got == expected);
        CHECK(gg.edge_count() == expected.size());
    }
}

TEST_CASE("k-cop successors match direct rule application") {
    std::mt19937_64 rng(91);
    for (int i = 0; i < 20; ++i) {
        const auto g = oracle::random_graph(rng, 3, 2);
        for (std::uint32_t k : {1U, 2U}) {
            const auto gg = build_k_cop_game_graph(g, k);
            REQUIRE(gg.state_count() == game_state_count(g.vertex_count(), k, g.period().lcm));
            for (StateId s = 0; s < gg.state_count(); ++s) {
                std::vector<oracle::Tuple> got;
                for (StateId d : gg.successors(s))
                    got.push_back(tuple_of(gg, d));
                auto expected = oracle::tuple_successors(g, k, tuple_of(gg, s));
                std::sort(got.begin(), got.end());
                std::sort(expected.begin(), expected.end());
                CHECK(got == expected);
                const auto st = gg.state(s);
                bool fin = false;
                for (Vertex c : st.cops)
                    fin = fin || c == st.robber;
                CHECK(gg.is_final(s) == fin);
            }
        }
    }
}

TEST_CASE("structural invariants") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 40; ++i) {
        const auto g = oracle::random_graph(rng, 6, 4, 0.6);
        const auto gg = build_game_graph(g);
        const auto n = g.vertex_count();
        const auto lcm = g.period().lcm;
        CHECK(gg.state_count() == 2 * lcm * n * n);
        CHECK(gg.max_out_degree() <= n);
        std::size_t pred_total = 0;
        for (StateId s = 0; s < gg.state_count(); ++s) {
            const auto st = gg.state(s);
            // waiting is always possible
            const auto wait = gg.index(GameState{st.cops, st.robber, 1 - st.layer, st.layer ? (st.time + 1) % lcm : st.time});
            REQUIRE(gg.out_degree(s) >= 1);
            CHECK(gg.successors(s)[0] == wait);
            for (StateId d : gg.successors(s)) {
                CHECK(gg.owner(d) != gg.owner(s));
                if (gg.owner(s) == Owner::Player0) {
                    CHECK(gg.time(d) == gg.time(s));
                    CHECK(gg.robber(d) == gg.robber(s));
                } else {
                    CHECK(gg.time(d) == (gg.time(s) + 1) % lcm);
                    CHECK(gg.cop(d) == gg.cop(s));
                }
                const auto preds = gg.predecessors(d);
                CHECK(std::find(preds.begin(), preds.end(), s) != preds.end());
            }
            pred_total += gg.predecessors(s).size();
        }
        CHECK(pred_total == gg.edge_count());
    }
}

TEST_CASE("build budget") {
    BuildOptions tight;
    tight.max_states = 100;
    try {
        build_game_graph(gen_theorem17_cycle(2).to_graph(), tight);
        FAIL("expected ResourceError");
    } catch (const ResourceError& err) {
        CHECK(err.requested() == 144);
        CHECK(err.limit() == 100);
    }
    BuildOptions edges;
    edges.max_edges = 10;
    CHECK_THROWS_AS(build_game_graph(gen_theorem17_cycle(2).to_graph(), edges), ResourceError);
}

TEST_CASE("debug dump") {
    const auto gg = build_game_graph(parse_epg("n 2\ne 0 1 01"));
    std::ostringstream out;
    write_debug_dump(out, gg);
    const auto text = out.str();
    std::istringstream in(text);
    std::string line;
    std::size_t states = 0, edges = 0;
    bool in_edges = false;
    while (std::getline(in, line)) {
        if (line.rfind("# edges", 0) == 0) {
            in_edges = true;
            continue;
        }
        if (line.empty() || line[0] == '#')
            continue;
        (in_edges ? edges : states) += 1;
    }
    CHECK(states == gg.state_count());
    CHECK(edges == gg.edge_count());
    CHECK(text.find("s 0 0 0 C 0") != std::string::npos);
}
