#include <doctest.h>

#include <random>

#include "epcr/cycles.hpp"
#include "epcr/epg_io.hpp"
#include "epcr/errors.hpp"
#include "epcr/simulator.hpp"
#include "epcr/solve.hpp"
#include "oracles.hpp"

using namespace epcr;

TEST_CASE("legal moves") {
    const auto path = oracle::static_graph(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
    CHECK(legal_moves(path, {0, 1, Mover::Robber, 5}) == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(legal_moves(path, {0, 1, Mover::Cop, 5}) == std::vector<Vertex>{0, 1});

    for (std::uint32_t M : {3U, 4U, 5U}) {
        const auto g = gen_theorem17_cycle(M).to_graph();
        for (std::uint64_t t = 0; t + 1 < M; ++t)
            CHECK(legal_moves(g, {M + 1, 1, Mover::Robber, t}) == std::vector<Vertex>{1});
        CHECK(legal_moves(g, {M + 1, 1, Mover::Robber, M - 1}) == std::vector<Vertex>{0, 1, 2});
    }
}

TEST_CASE("legal moves agree with the game graph") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        const auto g = oracle::random_graph(rng, 5, 3);
        const auto gg = build_game_graph(g);
        for (StateId s = 0; s < gg.state_count(); ++s) {
            const bool robber = gg.owner(s) == Owner::Player1;
            const Position p{gg.cop(s), gg.robber(s), robber ? Mover::Robber : Mover::Cop, gg.time(s)};
            std::vector<Vertex> projected;
            for (StateId d : gg.successors(s))
                projected.push_back(robber ? gg.robber(d) : gg.cop(d));
            std::sort(projected.begin(), projected.end());
            CHECK(legal_moves(g, p) == projected);
            for (Vertex v : projected) {
                const auto q = apply_move(g, p, v);
                const auto& succ = gg.successors(s);
                CHECK(std::find(succ.begin(), succ.end(),
                                gg.index(q.cop, q.robber, q.mover == Mover::Robber, q.time % gg.meta().lcm())) !=
                      succ.end());
            }
        }
    }
}

TEST_CASE("apply_move") {
    const auto g = parse_epg("n 3\ne 0 1 1\ne 1 2 01\n");
    const Position p{0, 2, Mover::Cop, 4};
    CHECK(apply_move(g, p, 0) == Position{0, 2, Mover::Robber, 4});
    CHECK(apply_move(g, p, 1) == Position{1, 2, Mover::Robber, 4});
    CHECK(apply_move(g, {0, 2, Mover::Robber, 5}, 1) == Position{0, 1, Mover::Cop, 6});
    CHECK(apply_move(g, {0, 2, Mover::Robber, 4}, 2) == Position{0, 2, Mover::Cop, 5});

    CHECK_THROWS_WITH_AS(apply_move(g, {0, 2, Mover::Robber, 4}, 1), doctest::Contains("absent"), RuleViolation);
    CHECK_THROWS_WITH_AS(apply_move(g, p, 2), doctest::Contains("no edge"), RuleViolation);
    CHECK_THROWS_AS(apply_move(g, p, 7), RuleViolation);

    const auto caught = apply_move(g, {0, 1, Mover::Cop, 0}, 1);
    CHECK(caught.captured());
    const auto walked_in = apply_move(g, {0, 1, Mover::Robber, 0}, 0);
    CHECK(walked_in.captured());
}

TEST_CASE("playout outcomes") {
    const auto edge = parse_epg("n 2\ne 0 1 1");
    const auto chase = playout(edge, random_policy(edge, 1), stay_put_policy(), 0, 0);
    CHECK(chase.outcome == Outcome::Captured);
    CHECK(chase.steps == 0);

    const auto empty = oracle::static_graph(2, {});
    PlayoutOptions opt;
    opt.max_steps = 50;
    const auto idle = playout(empty, stay_put_policy(), stay_put_policy(), 0, 1, opt);
    CHECK(idle.outcome == Outcome::EvasionCertified);
    opt.certify_evasion = false;
    const auto cut = playout(empty, stay_put_policy(), stay_put_policy(), 0, 1, opt);
    CHECK(cut.outcome == Outcome::Cutoff);
    CHECK(cut.steps == 50);
    CHECK(cut.moves.size() == 51);
    CHECK(default_max_steps(empty) == 32);

    Policy bad{[](const Position&) { return Vertex{1}; }, "teleport", true};
    CHECK_THROWS_WITH_AS(playout(empty, bad, stay_put_policy(), 0, 1), doctest::Contains("teleport"), RuleViolation);
}

TEST_CASE("robber-side capture at robber parity") {
    // the robber has no choice but to step onto the cop on a 2-vertex path once the cop waits
    const auto g = parse_epg("n 2\ne 0 1 1");
    Policy suicidal{[](const Position& p) { return p.cop; }, "suicidal", true};
    const auto play = playout(g, stay_put_policy(), suicidal, 0, 1);
    CHECK(play.outcome == Outcome::Captured);
    CHECK(play.moves.back().mover == Mover::Cop);
    CHECK(play.steps == 2);
}

TEST_CASE("strategies drive playouts") {
    const auto res = decide(gen_theorem17_cycle(3).to_graph());
    REQUIRE(res.winner == Winner::CopWin);
    const auto cop = optimal_cop_policy(res);
    CHECK(cop.memoryless);
    for (Vertex r = 0; r < 9; ++r) {
        const auto play = playout(res.graph(), cop, rank_maximizing_robber_policy(res), *res.cop_start, r);
        CHECK(play.outcome == Outcome::Captured);
        CHECK(play.steps <= *res.attractor.rank_of(res.state_of({*res.cop_start, r, Mover::Cop, 0})));
    }
    const auto step = cop_strategy(res);
    const Position p{*res.cop_start, (*res.cop_start + 4) % 9, Mover::Cop, 0};
    const auto next = step(p);
    CHECK(next.mover == Mover::Robber);
    CHECK_THROWS_AS(robber_strategy(res), DomainError);

    const auto c5 = decide(oracle::static_cycle(5));
    REQUIRE(c5.winner == Winner::RobberWin);
    CHECK_THROWS_AS(cop_strategy(c5), DomainError);
    for (Vertex c = 0; c < 5; ++c) {
        const Vertex r = optimal_robber_start(c5, c);
        CHECK_FALSE(c5.winning_for_cop({c, r, Mover::Cop, 0}));
        const auto play = playout(c5.graph(), optimal_cop_policy(c5), optimal_robber_policy(c5), c, r);
        CHECK(play.outcome == Outcome::EvasionCertified);
    }
    CHECK(certify_robber_strategy(c5).disjoint);
}

TEST_CASE("first cop move on the slow-pair cycle heads down the short path") {
    // cop at x = M+1 with the robber between the two slow edges: the cop walks
    // x -> M -> ... towards vertex 2 and captures once the slow edges open.
    const std::uint32_t M = 2;
    const auto res = decide(gen_theorem17_cycle(M).to_graph());
    const Vertex x = theorem17_cop_start(M);
    for (Vertex r = 0; r < 3 * M; ++r)
        CHECK(res.winning_for_cop({x, r, Mover::Cop, 0}));
    const auto cop = optimal_cop_policy(res);
    const auto play = playout(res.graph(), cop, rank_maximizing_robber_policy(res), x, 1);
    CHECK(play.outcome == Outcome::Captured);
    REQUIRE(play.moves.size() >= 2);
    CHECK(play.moves[1].cop == M);
}
