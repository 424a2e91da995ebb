// epcr: command-line front end for the edge-periodic cops-and-robbers engine.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epcr/cycles.hpp"
#include "epcr/epg_io.hpp"
#include "epcr/errors.hpp"
#include "epcr/game_graph.hpp"
#include "epcr/json_io.hpp"
#include "epcr/server.hpp"
#include "epcr/solve.hpp"

namespace {

using namespace epcr;

constexpr int kExitError = 2;

std::vector<std::uint32_t> parse_lengths(const std::string& spec) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        } else {
            const auto lo = std::stoul(item.substr(0, dots));
            const auto hi = std::stoul(item.substr(dots + 2));
            if (hi < lo)
                throw DomainError("empty range '" + item + "'");
            for (auto n = lo; n <= hi; ++n)
                out.push_back(static_cast<std::uint32_t>(n));
        }
    }
    if (out.empty())
        throw DomainError("no cycle lengths given");
    return out;
}

std::vector<Pattern> parse_patterns(const std::string& spec) {
    std::vector<Pattern> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(Pattern::from_string(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-periodic cops and robbers: solver, generators, simulator and playground server"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Decide cop-win / robber-win; exit 0 cop, 1 robber, 2 error");
    std::string solve_input;
    bool solve_strategy = false, solve_no_timings = false;
    std::uint64_t max_states = BuildOptions{}.max_states;
    std::size_t max_pattern_len = kDefaultMaxPatternLength;
    std::uint32_t cops = 1;
    std::string dump_path;
    solve->add_option("input", solve_input, ".epg file")->required();
    solve->add_flag("--strategy", solve_strategy, "Include the full per-state strategy table");
    solve->add_flag("--no-timings", solve_no_timings, "Omit timings for byte-stable output");
    solve->add_option("--max-states", max_states, "State budget for the game graph");
    solve->add_option("--max-pattern-len", max_pattern_len, "Largest accepted pattern length");
    solve->add_option("--cops", cops, "Number of cops (serialized layers when > 1)")->check(CLI::PositiveNumber);
    solve->add_option("--dump-game", dump_path, "Write the game graph as text to this file");

    // generate
    auto* generate = app.add_subcommand("generate", "Emit a generated instance as .epg");
    std::string gen_kind;
    std::uint32_t gen_M = 2, gen_n = 8, gen_max_len = 3, gen_extend = 0;
    std::uint64_t gen_seed = 1;
    generate->add_option("kind", gen_kind, "thm17 | thm18 | random-cycle")
        ->required()
        ->check(CLI::IsMember({"thm17", "thm18", "random-cycle"}));
    generate->add_option("--M", gen_M, "Rare-edge period of the lower-bound constructions");
    generate->add_option("--n", gen_n, "Cycle length for random-cycle");
    generate->add_option("--max-len", gen_max_len, "Largest pattern length for random-cycle");
    generate->add_option("--seed", gen_seed, "Seed for random-cycle");
    generate->add_option("--extend", gen_extend, "Pad the cycle with always-present edges to this length");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Play one game between two policies, print the playout JSON");
    std::string sim_input, sim_cop = "optimal", sim_robber = "optimal";
    std::uint64_t sim_seed = 1, sim_max_steps = 0;
    std::optional<Vertex> sim_cop_start, sim_robber_start;
    simulate->add_option("input", sim_input, ".epg file")->required();
    simulate->add_option("--cop", sim_cop, "optimal | stay | random");
    simulate->add_option("--robber", sim_robber, "optimal | stay | random | rank-max | hide-escape");
    simulate->add_option("--seed", sim_seed, "Seed for random policies");
    simulate->add_option("--max-steps", sim_max_steps, "Move cutoff (default 4|V'|)");
    simulate->add_option("--cop-start", sim_cop_start, "Cop start (default: optimal)");
    simulate->add_option("--robber-start", sim_robber_start, "Robber start (default: optimal reply)");

    // verify-bounds
    auto* verify = app.add_subcommand("verify-bounds", "Check the cycle robber-win length bound on many cycles");
    bool exhaustive = false, at_threshold = false, keep_instances = false;
    std::size_t samples = 0;
    std::string lengths_spec = "8..12", patterns_spec;
    std::uint32_t pool_max_len = 3;
    std::uint64_t verify_seed = 1;
    unsigned threads = 0;
    std::string report_path;
    verify->add_flag("--exhaustive", exhaustive, "Every pattern assignment for every length");
    verify->add_option("--sample", samples, "Number of random cycles to sample");
    verify->add_flag("--at-threshold", at_threshold, "Sampled cycles get n = 2*l*LCM exactly");
    verify->add_option("--patterns", patterns_spec, "Comma-separated pattern pool (default: all up to --max-len)");
    verify->add_option("--max-len", pool_max_len, "Pattern pool: every pattern up to this length");
    verify->add_option("--n", lengths_spec, "Cycle lengths, e.g. 8..12 or 8,10");
    verify->add_option("--seed", verify_seed, "Sampling seed");
    verify->add_option("--threads", threads, "Worker threads (0: all cores)");
    verify->add_option("--report", report_path, "Write the JSON report here instead of stdout");
    verify->add_flag("--instances", keep_instances, "Include every instance in the report");

    // strips
    auto* strips = app.add_subcommand("strips", "Strip analysis of the escape argument on a cycle");
    std::string strips_input;
    Vertex strips_cop = 0;
    int strips_dir = 1;
    std::uint64_t strips_t0 = 0, strips_horizon = 0;
    strips->add_option("input", strips_input, ".epg cycle")->required();
    strips->add_option("--cop-start", strips_cop, "Cop start vertex");
    strips->add_option("--direction", strips_dir, "+1 or -1")->check(CLI::IsMember({1, -1}));
    strips->add_option("--t0", strips_t0, "Start time");
    strips->add_option("--horizon", strips_horizon, "Steps to analyse (default 4*B strips)");

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Run the playground HTTP/JSON API");
    ServeOptions serve_options;
    serve_cmd->add_option("--port", serve_options.port, "TCP port (0 picks one)");
    serve_cmd->add_option("--host", serve_options.host, "Bind address");
    serve_cmd->add_option("--static-dir", serve_options.static_dir, "Serve playground assets from here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*solve) {
            ParseOptions popts;
            popts.max_pattern_length = max_pattern_len;
            auto g = std::make_shared<const EdgePeriodicGraph>(load_epg(solve_input, popts));
            SolveOptions sopts;
            sopts.build.max_states = max_states;
            if (cops > 1) {
                const auto verdict = decide_k_cops(*g, cops, sopts);
                json j = {{"winner", to_string(verdict.winner)},
                          {"cops", cops},
                          {"cop_start", verdict.cop_start ? json(*verdict.cop_start) : json(nullptr)},
                          {"n", g->vertex_count()},
                          {"lcm", g->period().lcm},
                          {"state_count", verdict.states},
                          {"edge_count", verdict.edges}};
                std::cout << j.dump(2) << '\n';
                return verdict.winner == Winner::CopWin ? 0 : 1;
            }
            const auto res = decide(g, sopts);
            if (!dump_path.empty()) {
                std::ofstream out(dump_path);
                write_debug_dump(out, *res.game);
            }
            std::cout << to_json(res, {!solve_no_timings, solve_strategy}).dump(2) << '\n';
            std::cerr << (res.winner == Winner::CopWin ? "cop-win" : "robber-win") << ": n=" << g->vertex_count()
                      << " lcm=" << g->period().lcm << " states=" << res.stats.states << "\n";
            return res.winner == Winner::CopWin ? 0 : 1;
        }
        if (*generate) {
            CycleSpec c;
            if (gen_kind == "thm17")
                c = gen_theorem17_cycle(gen_M);
            else if (gen_kind == "thm18")
                c = gen_theorem18_cycle(gen_M);
            else
                c = gen_random_cycle(gen_n, gen_max_len, gen_seed);
            if (gen_extend)
                c = extend_cycle(c, gen_extend);
            serialize_epg(std::cout, c.to_graph());
            return 0;
        }
        if (*simulate) {
            const auto g = std::make_shared<const EdgePeriodicGraph>(load_epg(sim_input));
            const auto res = decide(g);
            const Policy cop = policy_by_name(sim_cop, res, Mover::Cop, sim_seed);
            const Policy robber = policy_by_name(sim_robber, res, Mover::Robber, sim_seed + 1);
            const Vertex cs = sim_cop_start.value_or(optimal_cop_start(res));
            const Vertex rs = sim_robber_start.value_or(optimal_robber_start(res, cs));
            PlayoutOptions popts;
            popts.max_steps = sim_max_steps;
            const auto play = playout(*g, cop, robber, cs, rs, popts);
            json j = to_json(play);
            j["winner"] = to_string(res.winner);
            j["cop_policy"] = cop.name;
            j["robber_policy"] = robber.name;
            std::cout << j.dump(2) << '\n';
            std::cerr << to_string(play.outcome) << " after " << play.steps << " moves\n";
            return 0;
        }
        if (*verify) {
            SweepOptions sopts;
            if (exhaustive == (samples > 0))
                throw DomainError("choose exactly one of --exhaustive or --sample K");
            sopts.mode = exhaustive ? SweepMode::Exhaustive : SweepMode::Sample;
            sopts.samples = samples;
            sopts.at_threshold = at_threshold;
            sopts.seed = verify_seed;
            sopts.threads = threads;
            sopts.keep_instances = keep_instances;
            const auto pool = patterns_spec.empty() ? all_patterns_up_to(pool_max_len) : parse_patterns(patterns_spec);
            const auto lengths = at_threshold ? std::vector<std::uint32_t>{} : parse_lengths(lengths_spec);
            const auto report = verify_theorem16(lengths, pool, sopts);
            const auto text = to_json(report).dump(2);
            if (report_path.empty()) {
                std::cout << text << '\n';
            } else {
                std::ofstream(report_path) << text << '\n';
            }
            std::cout.flush();
            std::cerr << "instances=" << report.total << " checked=" << report.checked
                      << " robber_win=" << report.robber_win << " counterexamples=" << report.counterexamples.size()
                      << " below_bound=" << report.below_bound << " skipped=" << report.skipped << "\n";
            if (!report_path.empty())
                std::cout << "counterexamples=" << report.counterexamples.size() << " checked=" << report.checked
                          << '\n';
            return report.counterexamples.empty() ? 0 : 1;
        }
        if (*strips) {
            const auto c = CycleSpec::from_graph(load_epg(strips_input));
            const auto analysis = strip_analysis(c, strips_cop, strips_dir, strips_t0, strips_horizon);
            std::cout << to_json(analysis).dump(2) << '\n';
            return analysis.violations().empty() ? 0 : 1;
        }
        if (*serve_cmd) {
            std::atomic<bool> stop{false};
            return serve(serve_options, stop);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
