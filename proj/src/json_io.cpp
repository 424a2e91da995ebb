#include "epcr/json_io.hpp"

namespace epcr {

const char* to_string(Winner w) { return w == Winner::CopWin ? "cop" : "robber"; }
const char* to_string(Mover m) { return m == Mover::Cop ? "cop" : "robber"; }

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Captured:
        return "captured";
    case Outcome::EvasionCertified:
        return "evasion_certified";
    case Outcome::Cutoff:
        return "cutoff";
    }
    return "unknown";
}

json to_json(const SolveResult& res, const SolveJsonOptions& options) {
    json j;
    j["winner"] = to_string(res.winner);
    j["cop_start"] = res.cop_start ? json(*res.cop_start) : json(nullptr);
    j["robber_start_map"] = res.robber_start_map ? json(*res.robber_start_map) : json(nullptr);
    j["n"] = res.game->meta().n;
    j["lcm"] = res.game->meta().lcm();
    j["pattern_lengths"] = res.game->meta().period.lengths;
    j["bound_multiplier"] = res.game->meta().period.bound_multiplier;
    j["state_count"] = res.stats.states;
    j["edge_count"] = res.stats.edges;
    j["attractor_size"] = res.attractor.attractor_size;
    if (options.timings) {
        j["elapsed_ms"] = res.stats.total_ms;
        j["build_ms"] = res.stats.build_ms;
        j["attractor_ms"] = res.stats.attractor_ms;
    }
    if (options.strategy) {
        const auto& a = res.attractor;
        json states = json::array();
        for (StateId s = 0; s < res.game->state_count(); ++s) {
            const auto st = res.game->state(s);
            json row = {{"index", s},
                        {"c", st.cops[0]},
                        {"r", st.robber},
                        {"s", st.layer == 0 ? "C" : "R"},
                        {"t", st.time},
                        {"in_attractor", a.contains(s)}};
            row["rank"] = a.rank_of(s) ? json(*a.rank_of(s)) : json(nullptr);
            if (auto m = a.cop_move(s))
                row["move"] = *m;
            else if (auto m2 = a.robber_move(s))
                row["move"] = *m2;
            else
                row["move"] = nullptr;
            states.push_back(std::move(row));
        }
        j["strategy"] = std::move(states);
    }
    return j;
}

json to_json(const Position& p) {
    return {{"cop", p.cop}, {"robber", p.robber}, {"mover", to_string(p.mover)}, {"time", p.time}};
}

json to_json(const Playout& playout) {
    json moves = json::array();
    for (const auto& p : playout.moves)
        moves.push_back(to_json(p));
    return {{"outcome", to_string(playout.outcome)}, {"steps", playout.steps}, {"moves", std::move(moves)}};
}

json to_json(const EscapeAnalysis& analysis) {
    json strips = json::array();
    auto opt = [](const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); };
    for (const auto& s : analysis.strips)
        strips.push_back({{"index", s.index},
                          {"first_edge", s.first_edge},
                          {"last_edge", s.last_edge},
                          {"cop_first", s.cop_first},
                          {"cop_last", s.cop_last},
                          {"robber_first", opt(s.robber_first)},
                          {"robber_last", opt(s.robber_last)},
                          {"robber_next_first", opt(s.robber_next_first)}});
    return {{"block", analysis.block},
            {"max_len", analysis.max_len},
            {"strips", std::move(strips)},
            {"violations", analysis.violations()}};
}

json to_json(const SweepInstance& inst) {
    json patterns = json::array();
    for (const auto& p : inst.cycle.patterns)
        patterns.push_back(p.to_string());
    const char* status = inst.status == InstanceStatus::Checked      ? "checked"
                         : inst.status == InstanceStatus::BelowBound ? "below_bound"
                                                                     : "skipped";
    json j = {{"id", inst.id},         {"n", inst.cycle.length()}, {"lcm", inst.lcm},
              {"l", inst.l},           {"threshold", inst.threshold}, {"status", status},
              {"patterns", patterns}};
    j["verdict"] = inst.verdict ? json(to_string(*inst.verdict)) : json(nullptr);
    if (!inst.note.empty())
        j["note"] = inst.note;
    return j;
}

json to_json(const SweepReport& report) {
    auto list = [](const std::vector<SweepInstance>& v) {
        json a = json::array();
        for (const auto& i : v)
            a.push_back(to_json(i));
        return a;
    };
    json j = {{"total", report.total},
              {"checked", report.checked},
              {"robber_win", report.robber_win},
              {"below_bound", report.below_bound},
              {"below_bound_cop_win", report.below_bound_cop_win},
              {"skipped", report.skipped},
              {"margin", {{"min", report.min_margin}, {"max", report.max_margin}, {"mean", report.mean_margin}}},
              {"counterexamples", list(report.counterexamples)},
              {"skipped_instances", list(report.skipped_instances)},
              {"below_bound_cop_wins", list(report.below_bound_cop_wins)}};
    if (!report.instances.empty())
        j["instances"] = list(report.instances);
    return j;
}

} // namespace epcr
