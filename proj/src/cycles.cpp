#include "epcr/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <thread>

#include "epcr/errors.hpp"

namespace epcr {

PeriodSummary CycleSpec::period() const {
    std::vector<std::uint32_t> lengths;
    for (const auto& p : patterns)
        lengths.push_back(p.length());
    return summarize_lengths(std::move(lengths));
}

EdgePeriodicGraph CycleSpec::to_graph() const {
    const std::uint32_t n = length();
    if (n < 3)
        throw DomainError("a cycle needs at least 3 vertices, got " + std::to_string(n));
    EdgePeriodicGraph::Builder b(n);
    for (std::uint32_t i = 0; i < n; ++i)
        b.add_edge(i, (i + 1) % n, patterns[i]);
    return std::move(b).build();
}

CycleSpec CycleSpec::from_graph(const EdgePeriodicGraph& g) {
    const std::uint32_t n = g.vertex_count();
    if (n < 3 || g.edge_count() != n)
        throw DomainError("graph is not a cycle on 0..n-1");
    CycleSpec c;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!g.has_edge(i, (i + 1) % n))
            throw DomainError("graph is not the cycle 0-1-...-(n-1)-0: missing {" + std::to_string(i) + "," +
                              std::to_string((i + 1) % n) + "}");
        c.patterns.push_back(g.pattern(g.edge_id(i, (i + 1) % n)));
    }
    return c;
}

CycleSpec CycleSpec::uniform(std::uint32_t n, const Pattern& p) {
    return CycleSpec{std::vector<Pattern>(n, p)};
}

CycleSpec gen_theorem17_cycle(std::uint32_t M) {
    if (M < 2)
        throw DomainError("construction needs M >= 2, got " + std::to_string(M));
    std::string rare(M, '0');
    rare.back() = '1';
    CycleSpec c = CycleSpec::uniform(3 * M, Pattern::always());
    c.patterns[0] = c.patterns[1] = Pattern::from_string(rare, std::max<std::size_t>(M, kDefaultMaxPatternLength));
    return c;
}

CycleSpec gen_theorem18_cycle(std::uint32_t M) {
    if (M < 3 || M % 2 == 0)
        throw DomainError("construction needs odd M >= 3, got " + std::to_string(M));
    CycleSpec c = gen_theorem17_cycle(M);
    // Cop starts at M+1 and walks M+1 -> M -> M-1 ...; it crosses {M-1, M} at t = 1.
    c.patterns[M - 1] = Pattern::from_string("01");
    return c;
}

CycleSpec extend_cycle(const CycleSpec& c, std::uint32_t new_length) {
    if (new_length < c.length())
        throw DomainError("cannot shrink a cycle");
    if (c.patterns.empty() || c.patterns.back() != Pattern::always())
        throw DomainError("closing edge must be always present to extend the cycle");
    CycleSpec out = c;
    out.patterns.resize(new_length, Pattern::always());
    return out;
}

CycleSpec gen_random_cycle(std::uint32_t n, std::uint32_t max_len, std::uint64_t seed) {
    if (n < 3)
        throw DomainError("a cycle needs at least 3 vertices");
    if (max_len < 1)
        throw DomainError("max pattern length must be >= 1");
    std::mt19937_64 rng(seed);
    CycleSpec c;
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t len = 1 + static_cast<std::uint32_t>(rng() % max_len);
        std::vector<bool> bits(len);
        do {
            for (std::uint32_t j = 0; j < len; ++j)
                bits[j] = rng() & 1U;
        } while (std::none_of(bits.begin(), bits.end(), [](bool b) { return b; }));
        c.patterns.push_back(Pattern::from_bits(bits, std::max<std::size_t>(max_len, kDefaultMaxPatternLength)));
    }
    return c;
}

std::vector<Pattern> all_patterns_up_to(std::uint32_t max_len) {
    std::vector<Pattern> out;
    for (std::uint32_t len = 1; len <= max_len; ++len)
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << len); ++mask) {
            std::vector<bool> bits(len);
            for (std::uint32_t j = 0; j < len; ++j)
                bits[j] = (mask >> j) & 1U;
            out.push_back(Pattern::from_bits(bits, std::max<std::size_t>(max_len, kDefaultMaxPatternLength)));
        }
    return out;
}

Policy hide_escape_policy(const CycleSpec& c) {
    const std::uint32_t n = c.length();
    const auto period = c.period();
    if (n < 3 || n < period.robber_win_threshold())
        throw DomainError("hide/escape needs n >= 2*l*LCM = " + std::to_string(period.robber_win_threshold()) +
                          ", cycle has " + std::to_string(n));
    auto choose = [patterns = c.patterns, n](const Position& p) -> Vertex {
        const Vertex r = p.robber;
        const Vertex cw = (r + 1) % n;
        const Vertex ccw = (r + n - 1) % n;
        const bool cw_open = patterns[r].present_at(p.time);
        const bool ccw_open = patterns[ccw].present_at(p.time);
        // Clockwise distance from cop to robber; antipodal iff 2d in {n-1, n, n+1}.
        auto offset = [&](Vertex v) { return (v + n - p.cop) % n; };
        auto off_antipode = [&](Vertex v) {
            const std::int64_t twice = 2 * std::int64_t{offset(v)} - n;
            return twice < 0 ? -twice : twice;
        };
        auto antipodal = [&](Vertex v) { return off_antipode(v) <= 1; };

        std::optional<Vertex> hide;
        for (Vertex v : {r, cw, ccw}) {
            const bool reachable = v == r || (v == cw && cw_open) || (v == ccw && ccw_open);
            if (reachable && antipodal(v) && (!hide || v < *hide))
                hide = v;
        }
        if (hide)
            return *hide;
        // Escape: flee along the shorter arc's direction, i.e. the way the cop advanced.
        const bool cop_behind_ccw = 2 * offset(r) < n;
        if (cop_behind_ccw)
            return cw_open ? cw : r;
        return ccw_open ? ccw : r;
    };
    return {std::move(choose), "hide-escape", true};
}

Policy policy_by_name(const std::string& kind, const SolveResult& res, Mover role, std::uint64_t seed) {
    if (kind == "optimal")
        return role == Mover::Cop ? optimal_cop_policy(res) : optimal_robber_policy(res);
    if (kind == "stay")
        return stay_put_policy();
    if (kind == "random")
        return random_policy(res.graph(), seed);
    if (role == Mover::Robber && kind == "rank-max")
        return rank_maximizing_robber_policy(res);
    if (role == Mover::Robber && kind == "hide-escape")
        return hide_escape_policy(CycleSpec::from_graph(res.graph()));
    throw DomainError("unknown " + std::string(role == Mover::Cop ? "cop" : "robber") + " policy '" + kind + "'");
}

std::vector<std::string> EscapeAnalysis::violations() const {
    std::vector<std::string> out;
    for (const auto& s : strips) {
        const std::string tag = "strip " + std::to_string(s.index) + ": ";
        if (s.edge_count() < 2)
            out.push_back(tag + "fewer than two edges");
        if (s.index >= 2) {
            if (!s.robber_last)
                out.push_back(tag + "robber never crossed its last edge");
            else if (!(*s.robber_last < s.cop_first))
                out.push_back(tag + "T^L_R = " + std::to_string(*s.robber_last) +
                              " not before T^F_C = " + std::to_string(s.cop_first));
        }
        if (!s.robber_next_first)
            out.push_back(tag + "robber never reached the next strip");
        else if (!(s.cop_last > *s.robber_next_first))
            out.push_back(tag + "T^L_C = " + std::to_string(s.cop_last) + " not after T^F_R(next) = " +
                          std::to_string(*s.robber_next_first));
    }
    return out;
}

EscapeAnalysis strip_analysis(const CycleSpec& c, Vertex cop_start, int direction, std::uint64_t t0,
                              std::uint64_t horizon) {
    const std::uint32_t n = c.length();
    if (n < 3)
        throw DomainError("a cycle needs at least 3 vertices");
    if (cop_start >= n)
        throw DomainError("cop start outside the cycle");
    if (direction != 1 && direction != -1)
        throw DomainError("direction must be +1 or -1");
    const auto period = c.period();
    EscapeAnalysis out;
    out.block = period.block_length();
    out.max_len = period.max_len;
    const std::uint64_t B = out.block;
    if (horizon == 0)
        horizon = 4 * B * B;
    const std::uint64_t blocks = horizon / B;
    const std::uint64_t end_time = t0 + (blocks + 1) * B;

    auto pattern_at = [&](std::uint64_t j) -> const Pattern& {
        const std::uint64_t idx = direction > 0 ? (cop_start + j) % n : (cop_start + n - 1 - j % n) % n;
        return c.patterns[idx];
    };
    // Earliest crossing time of every unrolled edge from (start, from_time).
    auto walk = [&](std::uint64_t start, std::uint64_t from_time) {
        std::vector<std::uint64_t> crossed;
        std::uint64_t pos = start;
        for (std::uint64_t t = from_time; t < end_time; ++t)
            if (pattern_at(pos).present_at(t)) {
                crossed.push_back(t);
                ++pos;
            }
        return crossed;
    };

    const auto cop = walk(0, t0);
    // Edge range of strip i (1-based): crossings within [t0 + (i-1)B, t0 + iB - 1].
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    std::size_t j = 0;
    for (std::uint64_t i = 1; i <= blocks + 1; ++i) {
        const std::uint64_t hi = t0 + i * B;
        const std::size_t first = j;
        while (j < cop.size() && cop[j] < hi)
            ++j;
        if (j == first)
            break;
        ranges.emplace_back(first, j - 1);
    }
    if (ranges.size() < 2)
        return out;

    const std::uint64_t robber_start = ranges[1].first;
    const auto robber = walk(robber_start, t0);
    auto robber_time = [&](std::uint64_t edge) -> std::optional<std::uint64_t> {
        if (edge < robber_start || edge - robber_start >= robber.size())
            return std::nullopt;
        return robber[edge - robber_start];
    };

    for (std::size_t i = 0; i < ranges.size() && i < blocks; ++i) {
        Strip s;
        s.index = static_cast<std::uint32_t>(i + 1);
        s.first_edge = ranges[i].first;
        s.last_edge = ranges[i].second;
        s.cop_first = cop[s.first_edge];
        s.cop_last = cop[s.last_edge];
        if (i >= 1) {
            s.robber_first = robber_time(s.first_edge);
            s.robber_last = robber_time(s.last_edge);
        }
        if (i + 1 < ranges.size())
            s.robber_next_first = robber_time(ranges[i + 1].first);
        out.strips.push_back(s);
    }
    return out;
}

namespace {

struct InstanceOutcome {
    InstanceStatus status = InstanceStatus::Checked;
    std::optional<Winner> verdict;
    std::int64_t margin = 0;
    std::string note;
};

SweepInstance describe(std::uint64_t id, CycleSpec cycle) {
    SweepInstance inst;
    inst.id = id;
    const auto period = cycle.period();
    inst.lcm = period.lcm;
    inst.l = period.bound_multiplier;
    inst.threshold = period.robber_win_threshold();
    inst.cycle = std::move(cycle);
    return inst;
}

} // namespace

SweepReport verify_theorem16(const std::vector<std::uint32_t>& lengths, const std::vector<Pattern>& pool,
                             const SweepOptions& options) {
    if (pool.empty())
        throw DomainError("pattern pool is empty");
    for (std::uint32_t n : lengths)
        if (n < 3)
            throw DomainError("cycle length must be >= 3, got " + std::to_string(n));

    // Instance generator: id -> cycle.
    std::function<CycleSpec(std::uint64_t)> make;
    std::uint64_t total = 0;
    std::vector<CycleSpec> sampled;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> buckets; // (first id, n)
    if (options.mode == SweepMode::Exhaustive) {
        for (std::uint32_t n : lengths) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < n; ++i)
                if (__builtin_mul_overflow(count, pool.size(), &count))
                    throw ResourceError("exhaustive sweep too large", ~0ULL, ~0ULL);
            buckets.emplace_back(total, n);
            total += count;
        }
        make = [&](std::uint64_t id) {
            auto it = std::upper_bound(buckets.begin(), buckets.end(), id,
                                       [](std::uint64_t x, const auto& b) { return x < b.first; });
            --it;
            std::uint64_t code = id - it->first;
            CycleSpec c;
            for (std::uint32_t i = 0; i < it->second; ++i) {
                c.patterns.push_back(pool[code % pool.size()]);
                code /= pool.size();
            }
            return c;
        };
    } else {
        if (!options.at_threshold && lengths.empty())
            throw DomainError("sample mode needs cycle lengths unless at_threshold is set");
        std::mt19937_64 rng(options.seed);
        std::vector<std::uint32_t> pool_lengths;
        for (const auto& p : pool)
            pool_lengths.push_back(p.length());
        std::sort(pool_lengths.begin(), pool_lengths.end());
        pool_lengths.erase(std::unique(pool_lengths.begin(), pool_lengths.end()), pool_lengths.end());
        for (std::size_t k = 0; k < options.samples; ++k) {
            std::vector<std::uint32_t> chosen;
            while (chosen.empty())
                for (std::uint32_t len : pool_lengths)
                    if (rng() & 1U)
                        chosen.push_back(len);
            std::vector<const Pattern*> allowed;
            for (const auto& p : pool)
                if (std::find(chosen.begin(), chosen.end(), p.length()) != chosen.end())
                    allowed.push_back(&p);
            std::uint32_t n = 0;
            if (options.at_threshold) {
                n = static_cast<std::uint32_t>(std::max<std::uint64_t>(3, summarize_lengths(chosen).robber_win_threshold()));
            } else {
                n = lengths[rng() % lengths.size()];
            }
            CycleSpec c;
            // Each chosen length appears at least once so the profile is exact.
            for (std::uint32_t len : chosen) {
                std::vector<const Pattern*> of_len;
                for (const auto* p : allowed)
                    if (p->length() == len)
                        of_len.push_back(p);
                c.patterns.push_back(*of_len[rng() % of_len.size()]);
            }
            while (c.patterns.size() < n)
                c.patterns.push_back(*allowed[rng() % allowed.size()]);
            c.patterns.resize(std::max<std::size_t>(n, 3), c.patterns.front());
            for (std::size_t i = c.patterns.size(); i > 1; --i)
                std::swap(c.patterns[i - 1], c.patterns[rng() % i]);
            sampled.push_back(std::move(c));
        }
        total = sampled.size();
        make = [&](std::uint64_t id) { return sampled[id]; };
    }

    std::vector<InstanceOutcome> outcomes(total);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t id = next++; id < total; id = next++) {
            const CycleSpec c = make(id);
            auto& out = outcomes[id];
            const auto period = c.period();
            out.margin = std::int64_t(c.length()) - std::int64_t(period.robber_win_threshold());
            if (out.margin < 0)
                out.status = InstanceStatus::BelowBound;
            try {
                const auto res = decide(c.to_graph(), options.solve);
                out.verdict = res.winner;
                if (options.on_solved)
                    options.on_solved(c, res);
            } catch (const ResourceError& err) {
                out.status = InstanceStatus::Skipped;
                out.note = err.what();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool_threads;
        for (unsigned i = 0; i < threads; ++i)
            pool_threads.emplace_back(worker);
    }

    SweepReport report;
    report.total = total;
    double margin_sum = 0;
    for (std::uint64_t id = 0; id < total; ++id) {
        const auto& out = outcomes[id];
        const bool keep_detail = options.keep_instances || out.status == InstanceStatus::Skipped ||
                                 (out.status == InstanceStatus::Checked && out.verdict == Winner::CopWin) ||
                                 (out.status == InstanceStatus::BelowBound && out.verdict == Winner::CopWin &&
                                  report.below_bound_cop_wins.size() < 64);
        std::optional<SweepInstance> inst;
        if (keep_detail) {
            inst = describe(id, make(id));
            inst->status = out.status;
            inst->verdict = out.verdict;
            inst->note = out.note;
        }
        switch (out.status) {
        case InstanceStatus::Skipped:
            ++report.skipped;
            report.skipped_instances.push_back(*inst);
            break;
        case InstanceStatus::BelowBound:
            ++report.below_bound;
            if (out.verdict == Winner::CopWin) {
                ++report.below_bound_cop_win;
                if (inst && report.below_bound_cop_wins.size() < 64)
                    report.below_bound_cop_wins.push_back(*inst);
            }
            break;
        case InstanceStatus::Checked: {
            const auto margin = out.margin;
            if (report.checked == 0) {
                report.min_margin = report.max_margin = margin;
            } else {
                report.min_margin = std::min(report.min_margin, margin);
                report.max_margin = std::max(report.max_margin, margin);
            }
            margin_sum += double(margin);
            ++report.checked;
            if (out.verdict == Winner::RobberWin)
                ++report.robber_win;
            else
                report.counterexamples.push_back(*inst);
            break;
        }
        }
        if (options.keep_instances)
            report.instances.push_back(*inst);
    }
    report.mean_margin = report.checked ? margin_sum / double(report.checked) : 0.0;
    return report;
}

} // namespace epcr
