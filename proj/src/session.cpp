#include "epcr/session.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "epcr/epg_io.hpp"
#include "epcr/errors.hpp"

namespace epcr {

namespace {

const char* phase_name(Phase p) {
    switch (p) {
    case Phase::CopStart:
        return "cop_start";
    case Phase::RobberStart:
        return "robber_start";
    case Phase::Play:
        return "play";
    case Phase::Over:
        return "over";
    }
    return "unknown";
}

Vertex vertex_field(const json& body, const SessionState& s) {
    if (!body.is_object() || !body.contains("vertex") || !body["vertex"].is_number_integer())
        throw ApiError(400, "body must be {\"vertex\": <int>}");
    const auto v = body["vertex"].get<std::int64_t>();
    if (v < 0 || v >= std::int64_t(s.graph->vertex_count()))
        throw ApiError(422, "vertex " + std::to_string(v) + " is not in the graph");
    return static_cast<Vertex>(v);
}

std::string new_token(std::uint64_t counter) {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream out;
    out << std::hex << rng() << '-' << counter;
    return out.str();
}

} // namespace

SessionManager::SessionManager(SessionOptions options) : options_(std::move(options)) {}

std::size_t SessionManager::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::size_t SessionManager::evict_idle() {
    const auto now = std::chrono::steady_clock::now();
    std::lock_guard lock(mutex_);
    std::size_t evicted = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
        if (session_lock.owns_lock() && now - it->second->last_access > options_.idle_timeout) {
            session_lock.unlock();
            it = sessions_.erase(it);
            ++evicted;
        } else {
            ++it;
        }
    }
    return evicted;
}

std::shared_ptr<SessionState> SessionManager::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw ApiError(404, "unknown session '" + id + "'");
    return it->second;
}

json SessionManager::describe(const SessionState& s) const {
    json j;
    j["session_id"] = s.id;
    j["phase"] = phase_name(s.phase);
    j["human_role"] = s.human == Role::Cop ? "cop" : "robber";
    j["winner"] = to_string(s.solve->winner);
    j["cop"] = s.cop_start ? json(s.current.cop) : json(nullptr);
    j["robber"] = s.robber_start ? json(s.current.robber) : json(nullptr);
    j["mover"] = to_string(s.current.mover);
    j["time"] = s.current.time;
    json present = json::array();
    for (EdgeId e = 0; e < s.graph->edge_count(); ++e)
        if (s.graph->edge_present(e, s.current.time))
            present.push_back({s.graph->edges()[e].u, s.graph->edges()[e].v});
    j["present_edges"] = std::move(present);
    if (s.phase == Phase::Play || s.phase == Phase::Over)
        j["in_attractor"] = s.solve->winning_for_cop(s.current);
    else
        j["in_attractor"] = nullptr;
    j["outcome"] = s.phase == Phase::Over ? json("captured") : json(nullptr);
    json history = json::array();
    for (const auto& p : s.history)
        history.push_back(to_json(p));
    j["history"] = std::move(history);
    return j;
}

json SessionManager::create(const json& body) {
    if (!body.is_object() || !body.contains("epg") || !body["epg"].is_string())
        throw ApiError(400, "body must contain \"epg\": <string>");
    const std::string role = body.value("human_role", std::string("cop"));
    if (role != "cop" && role != "robber")
        throw ApiError(400, "human_role must be \"cop\" or \"robber\"");
    evict_idle();
    if (size() >= options_.max_sessions)
        throw ApiError(503, "session limit reached");

    auto s = std::make_shared<SessionState>();
    try {
        s->graph = std::make_shared<const EdgePeriodicGraph>(parse_epg(body["epg"].get<std::string>()));
        solve_slots_.acquire();
        try {
            s->solve = std::make_shared<const SolveResult>(decide(s->graph, options_.solve));
        } catch (...) {
            solve_slots_.release();
            throw;
        }
        solve_slots_.release();
    } catch (const ParseError& err) {
        throw ApiError(400, err.what());
    } catch (const ResourceError& err) {
        throw ApiError(413, err.what());
    }
    s->human = role == "cop" ? Role::Cop : Role::Robber;
    s->engine = s->human == Role::Cop ? optimal_robber_policy(*s->solve) : optimal_cop_policy(*s->solve);
    s->last_access = std::chrono::steady_clock::now();
    if (s->human == Role::Robber) {
        s->cop_start = optimal_cop_start(*s->solve);
        s->current.cop = *s->cop_start;
        s->phase = Phase::RobberStart;
    }
    {
        std::lock_guard lock(mutex_);
        s->id = new_token(++counter_);
        sessions_[s->id] = s;
    }
    json out;
    out["session_id"] = s->id;
    out["winner"] = to_string(s->solve->winner);
    if (s->human == Role::Cop)
        out["optimal_start"] = s->solve->cop_start ? json(*s->solve->cop_start) : json(nullptr);
    else
        out["optimal_start"] = json(optimal_robber_start(*s->solve, *s->cop_start));
    std::lock_guard session_lock(s->mutex);
    out["state"] = describe(*s);
    return out;
}

std::optional<json> SessionManager::engine_turn(SessionState& s) {
    if (s.phase != Phase::Play)
        return std::nullopt;
    const bool engine_moves = (s.current.mover == Mover::Cop) == (s.human == Role::Robber);
    if (!engine_moves)
        return std::nullopt;
    const Vertex dest = s.engine->choose(s.current);
    s.current = apply_move(*s.graph, s.current, dest);
    s.history.push_back(s.current);
    if (s.current.captured())
        s.phase = Phase::Over;
    return describe(s);
}

json SessionManager::start(const std::string& id, const json& body) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    s->last_access = std::chrono::steady_clock::now();
    const Vertex v = vertex_field(body, *s);
    if (s->phase == Phase::CopStart && s->human == Role::Cop) {
        s->cop_start = v;
        s->robber_start = optimal_robber_start(*s->solve, v);
    } else if (s->phase == Phase::RobberStart && s->human == Role::Robber) {
        s->robber_start = v;
    } else {
        throw ApiError(409, std::string("start vertex not expected in phase ") + phase_name(s->phase) +
                                " (cop chooses first, robber second)");
    }
    s->current = Position{*s->cop_start, *s->robber_start, Mover::Cop, 0};
    s->history.assign(1, s->current);
    s->phase = s->current.captured() ? Phase::Over : Phase::Play;
    engine_turn(*s);
    return describe(*s);
}

json SessionManager::move(const std::string& id, const json& body) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    s->last_access = std::chrono::steady_clock::now();
    if (s->phase != Phase::Play)
        throw ApiError(409, std::string("no moves in phase ") + phase_name(s->phase));
    const bool human_turn = (s->current.mover == Mover::Cop) == (s->human == Role::Cop);
    if (!human_turn)
        throw ApiError(409, "not the human player's turn");
    const Vertex v = vertex_field(body, *s);
    try {
        s->current = apply_move(*s->graph, s->current, v);
    } catch (const RuleViolation& err) {
        throw ApiError(422, err.what());
    }
    s->history.push_back(s->current);
    if (s->current.captured())
        s->phase = Phase::Over;
    json out;
    out["state"] = describe(*s);
    if (auto reply = engine_turn(*s))
        out["engine_reply"] = std::move(*reply);
    if (s->phase == Phase::Over)
        out["outcome"] = "captured";
    return out;
}

json SessionManager::get(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    s->last_access = std::chrono::steady_clock::now();
    return describe(*s);
}

json SessionManager::hints(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    s->last_access = std::chrono::steady_clock::now();
    json out;
    out["mover"] = to_string(s->current.mover);
    json moves = json::array();
    if (s->phase == Phase::Play) {
        for (Vertex d : legal_moves(*s->graph, s->current)) {
            const Position next = apply_move(*s->graph, s->current, d);
            const auto rank = s->solve->attractor.rank_of(s->solve->state_of(next));
            moves.push_back({{"vertex", d},
                             {"in_attractor", rank.has_value()},
                             {"rank", rank ? json(*rank) : json(nullptr)},
                             {"captures", next.captured()}});
        }
    }
    out["moves"] = std::move(moves);
    return out;
}

} // namespace epcr
