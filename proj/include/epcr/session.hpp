#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <vector>

#include "epcr/json_io.hpp"
#include "epcr/simulator.hpp"
#include "epcr/solve.hpp"

namespace epcr {

// API error carrying the HTTP status to report.
class ApiError : public std::runtime_error {
public:
    ApiError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

enum class Role : std::uint8_t { Cop, Robber };
enum class Phase : std::uint8_t { CopStart, RobberStart, Play, Over };

struct SessionState {
    std::string id;
    std::shared_ptr<const EdgePeriodicGraph> graph;
    std::shared_ptr<const SolveResult> solve;
    Role human = Role::Cop;
    Phase phase = Phase::CopStart;
    Position current;
    std::optional<Vertex> cop_start;
    std::optional<Vertex> robber_start;
    std::vector<Position> history;
    std::optional<Policy> engine;
    std::chrono::steady_clock::time_point last_access;
    std::mutex mutex;
};

struct SessionOptions {
    std::chrono::seconds idle_timeout{30 * 60};
    std::size_t max_sessions = 1024;
    SolveOptions solve;
};

// Transport-independent playground API. Every mutation goes through
// legal_moves / apply_move; the engine plays the extracted strategies.
class SessionManager {
public:
    explicit SessionManager(SessionOptions options = {});

    // {epg, human_role} -> {session_id, winner, optimal_start, state}
    json create(const json& body);
    // {vertex} -> state
    json start(const std::string& id, const json& body);
    // {vertex} -> {state, engine_reply?, outcome?}
    json move(const std::string& id, const json& body);
    json get(const std::string& id);
    json hints(const std::string& id);

    std::size_t evict_idle();
    std::size_t size() const;

private:
    std::shared_ptr<SessionState> find(const std::string& id);
    json describe(const SessionState& s) const;
    std::optional<json> engine_turn(SessionState& s);

    SessionOptions options_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<SessionState>> sessions_;
    std::uint64_t counter_ = 0;
    std::counting_semaphore<64> solve_slots_{2};
};

} // namespace epcr
