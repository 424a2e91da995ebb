#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "epcr/cycles.hpp"
#include "epcr/epg_io.hpp"
#include "epcr/server.hpp"
#include "epcr/session.hpp"

using namespace epcr;

namespace {

const std::string kThm17 = serialize_epg(gen_theorem17_cycle(2).to_graph());

int status_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ApiError& err) {
        return err.status();
    }
    return 200;
}

// Plays the human cop along the lowest-rank hint until capture.
json play_as_cop(SessionManager& m, const std::string& id) {
    for (int i = 0; i < 100; ++i) {
        const auto h = m.hints(id);
        REQUIRE(h["mover"] == "cop");
        json best;
        for (const auto& mv : h["moves"]) {
            CHECK(mv["in_attractor"].get<bool>() == !mv["rank"].is_null());
            if (!mv["rank"].is_null() && (best.is_null() || mv["rank"] < best["rank"]))
                best = mv;
        }
        REQUIRE(!best.is_null());
        const auto out = m.move(id, {{"vertex", best["vertex"]}});
        if (out.contains("outcome"))
            return out;
    }
    FAIL("no capture within 100 moves");
    return {};
}

} // namespace

TEST_CASE("session lifecycle with a human cop") {
    SessionManager m;
    const auto created = m.create({{"epg", kThm17}, {"human_role", "cop"}});
    CHECK(created["winner"] == "cop");
    const std::string id = created["session_id"];
    CHECK(created["state"]["phase"] == "cop_start");
    CHECK(m.size() == 1);

    CHECK(status_of([&] { m.move(id, {{"vertex", 0}}); }) == 409);
    const Vertex x = theorem17_cop_start(2);
    const auto started = m.start(id, {{"vertex", x}});
    CHECK(started["phase"] == "play");
    CHECK(started["mover"] == "cop");
    CHECK(started["in_attractor"] == true);
    CHECK(started["cop"] == x);
    CHECK(status_of([&] { m.start(id, {{"vertex", 0}}); }) == 409);

    // hints agree with attractor membership: from a winning cop position some move stays winning
    const auto h = m.hints(id);
    bool any = false;
    for (const auto& mv : h["moves"])
        any = any || mv["in_attractor"].get<bool>();
    CHECK(any);

    const auto end = play_as_cop(m, id);
    CHECK(end["outcome"] == "captured");
    CHECK(m.get(id)["phase"] == "over");
    CHECK(status_of([&] { m.move(id, {{"vertex", 0}}); }) == 409);
}

TEST_CASE("session rule enforcement") {
    SessionManager m;
    const std::string id = m.create({{"epg", kThm17}})["session_id"];
    m.start(id, {{"vertex", 4}});
    const auto state = m.get(id);
    const Vertex cop = state["cop"];
    try {
        m.move(id, {{"vertex", (cop + 2) % 6}});
        FAIL("illegal move accepted");
    } catch (const ApiError& err) {
        CHECK(err.status() == 422);
        CHECK(std::string(err.what()).find("no edge") != std::string::npos);
    }
    CHECK(status_of([&] { m.move(id, {{"vertex", 17}}); }) == 422);
    CHECK(status_of([&] { m.move(id, {{"v", 1}}); }) == 400);
    CHECK(status_of([&] { m.get("nope"); }) == 404);
    CHECK(status_of([&] { m.create({{"epg", "n 2\ne 0 1 000"}}); }) == 400);
    CHECK(status_of([&] { m.create({{"epg", kThm17}, {"human_role", "judge"}}); }) == 400);
    CHECK(status_of([&] { m.create(json::object()); }) == 400);

    // an edge that exists but is absent at this time step
    SessionManager slow;
    const std::string sid = slow.create({{"epg", "n 3\ne 0 1 01\ne 1 2 1\n"}})["session_id"];
    slow.start(sid, {{"vertex", 0}});
    try {
        slow.move(sid, {{"vertex", 1}});
        FAIL("absent edge accepted");
    } catch (const ApiError& err) {
        CHECK(err.status() == 422);
        CHECK(std::string(err.what()).find("absent at time step 0") != std::string::npos);
    }
}

TEST_CASE("session with a human robber") {
    SessionManager m;
    const auto created = m.create({{"epg", kThm17}, {"human_role", "robber"}});
    const std::string id = created["session_id"];
    CHECK(created["state"]["phase"] == "robber_start");
    CHECK(created["state"]["cop"].is_number());
    CHECK(status_of([&] { m.move(id, {{"vertex", 0}}); }) == 409);
    const Vertex cop = created["state"]["cop"];
    const auto started = m.start(id, {{"vertex", (cop + 3) % 6}});
    // the engine cop has already replied
    CHECK(started["mover"] == "robber");
    CHECK(started["history"].size() == 2);
    for (int i = 0; i < 100 && m.get(id)["phase"] == "play"; ++i) {
        const Vertex r = m.get(id)["robber"];
        m.move(id, {{"vertex", r}});
    }
    CHECK(m.get(id)["phase"] == "over");
}

TEST_CASE("idle eviction") {
    SessionOptions o;
    o.idle_timeout = std::chrono::seconds(0);
    o.max_sessions = 1;
    SessionManager m(o);
    m.create({{"epg", kThm17}});
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    CHECK(m.evict_idle() == 1);
    CHECK(m.size() == 0);

    SessionOptions keep;
    keep.max_sessions = 1;
    SessionManager full(keep);
    full.create({{"epg", kThm17}});
    CHECK(status_of([&] { full.create({{"epg", kThm17}}); }) == 503);
}

TEST_CASE("HTTP API end to end") {
    std::atomic<bool> stop{false};
    std::atomic<int> port{0};
    ServeOptions opt;
    opt.port = 0;
    opt.worker_threads = 2;
    opt.bound_port = &port;
    std::thread server([&] { serve(opt, stop, false); });
    for (int i = 0; i < 200 && port.load() == 0; ++i)
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    REQUIRE(port.load() > 0);

    httplib::Client cli("127.0.0.1", port.load());
    auto post = [&](const std::string& path, const json& body) {
        auto res = cli.Post(path, body.dump(), "application/json");
        REQUIRE(res);
        return std::make_pair(res->status, json::parse(res->body));
    };
    auto [st, created] = post("/session", {{"epg", kThm17}, {"human_role", "cop"}});
    CHECK(st == 200);
    const std::string id = created["session_id"];
    CHECK(!id.empty());

    auto [st2, started] = post("/session/" + id + "/start", {{"vertex", 3}});
    CHECK(st2 == 200);
    CHECK(started["phase"] == "play");

    auto [st3, bad] = post("/session/" + id + "/move", {{"vertex", 5}});
    CHECK(st3 == 422);
    CHECK(bad["error"].get<std::string>().find("cannot move") != std::string::npos);

    auto hints = cli.Get("/session/" + id + "/hints");
    REQUIRE(hints);
    CHECK(hints->status == 200);
    const auto hj = json::parse(hints->body);
    for (const auto& mv : hj["moves"]) {
        auto [s, out] = post("/session/" + id + "/move", {{"vertex", mv["vertex"]}});
        CHECK(s == 200);
        break;
    }
    auto got = cli.Get("/session/" + id);
    REQUIRE(got);
    CHECK(json::parse(got->body)["session_id"] == id);
    CHECK(cli.Get("/session/missing")->status == 404);
    auto malformed = cli.Post("/session", "{not json", "application/json");
    REQUIRE(malformed);
    CHECK(malformed->status == 400);

    stop = true;
    server.join();
}
