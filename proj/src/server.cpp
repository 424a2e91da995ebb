#include "epcr/server.hpp"

#include <csignal>
#include <iostream>
#include <thread>

#include <httplib.h>

namespace epcr {

namespace {

std::atomic<bool>* g_stop = nullptr;

extern "C" void on_signal(int) {
    if (g_stop)
        g_stop->store(true);
}

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        reply(res, 200, fn());
    } catch (const ApiError& err) {
        reply(res, err.status(), json{{"error", err.what()}});
    } catch (const json::exception& err) {
        reply(res, 400, json{{"error", std::string("invalid JSON: ") + err.what()}});
    } catch (const std::exception& err) {
        reply(res, 500, json{{"error", err.what()}});
    }
}

json body_of(const httplib::Request& req) {
    return req.body.empty() ? json::object() : json::parse(req.body);
}

} // namespace

int serve(const ServeOptions& options, std::atomic<bool>& stop, bool install_signal_handlers) {
    SessionManager manager(options.sessions);
    httplib::Server svr;
    const int threads = options.worker_threads;
    svr.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };

    svr.Post("/session", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return manager.create(body_of(req)); });
    });
    svr.Post(R"(/session/([^/]+)/start)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return manager.start(req.matches[1], body_of(req)); });
    });
    svr.Post(R"(/session/([^/]+)/move)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return manager.move(req.matches[1], body_of(req)); });
    });
    svr.Get(R"(/session/([^/]+)/hints)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return manager.hints(req.matches[1]); });
    });
    svr.Get(R"(/session/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return manager.get(req.matches[1]); });
    });
    if (!options.static_dir.empty() && !svr.set_mount_point("/", options.static_dir)) {
        std::cerr << "static directory '" << options.static_dir << "' not found\n";
        return 2;
    }

    int port = options.port;
    if (port == 0) {
        port = svr.bind_to_any_port(options.host);
        if (port <= 0) {
            std::cerr << "cannot bind any port on " << options.host << "\n";
            return 2;
        }
    } else if (!svr.bind_to_port(options.host, port)) {
        std::cerr << "cannot bind " << options.host << ":" << port << "\n";
        return 2;
    }
    if (options.bound_port)
        options.bound_port->store(port);
    if (install_signal_handlers) {
        g_stop = &stop;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
    }
    std::jthread watcher([&] {
        while (!stop.load())
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
        svr.stop();
    });
    std::cerr << "serving on http://" << options.host << ":" << port << "\n";
    svr.listen_after_bind();
    stop.store(true);
    if (install_signal_handlers)
        g_stop = nullptr;
    return 0;
}

} // namespace epcr
