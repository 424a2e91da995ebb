#pragma once

#include <atomic>
#include <string>

#include "epcr/session.hpp"

namespace epcr {

struct ServeOptions {
    std::string host = "127.0.0.1";
    int port = 8080; // 0 picks a free port
    std::string static_dir; // optional playground assets
    int worker_threads = 8;
    SessionOptions sessions;
    std::atomic<int>* bound_port = nullptr; // receives the port once listening
};

// Blocks until `stop` becomes true (or SIGINT/SIGTERM when install_signal_handlers).
// Returns 0 on a clean shutdown and 2 when the port cannot be bound.
int serve(const ServeOptions& options, std::atomic<bool>& stop, bool install_signal_handlers = true);

} // namespace epcr
