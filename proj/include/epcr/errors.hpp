#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace epcr {

// Precondition or invariant violation on a domain object.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed .epg input; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A construction would exceed its configured budget (or overflow).
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::uint64_t requested, std::uint64_t limit)
        : std::runtime_error(what + " (requested " + std::to_string(requested) + ", limit " +
                             std::to_string(limit) + ")"),
          requested_(requested), limit_(limit) {}

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t requested_;
    std::uint64_t limit_;
};

// A move that the game rules forbid.
class RuleViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace epcr
