#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace epcr {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::size_t kDefaultMaxPatternLength = 64;

// Periodic presence pattern of an edge: bit i says whether the edge exists
// in every step t with t mod length() == i.
class Pattern {
public:
    // Parses a string over {0,1}. Throws DomainError when empty, all-zero,
    // longer than `max_length`, or containing other characters.
    static Pattern from_string(std::string_view bits, std::size_t max_length = kDefaultMaxPatternLength);
    static Pattern from_bits(const std::vector<bool>& bits, std::size_t max_length = kDefaultMaxPatternLength);
    // Canonical static edge: "1".
    static Pattern always();

    std::uint32_t length() const noexcept { return length_; }
    bool bit(std::uint32_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    bool present_at(std::uint64_t t) const noexcept { return bit(static_cast<std::uint32_t>(t % length_)); }
    std::string to_string() const;

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    Pattern() = default;

    std::vector<std::uint64_t> words_;
    std::uint32_t length_ = 0;
};

struct Edge {
    Vertex u;
    Vertex v;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct PeriodSummary {
    std::vector<std::uint32_t> lengths; // distinct, ascending
    std::uint64_t lcm = 1;
    std::uint32_t max_len = 1;
    // 1 iff lcm >= 2 * max_len, else 2.
    std::uint32_t bound_multiplier = 2;

    // B of the escape argument: lcm when bound_multiplier == 1, else 2 * lcm.
    std::uint64_t block_length() const noexcept { return bound_multiplier == 1 ? lcm : 2 * lcm; }
    // Cycle length from which robber-win is guaranteed: 2 * l * lcm.
    std::uint64_t robber_win_threshold() const noexcept { return 2ULL * bound_multiplier * lcm; }
};

// lcm of `values`; throws ResourceError on 64-bit overflow.
std::uint64_t checked_lcm(const std::vector<std::uint32_t>& values);
PeriodSummary summarize_lengths(std::vector<std::uint32_t> lengths);

struct Neighbor {
    Vertex vertex;
    EdgeId edge;
};

// Immutable edge-periodic graph over vertices 0..n-1. Edges are stored in
// lexicographic (min endpoint, max endpoint) order.
class EdgePeriodicGraph {
public:
    class Builder {
    public:
        explicit Builder(std::uint32_t vertex_count);
        // Throws DomainError on self-loops, out-of-range endpoints or duplicates.
        Builder& add_edge(Vertex u, Vertex v, Pattern pattern);
        EdgePeriodicGraph build() &&;

    private:
        std::uint32_t n_;
        std::vector<std::pair<Edge, Pattern>> edges_;
    };

    std::uint32_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Pattern& pattern(EdgeId e) const { return patterns_.at(e); }
    const std::vector<Neighbor>& neighbors(Vertex v) const { return adjacency_.at(v); }

    // Throws DomainError if {u,v} is not an edge.
    EdgeId edge_id(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const noexcept;
    bool edge_present(EdgeId e, std::uint64_t t) const { return patterns_.at(e).present_at(t); }
    bool edge_present(Vertex u, Vertex v, std::uint64_t t) const { return edge_present(edge_id(u, v), t); }

    const PeriodSummary& period() const noexcept { return period_; }

    // Same graph with vertex v renamed to perm[v].
    EdgePeriodicGraph relabeled(const std::vector<Vertex>& perm) const;

    friend bool operator==(const EdgePeriodicGraph& a, const EdgePeriodicGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.patterns_ == b.patterns_;
    }

private:
    EdgePeriodicGraph() = default;

    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Pattern> patterns_;
    std::vector<std::vector<Neighbor>> adjacency_;
    PeriodSummary period_;
};

inline PeriodSummary period_summary(const EdgePeriodicGraph& g) { return g.period(); }

} // namespace epcr
