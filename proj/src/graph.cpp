#include "epcr/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "epcr/errors.hpp"

namespace epcr {

Pattern Pattern::from_string(std::string_view bits, std::size_t max_length) {
    std::vector<bool> v;
    v.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1')
            throw DomainError("pattern may only contain '0' and '1'");
        v.push_back(ch == '1');
    }
    return from_bits(v, max_length);
}

Pattern Pattern::from_bits(const std::vector<bool>& bits, std::size_t max_length) {
    if (bits.empty())
        throw DomainError("pattern must have length >= 1");
    if (bits.size() > max_length)
        throw DomainError("pattern length " + std::to_string(bits.size()) + " exceeds maximum " +
                          std::to_string(max_length));
    if (std::none_of(bits.begin(), bits.end(), [](bool b) { return b; }))
        throw DomainError("pattern has no 1-bit; every edge must be present once per period");
    Pattern p;
    p.length_ = static_cast<std::uint32_t>(bits.size());
    p.words_.assign((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            p.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    return p;
}

Pattern Pattern::always() { return from_bits({true}); }

std::string Pattern::to_string() const {
    std::string s(length_, '0');
    for (std::uint32_t i = 0; i < length_; ++i)
        if (bit(i))
            s[i] = '1';
    return s;
}

std::uint64_t checked_lcm(const std::vector<std::uint32_t>& values) {
    std::uint64_t acc = 1;
    for (std::uint32_t x : values) {
        if (x == 0)
            throw DomainError("lcm of zero is undefined");
        const std::uint64_t step = x / std::gcd(acc, std::uint64_t{x});
        std::uint64_t next = 0;
        if (__builtin_mul_overflow(acc, step, &next))
            throw ResourceError("LCM of pattern lengths overflows 64 bits", std::numeric_limits<std::uint64_t>::max(),
                                std::numeric_limits<std::uint64_t>::max());
        acc = next;
    }
    return acc;
}

PeriodSummary summarize_lengths(std::vector<std::uint32_t> lengths) {
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    PeriodSummary s;
    s.lcm = checked_lcm(lengths);
    s.max_len = lengths.empty() ? 1 : lengths.back();
    s.bound_multiplier = s.lcm >= 2ULL * s.max_len ? 1 : 2;
    s.lengths = std::move(lengths);
    return s;
}

EdgePeriodicGraph::Builder::Builder(std::uint32_t vertex_count) : n_(vertex_count) {
    if (vertex_count == 0)
        throw DomainError("graph needs at least one vertex");
}

EdgePeriodicGraph::Builder& EdgePeriodicGraph::Builder::add_edge(Vertex u, Vertex v, Pattern pattern) {
    if (u >= n_ || v >= n_)
        throw DomainError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} has an endpoint outside [0," +
                          std::to_string(n_) + ")");
    if (u == v)
        throw DomainError("self-loop at vertex " + std::to_string(u));
    edges_.emplace_back(Edge{std::min(u, v), std::max(u, v)}, std::move(pattern));
    return *this;
}

EdgePeriodicGraph EdgePeriodicGraph::Builder::build() && {
    std::stable_sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].first == edges_[i - 1].first)
            throw DomainError("duplicate edge {" + std::to_string(edges_[i].first.u) + "," +
                              std::to_string(edges_[i].first.v) + "}");

    EdgePeriodicGraph g;
    g.n_ = n_;
    g.adjacency_.resize(n_);
    std::vector<std::uint32_t> lengths;
    for (auto& [edge, pattern] : edges_) {
        const auto id = static_cast<EdgeId>(g.edges_.size());
        g.edges_.push_back(edge);
        lengths.push_back(pattern.length());
        g.patterns_.push_back(std::move(pattern));
        g.adjacency_[edge.u].push_back({edge.v, id});
        g.adjacency_[edge.v].push_back({edge.u, id});
    }
    for (auto& adj : g.adjacency_)
        std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    g.period_ = summarize_lengths(std::move(lengths));
    return g;
}

bool EdgePeriodicGraph::has_edge(Vertex u, Vertex v) const noexcept {
    if (u >= n_ || v >= n_)
        return false;
    const auto& adj = adjacency_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), v, [](const Neighbor& a, Vertex x) { return a.vertex < x; });
    return it != adj.end() && it->vertex == v;
}

EdgeId EdgePeriodicGraph::edge_id(Vertex u, Vertex v) const {
    if (u < n_ && v < n_) {
        const auto& adj = adjacency_[u];
        auto it = std::lower_bound(adj.begin(), adj.end(), v, [](const Neighbor& a, Vertex x) { return a.vertex < x; });
        if (it != adj.end() && it->vertex == v)
            return it->edge;
    }
    throw DomainError("{" + std::to_string(u) + "," + std::to_string(v) + "} is not an edge");
}

EdgePeriodicGraph EdgePeriodicGraph::relabeled(const std::vector<Vertex>& perm) const {
    if (perm.size() != n_)
        throw DomainError("permutation size does not match vertex count");
    Builder b(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        b.add_edge(perm.at(edges_[i].u), perm.at(edges_[i].v), patterns_[i]);
    return std::move(b).build();
}

} // namespace epcr
