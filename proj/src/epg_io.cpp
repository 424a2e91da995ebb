#include "epcr/epg_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "epcr/errors.hpp"

namespace epcr {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint32_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                                   std::string(tok) + "'");
    return value;
}

} // namespace

EdgePeriodicGraph parse_epg(std::istream& in, const ParseOptions& options) {
    std::optional<EdgePeriodicGraph::Builder> builder;
    std::uint32_t n = 0;
    std::string raw;
    std::size_t line_no = 0;
    std::set<Edge> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        auto tokens = split_ws(raw);
        if (tokens.empty() || tokens.front().front() == '#')
            continue;
        const auto kind = tokens.front();
        if (kind == "n") {
            if (builder)
                throw ParseError(line_no, "duplicate 'n' line");
            if (tokens.size() != 2)
                throw ParseError(line_no, "expected 'n <count>'");
            n = parse_uint(tokens[1], line_no, "vertex count");
            if (n == 0)
                throw ParseError(line_no, "vertex count must be positive");
            builder.emplace(n);
        } else if (kind == "e") {
            if (!builder)
                throw ParseError(line_no, "'e' line before 'n' line");
            if (tokens.size() != 4)
                throw ParseError(line_no, "expected 'e <u> <v> <bits>'");
            const Vertex u = parse_uint(tokens[1], line_no, "u");
            const Vertex v = parse_uint(tokens[2], line_no, "v");
            if (u >= n || v >= n)
                throw ParseError(line_no, "vertex out of range [0," + std::to_string(n) + ")");
            if (u == v)
                throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
            const Edge key{std::min(u, v), std::max(u, v)};
            if (!seen.insert(key).second)
                throw ParseError(line_no, "duplicate edge {" + std::to_string(key.u) + "," +
                                              std::to_string(key.v) + "}");
            try {
                builder->add_edge(u, v, Pattern::from_string(tokens[3], options.max_pattern_length));
            } catch (const DomainError& err) {
                throw ParseError(line_no, err.what());
            }
        } else {
            throw ParseError(line_no, "unknown record '" + std::string(kind) + "'");
        }
    }
    if (!builder)
        throw ParseError(0, "missing 'n' line");
    return std::move(*builder).build();
}

EdgePeriodicGraph parse_epg(std::string_view text, const ParseOptions& options) {
    std::istringstream in{std::string(text)};
    return parse_epg(in, options);
}

EdgePeriodicGraph load_epg(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_epg(in, options);
}

void serialize_epg(std::ostream& out, const EdgePeriodicGraph& g) {
    out << "n " << g.vertex_count() << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        out << "e " << g.edges()[e].u << ' ' << g.edges()[e].v << ' ' << g.pattern(e).to_string() << '\n';
}

std::string serialize_epg(const EdgePeriodicGraph& g) {
    std::ostringstream out;
    serialize_epg(out, g);
    return out.str();
}

} // namespace epcr
