#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "epcr/graph.hpp"

namespace epcr {

struct ParseOptions {
    std::size_t max_pattern_length = kDefaultMaxPatternLength;
};

// Reads the line-oriented .epg format:
//   # comment
//   n <vertex count>
//   e <u> <v> <bits>
// Throws ParseError carrying the offending line number.
EdgePeriodicGraph parse_epg(std::istream& in, const ParseOptions& options = {});
EdgePeriodicGraph parse_epg(std::string_view text, const ParseOptions& options = {});
EdgePeriodicGraph load_epg(const std::string& path, const ParseOptions& options = {});

void serialize_epg(std::ostream& out, const EdgePeriodicGraph& g);
std::string serialize_epg(const EdgePeriodicGraph& g);

} // namespace epcr
