#pragma once

#include <json.hpp>

#include "epcr/cycles.hpp"
#include "epcr/simulator.hpp"
#include "epcr/solve.hpp"

namespace epcr {

using json = nlohmann::ordered_json;

struct SolveJsonOptions {
    bool timings = true;
    // Per-state membership, rank and strategy arrays; O(|V'|).
    bool strategy = false;
};

const char* to_string(Winner w);
const char* to_string(Mover m);
const char* to_string(Outcome o);

json to_json(const SolveResult& res, const SolveJsonOptions& options = {});
json to_json(const Position& p);
json to_json(const Playout& playout);
json to_json(const EscapeAnalysis& analysis);
json to_json(const SweepInstance& inst);
json to_json(const SweepReport& report);

} // namespace epcr
