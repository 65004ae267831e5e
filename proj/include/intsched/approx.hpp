// LP rounding for interval-restricted makespan minimization and the binary
// search that wraps it.
//
// Given a feasible fractional assignment x for a guess T, the rounding runs
// three left-to-right sweeps: huge jobs first, then large jobs (two per
// region), then small jobs under the cap (2 - gamma) T.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intsched/core.hpp"
#include "intsched/lp.hpp"

namespace intsched::approx {

/// job -> machine for the jobs placed so far; empty slots are unplaced.
using Partial = std::vector<std::optional<MachineId>>;

struct TraceEvent {
    std::string phase;  // "huge", "border", "region", "large", "small"
    MachineId machine = 0;
    std::optional<JobId> job;
    std::optional<Integer> floor_value;  // cumulative floor where relevant
};

struct HugePlacement {
    Partial placed;
    std::vector<MachineId> trigger_machines;
};

struct Region {
    MachineId first = 0;
    MachineId last = 0;
};

struct Regions {
    std::vector<MachineId> borders;       // i_1 < ... < i_q
    std::optional<MachineId> anchor;      // i_0
    std::vector<Region> regions;          // R^0 .. R^{q-1} after disambiguation
    std::vector<MachineId> candidates;    // sorted
    std::vector<MachineId> original_left; // i_s for region s (before trimming)
    std::vector<MachineId> original_right;// i_{s+1} for region s
};

struct RoundingResult {
    std::vector<lp::SizeClass> classes;
    HugePlacement huge;
    Regions regions;
    Partial large;
    Schedule schedule;
    std::vector<TraceEvent> trace;
};

std::vector<lp::SizeClass> classify_all(const RaiInstance& inst, const Integer& makespan,
                                        const Rational& xi);

HugePlacement place_huge(const RaiInstance& inst, const std::vector<lp::SizeClass>& classes,
                         const lp::FractionalAssignment& x,
                         std::vector<TraceEvent>* trace = nullptr);

Regions map_regions(const RaiInstance& inst, const std::vector<lp::SizeClass>& classes,
                    const lp::FractionalAssignment& x, const HugePlacement& hp,
                    std::vector<TraceEvent>* trace = nullptr);

/// Large jobs only; huge and small slots stay empty.
Partial place_large(const RaiInstance& inst, const std::vector<lp::SizeClass>& classes,
                    const Regions& regions, std::vector<TraceEvent>* trace = nullptr);

/// Fills small jobs on top of `partial`; returns a total schedule.
Schedule place_small(const RaiInstance& inst, const Integer& makespan,
                     const lp::RoundingParams& params, const std::vector<lp::SizeClass>& classes,
                     const Partial& partial, std::vector<TraceEvent>* trace = nullptr);

RoundingResult round(const RaiInstance& inst, const Integer& makespan,
                     const lp::RoundingParams& params, const lp::FractionalAssignment& x);

struct LemmaCheck {
    std::string name;
    bool passed = true;
    std::size_t evaluated = 0;  // how many individual conditions were tested
    std::string detail;         // first failure, if any
};

/// Re-checks every rounding invariant on a finished run.
std::vector<LemmaCheck> check_lemmas(const RaiInstance& inst, const lp::RoundingParams& params,
                                     const lp::FractionalAssignment& x,
                                     const RoundingResult& result);

struct SolveResult {
    Integer t_star;
    Integer lower;
    Integer upper;
    Schedule schedule;
    lp::FractionalAssignment lp_cert;
    RoundingResult rounding;
    std::vector<LemmaCheck> checks;
    std::size_t lp_solves = 0;
};

/// Smallest LP-feasible integer T in [lower, upper] by binary search, then rounding.
SolveResult solve(const RaiInstance& inst, const lp::RoundingParams& params = {});

}  // namespace intsched::approx
