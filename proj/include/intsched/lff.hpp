// Least-flexible-first heuristic and the lower bound L it is measured against.
#pragma once

#include <optional>
#include <utility>

#include "intsched/core.hpp"

namespace intsched::lff {

struct LffBound {
    Rational value;
    std::optional<JobId> job_witness;                          // max-size job
    std::optional<std::pair<MachineId, MachineId>> interval_witness;  // average-load interval
};

/// L = max(max_j p_j, max_{l<=r} p(J(l,r)) / (r - l + 1)), exact.
LffBound lower_bound(const RaiInstance& inst);

/// Least flexible first: among unplaced jobs eligible on the current machine
/// pick the smallest r(j), ties by id, while the machine load is at most L.
Schedule lff_schedule(const RaiInstance& inst);
Schedule lff_schedule(const RaiInstance& inst, const Rational& bound);

/// Index of the least flexible job in `pool` (by last machine, then id).
JobId least_flexible(const RaiInstance& inst, const std::vector<JobId>& pool);

}  // namespace intsched::lff
