// Exact search oracles for desk-scale instances.
//
// Branching orders are fixed so every run is reproducible:
//   optimal_makespan / optimal_min_load: jobs by decreasing size (ties by id),
//     machines tried in increasing index.
//   exists_exact_T_schedule: propagate to a fixpoint, then branch on the job
//     with the fewest fitting machines (ties: larger size, then smaller id),
//     machines tried in increasing index.
#pragma once

#include <cstdint>
#include <optional>

#include "intsched/core.hpp"

namespace intsched::exact {

struct SearchBudget {
    std::uint64_t node_limit = 200'000'000;
    double time_limit = 600.0;  // seconds
};

/// Found: the search finished (optimum proven, or a schedule exists).
/// Absent: the search finished and no schedule exists.
/// Unknown: the budget ran out first; no claim is made.
enum class SearchStatus { Found, Absent, Unknown };

const char* to_string(SearchStatus status);

struct OptimumResult {
    SearchStatus status = SearchStatus::Unknown;
    Integer opt;         // valid when status == Found
    Schedule schedule;   // attains opt when status == Found
    std::uint64_t nodes = 0;
};

struct ExactResult {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<Schedule> schedule;  // set when status == Found
    std::uint64_t nodes = 0;
};

OptimumResult optimal_makespan(const RestrictedInstance& inst, const SearchBudget& budget = {});
OptimumResult optimal_min_load(const RestrictedInstance& inst, const SearchBudget& budget = {});

/// Searches for a schedule with every machine load exactly T.
/// Absent immediately when the total size differs from T * machine_count.
ExactResult exists_exact_T_schedule(const RestrictedInstance& inst, const Integer& target,
                                    const SearchBudget& budget = {});

}  // namespace intsched::exact
