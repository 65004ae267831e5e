// Exact rank-three numeric realization of the Lrs3Ra gadget.
//
// Machine i has speed N^{e_d(i)} in dimension d and job j has size
// coef_d(j) * N^{x_d(j)}, so p'_ij = sum_d coef_d(j) * N^{x_d(j) + e_d(i)}.
// With delta in (0,1], K >= 1, eps = delta/2, N = K/eps and bigC = 16n every
// pair must be Eligible (p_j <= p'_ij <= p_j + delta, j eligible on i in the
// gadget) or Blocked (p'_ij > K, j not eligible on i).
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "intsched/core.hpp"
#include "intsched/formula.hpp"
#include "intsched/gadgets.hpp"

namespace intsched::lrs3 {

/// coef * N^exponent; a zero coefficient is an absent dimension.
struct Term {
    Rational coef;
    long exponent = 0;
};

struct Lrs3Numeric {
    Rational delta;
    Rational cap;   // K
    Rational eps;   // delta / 2
    Rational base;  // N = K / eps
    long big_c = 0;
    std::size_t k = 0;
    std::size_t block_count = 0;  // 3k + 2

    gadgets::GadgetInstance gadget;
    gadgets::Lrs3Layout layout;
    RestrictedInstance view;
    std::vector<std::array<long, 3>> machine_speed;  // exponent of N per dimension
    std::vector<std::array<Term, 3>> job_size;
    std::vector<std::size_t> machine_block;

    /// N^e, cached.
    const Rational& power(long e) const;

private:
    mutable std::map<long, Rational> powers_;
};

/// Throws std::invalid_argument unless delta in (0,1] and cap >= 1.
Lrs3Numeric build_numeric(const sat::SatStarFormula& formula, const Rational& delta, const Rational& cap);

Rational lrs3_processing_time(const Lrs3Numeric& num, JobId job, MachineId machine);

enum class Lrs3Class { Eligible, Blocked };
const char* to_string(Lrs3Class c);

/// Throws InvariantFault when neither (or both) of the two cases holds.
Lrs3Class lrs3_classify(const Lrs3Numeric& num, JobId job, MachineId machine);

/// Dominant-exponent certificate: true when a single term already exceeds K.
/// False means "not certified", not "eligible".
bool lrs3_shortcut_blocked(const Lrs3Numeric& num, JobId job, MachineId machine);

struct Lrs3SweepStats {
    std::uint64_t pairs = 0;
    std::uint64_t full_evaluations = 0;
    std::uint64_t shortcut_certified = 0;
    std::uint64_t shortcut_fallbacks = 0;  // shortcut inconclusive, full evaluation used
    std::uint64_t eligible = 0;
    std::uint64_t blocked = 0;
    std::uint64_t mismatches = 0;              // class disagrees with gadget eligibility
    std::uint64_t faults = 0;                  // neither or both cases held
    std::uint64_t shortcut_disagreements = 0;  // shortcut said blocked, full evaluation did not
    std::vector<std::string> examples;         // first few failures

    bool ok() const { return mismatches == 0 && faults == 0 && shortcut_disagreements == 0; }
};

/// Own and adjacent blocks of every job are evaluated exactly, plus
/// `sampled_distant` random distant blocks; every other pair uses the shortcut
/// with full evaluation as fallback. Deterministic for a given seed.
Lrs3SweepStats lrs3_sweep(const Lrs3Numeric& num, std::uint64_t seed = 20240611,
                          std::size_t sampled_distant = 3);

}  // namespace intsched::lrs3
