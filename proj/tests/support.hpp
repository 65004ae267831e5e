// Test-only helpers: random corpora and brute-force oracles that share no
// code with the solvers under test.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "intsched/core.hpp"
#include "intsched/formula.hpp"

namespace testsupport {

using intsched::Integer;
using intsched::Rational;

intsched::RaiInstance random_rai(std::mt19937_64& rng, int min_machines = 2, int max_machines = 6,
                                 int max_jobs = 10, int max_size = 20);

/// `count` instances from a fixed seed.
std::vector<intsched::RaiInstance> corpus(std::size_t count, std::uint64_t seed = 0x5eed);

/// Subset dynamic program over machines: can every job be placed so that each
/// machine load satisfies the predicate? At most ~14 jobs.
enum class LoadRule { AtMost, AtLeast, Exactly };
bool oracle_feasible(const intsched::RestrictedInstance& inst, const Integer& target, LoadRule rule);

Integer oracle_makespan(const intsched::RestrictedInstance& inst);
Integer oracle_min_load(const intsched::RestrictedInstance& inst);

/// max(max p_j, max over intervals of contained load / width), by enumeration.
Rational oracle_lower_bound(const intsched::RaiInstance& inst);

Integer ceil_of(const Rational& value);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// First unsatisfiable valid formula over `n` variables in a fixed enumeration order.
std::optional<intsched::sat::SatStarFormula> find_unsatisfiable(std::size_t n);

}  // namespace testsupport
