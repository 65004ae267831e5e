// Extended assignment LP for interval-restricted makespan minimization.
//
// For a guess T the model has one variable x(i,j) per eligible (machine, job)
// pair and the rows
//
//   c1_j   sum_i x(i,j)                    = 1
//   c2_i   sum_j p_j x(i,j)               <= T
//   c4_i   sum_{j large or huge} x(i,j)   <= 1
//   c5_l_r sum_{i in [l,r]} sum_{j huge} x(i,j) <= UB(l,r)
//
// Jobs with p_j > T get no variables, so their c1 row cannot be met.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "intsched/core.hpp"

namespace intsched::lp {

/// Rounding thresholds gamma (makespan slack) and xi (large/huge split).
struct RoundingParams {
    Rational gamma{1, 24};
    Rational xi{1, 24};

    /// Empty when all three inequalities hold, else the first failing one.
    std::optional<std::string> violated_inequality() const;
};

enum class SizeClass { Small, Large, Huge };

const char* to_string(SizeClass cls);

SizeClass classify(const Integer& size, const Integer& makespan, const Rational& xi);

/// floor((T*|M(l,r)| - p(S(l,r))) / ((1/2 + xi) T)); may be negative.
Integer ub(const RaiInstance& inst, const Integer& makespan, const Rational& xi, MachineId l,
          MachineId r);

enum class Sense { LessEqual, Equal };

struct Row {
    std::string name;
    std::vector<std::pair<std::size_t, Rational>> terms;  // (variable index, coefficient)
    Sense sense = Sense::LessEqual;
    Rational rhs;
};

struct Variable {
    MachineId machine;
    JobId job;
};

struct LpModel {
    std::size_t machine_count = 0;
    std::size_t job_count = 0;
    Integer makespan;
    std::vector<Variable> variables;
    std::vector<Row> rows;

    /// Textual LP dump (variables x_i_j, rows c1_j / c2_i / c4_i / c5_l_r).
    void write(std::ostream& out) const;
};

LpModel build_lp(const RaiInstance& inst, const Integer& makespan, const RoundingParams& params);

/// Exact x(i,j) values, dense over machines x jobs; zero off eligibility.
class FractionalAssignment {
public:
    FractionalAssignment() = default;
    FractionalAssignment(std::size_t machines, std::size_t jobs, Integer makespan);

    const Rational& at(MachineId i, JobId j) const { return x_[i * jobs_ + j]; }
    Rational& at(MachineId i, JobId j) { return x_[i * jobs_ + j]; }
    std::size_t machine_count() const { return machines_; }
    std::size_t job_count() const { return jobs_; }
    const Integer& makespan() const { return makespan_; }

private:
    std::size_t machines_ = 0;
    std::size_t jobs_ = 0;
    Integer makespan_;
    std::vector<Rational> x_;
};

/// Phase-one simplex over exact rationals with Bland's rule.
/// Returns a feasible point of `rows` with x >= 0, or nothing when infeasible.
std::optional<std::vector<Rational>> find_feasible_point(std::size_t variable_count,
                                                         const std::vector<Row>& rows);

std::optional<FractionalAssignment> solve_feasibility(const LpModel& model);

/// Convenience: build and solve in one go.
std::optional<FractionalAssignment> solve_at(const RaiInstance& inst, const Integer& makespan,
                                             const RoundingParams& params);

/// Re-evaluates every constraint straight from the instance, independent of
/// the model builder. Returns human-readable violations (empty when feasible).
std::vector<std::string> check_assignment(const RaiInstance& inst, const RoundingParams& params,
                                          const FractionalAssignment& x);

}  // namespace intsched::lp
