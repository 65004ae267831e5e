// 3-SAT* formulas: equally many 1-in-3 and 2-in-3 clauses, every literal
// occurring exactly twice.
//
// Text format, one clause per line: `k: l1 l2 l3` with k in {1,2} and
// 1-based variable numbers, negative for negated literals. Blank lines and
// lines starting with '#' are ignored. All kind-1 clauses come first.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace intsched::sat {

/// Malformed text or a violated 3-SAT* invariant; the message names which.
class FormulaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Literal {
    std::size_t var = 0;
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
    std::array<Literal, 3> literals;
    int kind = 1;  // satisfied iff exactly `kind` literals are true

    friend bool operator==(const Clause&, const Clause&) = default;
};

struct SatStarFormula {
    std::size_t variable_count = 0;  // n
    std::vector<Clause> clauses;     // 2m clauses, first m of kind 1

    std::size_t half() const { return clauses.size() / 2; }  // m
    friend bool operator==(const SatStarFormula&, const SatStarFormula&) = default;
};

using Assignment = std::vector<bool>;   // x_j = true means top
using Pair = std::pair<std::size_t, std::size_t>;

/// Throws FormulaError naming the first violated invariant.
void validate_formula(const SatStarFormula& formula);

SatStarFormula parse_formula(const std::string& text);
std::string to_text(const SatStarFormula& formula);

/// (x0, x1, !x2)_1 & (!x0, x1, x2)_1 & (x0, !x1, !x2)_2 & (!x0, !x1, x2)_2
SatStarFormula minimal_formula();

/// kappa: (j,t) -> (i,s). Slots t = 0,1 are the positive occurrences of x_j
/// and t = 2,3 the negative ones, each in clause-major scan order.
struct OccurrenceMap {
    std::vector<Pair> forward;                 // index 4j + t
    std::vector<Pair> inverse;                 // index 3i + s

    const Pair& operator()(std::size_t j, std::size_t t) const { return forward[4 * j + t]; }
    const Pair& inv(std::size_t i, std::size_t s) const { return inverse[3 * i + s]; }
};

OccurrenceMap kappa(const SatStarFormula& formula);

bool evaluate(const SatStarFormula& formula, const Assignment& assignment);

/// First satisfying assignment in counting order (x_0 is the low bit), if any.
std::optional<Assignment> sat_brute_force(const SatStarFormula& formula);
std::vector<Assignment> all_satisfying(const SatStarFormula& formula);

/// Shuffles the 4n literal occurrences and cuts them into triples; the
/// first half become 1-in-3 clauses. Retries when a triple repeats one
/// literal three times. n must be a multiple of 3.
SatStarFormula random_formula(std::size_t n, std::mt19937_64& rng);

constexpr std::size_t kBruteForceLimit = 24;

}  // namespace intsched::sat
