#include "intsched/formula.hpp"

#include <algorithm>
#include <sstream>

namespace intsched::sat {

void validate_formula(const SatStarFormula& formula) {
    const std::size_t count = formula.clauses.size();
    if (count % 2 != 0) {
        throw FormulaError("kind balance: odd number of clauses (" + std::to_string(count) + ")");
    }
    const std::size_t m = count / 2;
    for (std::size_t i = 0; i < count; ++i) {
        const int expected = i < m ? 1 : 2;
        if (formula.clauses[i].kind != expected) {
            throw FormulaError("kind balance: clause " + std::to_string(i) + " has kind " +
                               std::to_string(formula.clauses[i].kind) + ", expected " +
                               std::to_string(expected) + " (all 1-in-3 clauses first, equal counts)");
        }
    }
    std::vector<int> occurrences(2 * formula.variable_count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        for (const Literal& lit : formula.clauses[i].literals) {
            if (lit.var >= formula.variable_count) {
                throw FormulaError("variable out of range in clause " + std::to_string(i));
            }
            ++occurrences[2 * lit.var + (lit.positive ? 0 : 1)];
        }
    }
    for (std::size_t v = 0; v < occurrences.size(); ++v) {
        if (occurrences[v] != 2) {
            throw FormulaError(std::string("each literal occurs exactly twice: ") +
                               (v % 2 == 0 ? "x" : "!x") + std::to_string(v / 2) + " occurs " +
                               std::to_string(occurrences[v]) + " times");
        }
    }
}

SatStarFormula parse_formula(const std::string& text) {
    SatStarFormula formula;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    long max_var = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw FormulaError("line " + std::to_string(line_no) + ": expected `k: l1 l2 l3`");
        }
        Clause clause;
        std::istringstream head(line.substr(0, colon));
        std::istringstream body(line.substr(colon + 1));
        std::string rest;
        if (!(head >> clause.kind) || (head >> rest) || (clause.kind != 1 && clause.kind != 2)) {
            throw FormulaError("line " + std::to_string(line_no) + ": clause kind must be 1 or 2");
        }
        for (Literal& lit : clause.literals) {
            long value = 0;
            if (!(body >> value) || value == 0) {
                throw FormulaError("line " + std::to_string(line_no) +
                                   ": expected three nonzero literals");
            }
            lit.positive = value > 0;
            lit.var = static_cast<std::size_t>(std::labs(value) - 1);
            max_var = std::max(max_var, std::labs(value));
        }
        if (body >> rest) {
            throw FormulaError("line " + std::to_string(line_no) + ": more than three literals");
        }
        formula.clauses.push_back(clause);
    }
    formula.variable_count = static_cast<std::size_t>(max_var);
    validate_formula(formula);
    return formula;
}

std::string to_text(const SatStarFormula& formula) {
    std::ostringstream out;
    for (const Clause& clause : formula.clauses) {
        out << clause.kind << ':';
        for (const Literal& lit : clause.literals) {
            out << ' ' << (lit.positive ? "" : "-") << lit.var + 1;
        }
        out << '\n';
    }
    return out.str();
}

SatStarFormula minimal_formula() {
    return parse_formula("1: 1 2 -3\n1: -1 2 3\n2: 1 -2 -3\n2: -1 -2 3\n");
}

OccurrenceMap kappa(const SatStarFormula& formula) {
    validate_formula(formula);
    const std::size_t n = formula.variable_count;
    OccurrenceMap map;
    map.forward.resize(4 * n);
    map.inverse.resize(3 * formula.clauses.size());
    std::vector<std::size_t> next(2 * n, 0);
    for (std::size_t i = 0; i < formula.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) {
            const Literal& lit = formula.clauses[i].literals[s];
            const std::size_t polarity = lit.positive ? 0 : 1;
            const std::size_t t = 2 * polarity + next[2 * lit.var + polarity]++;
            map.forward[4 * lit.var + t] = {i, s};
            map.inverse[3 * i + s] = {lit.var, t};
        }
    }
    return map;
}

bool evaluate(const SatStarFormula& formula, const Assignment& assignment) {
    if (assignment.size() != formula.variable_count) {
        throw FormulaError("assignment has " + std::to_string(assignment.size()) +
                           " values for " + std::to_string(formula.variable_count) + " variables");
    }
    for (const Clause& clause : formula.clauses) {
        int truths = 0;
        for (const Literal& lit : clause.literals) {
            if (assignment[lit.var] == lit.positive) ++truths;
        }
        if (truths != clause.kind) return false;
    }
    return true;
}

namespace {

void enumerate(const SatStarFormula& formula, bool first_only, std::vector<Assignment>& out) {
    const std::size_t n = formula.variable_count;
    if (n > kBruteForceLimit) {
        throw FormulaError("brute force refuses n = " + std::to_string(n) + " > " +
                           std::to_string(kBruteForceLimit));
    }
    Assignment assignment(n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        for (std::size_t j = 0; j < n; ++j) assignment[j] = (bits >> j) & 1U;
        if (evaluate(formula, assignment)) {
            out.push_back(assignment);
            if (first_only) return;
        }
    }
}

}  // namespace

std::optional<Assignment> sat_brute_force(const SatStarFormula& formula) {
    std::vector<Assignment> found;
    enumerate(formula, true, found);
    if (found.empty()) return std::nullopt;
    return found.front();
}

std::vector<Assignment> all_satisfying(const SatStarFormula& formula) {
    std::vector<Assignment> found;
    enumerate(formula, false, found);
    return found;
}

SatStarFormula random_formula(std::size_t n, std::mt19937_64& rng) {
    if (n % 3 != 0) {
        throw FormulaError("random_formula needs n divisible by 3 (6m = 4n)");
    }
    std::vector<Literal> pool;
    for (std::size_t j = 0; j < n; ++j) {
        pool.insert(pool.end(), {{j, true}, {j, true}, {j, false}, {j, false}});
    }
    while (true) {
        std::shuffle(pool.begin(), pool.end(), rng);
        SatStarFormula formula;
        formula.variable_count = n;
        bool degenerate = false;
        const std::size_t clauses = pool.size() / 3;
        for (std::size_t i = 0; i < clauses; ++i) {
            Clause clause;
            clause.kind = i < clauses / 2 ? 1 : 2;
            clause.literals = {pool[3 * i], pool[3 * i + 1], pool[3 * i + 2]};
            if (clause.literals[0] == clause.literals[1] && clause.literals[1] == clause.literals[2]) {
                degenerate = true;
            }
            formula.clauses.push_back(clause);
        }
        if (!degenerate) {
            validate_formula(formula);
            return formula;
        }
    }
}

}  // namespace intsched::sat
