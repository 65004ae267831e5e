#include "intsched/lp.hpp"

#include <ostream>
#include <sstream>

namespace intsched::lp {

namespace {

Integer floor_of(const Rational& value) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

constexpr std::size_t kNoVariable = static_cast<std::size_t>(-1);

}  // namespace

std::optional<std::string> RoundingParams::violated_inequality() const {
    if (sgn(gamma) <= 0 || sgn(xi) <= 0) {
        return std::string("gamma > 0 and xi > 0");
    }
    if (!(gamma <= xi)) {
        return std::string("gamma <= xi");
    }
    if (!(gamma + xi <= Rational(1, 12))) {
        return std::string("gamma + xi <= 1/12");
    }
    if (!(8 * xi + 7 * gamma <= Rational(3, 4))) {
        return std::string("8 xi + 7 gamma <= 3/4");
    }
    return std::nullopt;
}

const char* to_string(SizeClass cls) {
    switch (cls) {
        case SizeClass::Small: return "small";
        case SizeClass::Large: return "large";
        case SizeClass::Huge: return "huge";
    }
    return "?";
}

SizeClass classify(const Integer& size, const Integer& makespan, const Rational& xi) {
    const Integer twice = 2 * size;
    if (twice <= makespan) {
        return SizeClass::Small;
    }
    const Rational large_cap = (Rational(1, 2) + xi) * Rational(makespan);
    if (Rational(size) <= large_cap) {
        return SizeClass::Large;
    }
    return SizeClass::Huge;
}

Integer ub(const RaiInstance& inst, const Integer& makespan, const Rational& xi, MachineId l,
          MachineId r) {
    if (l > r) {
        throw std::invalid_argument("ub: l > r");
    }
    if (sgn(makespan) <= 0) {
        throw std::invalid_argument("ub: makespan must be positive");
    }
    Integer small_load = 0;
    for (const RaiJob& job : inst.jobs()) {
        if (job.first >= l && job.last <= r && classify(job.size, makespan, xi) == SizeClass::Small) {
            small_load += job.size;
        }
    }
    const Integer length = static_cast<unsigned long>(r - l + 1);
    const Rational numerator(makespan * length - small_load);
    const Rational denominator = (Rational(1, 2) + xi) * Rational(makespan);
    Rational quotient = numerator / denominator;
    quotient.canonicalize();
    return floor_of(quotient);
}

void LpModel::write(std::ostream& out) const {
    auto var_name = [&](std::size_t v) {
        return "x_" + std::to_string(variables[v].machine) + "_" + std::to_string(variables[v].job);
    };
    out << "\\ extended assignment LP, T = " << makespan.get_str() << "\n";
    out << "Minimize\n obj: 0\nSubject To\n";
    for (const Row& row : rows) {
        out << " " << row.name << ":";
        if (row.terms.empty()) {
            out << " 0";
        }
        bool first = true;
        for (const auto& [v, coeff] : row.terms) {
            const bool negative = sgn(coeff) < 0;
            out << (negative ? " - " : (first ? " " : " + "));
            Rational magnitude = abs(coeff);
            if (magnitude != 1) {
                out << magnitude.get_str() << " ";
            }
            out << var_name(v);
            first = false;
        }
        out << (row.sense == Sense::Equal ? " = " : " <= ") << row.rhs.get_str() << "\n";
    }
    out << "Bounds\n";
    for (std::size_t v = 0; v < variables.size(); ++v) {
        out << " 0 <= " << var_name(v) << " <= 1\n";
    }
    out << "End\n";
}

LpModel build_lp(const RaiInstance& inst, const Integer& makespan, const RoundingParams& params) {
    const std::size_t m = inst.machine_count();
    const std::size_t n = inst.job_count();
    LpModel model;
    model.machine_count = m;
    model.job_count = n;
    model.makespan = makespan;

    std::vector<SizeClass> classes(n, SizeClass::Small);
    if (sgn(makespan) > 0) {
        for (const RaiJob& job : inst.jobs()) {
            classes[job.id] = classify(job.size, makespan, params.xi);
        }
    }

    std::vector<std::size_t> index(m * n, kNoVariable);
    for (const RaiJob& job : inst.jobs()) {
        if (job.size > makespan) {
            continue;  // p_ij > T: pruned
        }
        for (MachineId i = job.first; i <= job.last; ++i) {
            index[i * n + job.id] = model.variables.size();
            model.variables.push_back({i, job.id});
        }
    }

    for (const RaiJob& job : inst.jobs()) {
        Row row{"c1_" + std::to_string(job.id), {}, Sense::Equal, Rational(1)};
        for (MachineId i = job.first; i <= job.last; ++i) {
            if (index[i * n + job.id] != kNoVariable) {
                row.terms.emplace_back(index[i * n + job.id], Rational(1));
            }
        }
        model.rows.push_back(std::move(row));
    }
    for (MachineId i = 0; i < m; ++i) {
        Row row{"c2_" + std::to_string(i), {}, Sense::LessEqual, Rational(makespan)};
        for (JobId j = 0; j < n; ++j) {
            if (index[i * n + j] != kNoVariable) {
                row.terms.emplace_back(index[i * n + j], Rational(inst.job(j).size));
            }
        }
        model.rows.push_back(std::move(row));
    }
    for (MachineId i = 0; i < m; ++i) {
        Row row{"c4_" + std::to_string(i), {}, Sense::LessEqual, Rational(1)};
        for (JobId j = 0; j < n; ++j) {
            if (index[i * n + j] != kNoVariable && classes[j] != SizeClass::Small) {
                row.terms.emplace_back(index[i * n + j], Rational(1));
            }
        }
        model.rows.push_back(std::move(row));
    }
    if (sgn(makespan) > 0) {
        for (MachineId l = 0; l < m; ++l) {
            for (MachineId r = l; r < m; ++r) {
                Row row{"c5_" + std::to_string(l) + "_" + std::to_string(r), {}, Sense::LessEqual,
                        Rational(ub(inst, makespan, params.xi, l, r))};
                for (MachineId i = l; i <= r; ++i) {
                    for (JobId j = 0; j < n; ++j) {
                        if (index[i * n + j] != kNoVariable && classes[j] == SizeClass::Huge) {
                            row.terms.emplace_back(index[i * n + j], Rational(1));
                        }
                    }
                }
                model.rows.push_back(std::move(row));
            }
        }
    }
    return model;
}

FractionalAssignment::FractionalAssignment(std::size_t machines, std::size_t jobs, Integer makespan)
    : machines_(machines), jobs_(jobs), makespan_(std::move(makespan)), x_(machines * jobs) {}

std::optional<std::vector<Rational>> find_feasible_point(std::size_t variable_count,
                                                         const std::vector<Row>& rows) {
    // Column layout: structural variables, then one slack or surplus per
    // inequality row, then one artificial per row that needs it.
    const std::size_t row_count = rows.size();
    std::vector<bool> flipped(row_count, false);
    std::vector<std::size_t> slack_col(row_count, kNoVariable);
    std::vector<std::size_t> artificial_col(row_count, kNoVariable);
    std::size_t cols = variable_count;
    for (std::size_t r = 0; r < row_count; ++r) {
        flipped[r] = sgn(rows[r].rhs) < 0;
        if (rows[r].sense == Sense::LessEqual) {
            slack_col[r] = cols++;
        }
    }
    const std::size_t first_artificial = cols;
    for (std::size_t r = 0; r < row_count; ++r) {
        if (rows[r].sense == Sense::Equal || flipped[r]) {
            artificial_col[r] = cols++;
        }
    }

    // Tableau rows hold B^-1 A | B^-1 b; the last entry of each row is the rhs.
    const std::size_t width = cols + 1;
    std::vector<Rational> tab(row_count * width);
    std::vector<std::size_t> basis(row_count);
    auto cell = [&](std::size_t r, std::size_t c) -> Rational& { return tab[r * width + c]; };

    for (std::size_t r = 0; r < row_count; ++r) {
        const int sign = flipped[r] ? -1 : 1;
        for (const auto& [v, coeff] : rows[r].terms) {
            cell(r, v) += sign * coeff;
        }
        if (slack_col[r] != kNoVariable) {
            cell(r, slack_col[r]) = sign;
        }
        if (artificial_col[r] != kNoVariable) {
            cell(r, artificial_col[r]) = 1;
            basis[r] = artificial_col[r];
        } else {
            basis[r] = slack_col[r];
        }
        cell(r, cols) = sign * rows[r].rhs;
    }

    // Reduced costs of the phase-one objective (sum of artificials).
    std::vector<Rational> reduced(width);
    for (std::size_t c = first_artificial; c < cols; ++c) {
        reduced[c] = 1;
    }
    for (std::size_t r = 0; r < row_count; ++r) {
        if (basis[r] >= first_artificial) {
            for (std::size_t c = 0; c < width; ++c) {
                reduced[c] -= cell(r, c);
            }
        }
    }

    while (true) {
        std::size_t entering = kNoVariable;
        for (std::size_t c = 0; c < cols; ++c) {
            if (sgn(reduced[c]) < 0) {
                entering = c;
                break;
            }
        }
        if (entering == kNoVariable) {
            break;
        }
        std::size_t leaving = kNoVariable;
        Rational best_ratio;
        for (std::size_t r = 0; r < row_count; ++r) {
            const Rational& pivot = cell(r, entering);
            if (sgn(pivot) <= 0) {
                continue;
            }
            Rational ratio = cell(r, cols) / pivot;
            if (leaving == kNoVariable || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving == kNoVariable) {
            // Phase one is bounded below by zero, so this cannot happen.
            throw InvariantFault("phase-one simplex reported an unbounded direction");
        }
        const Rational pivot = cell(leaving, entering);
        for (std::size_t c = 0; c < width; ++c) {
            cell(leaving, c) /= pivot;
        }
        for (std::size_t r = 0; r < row_count; ++r) {
            if (r == leaving) continue;
            const Rational factor = cell(r, entering);
            if (sgn(factor) == 0) continue;
            for (std::size_t c = 0; c < width; ++c) {
                if (sgn(cell(leaving, c)) != 0) {
                    cell(r, c) -= factor * cell(leaving, c);
                }
            }
        }
        const Rational factor = reduced[entering];
        for (std::size_t c = 0; c < width; ++c) {
            if (sgn(cell(leaving, c)) != 0) {
                reduced[c] -= factor * cell(leaving, c);
            }
        }
        basis[leaving] = entering;
    }

    for (std::size_t r = 0; r < row_count; ++r) {
        if (basis[r] >= first_artificial && sgn(cell(r, cols)) != 0) {
            return std::nullopt;
        }
    }
    std::vector<Rational> point(variable_count);
    for (std::size_t r = 0; r < row_count; ++r) {
        if (basis[r] < variable_count) {
            point[basis[r]] = cell(r, cols);
        }
    }
    return point;
}

std::optional<FractionalAssignment> solve_feasibility(const LpModel& model) {
    auto point = find_feasible_point(model.variables.size(), model.rows);
    if (!point) {
        return std::nullopt;
    }
    FractionalAssignment x(model.machine_count, model.job_count, model.makespan);
    for (std::size_t v = 0; v < model.variables.size(); ++v) {
        x.at(model.variables[v].machine, model.variables[v].job) = (*point)[v];
    }
    return x;
}

std::optional<FractionalAssignment> solve_at(const RaiInstance& inst, const Integer& makespan,
                                             const RoundingParams& params) {
    return solve_feasibility(build_lp(inst, makespan, params));
}

std::vector<std::string> check_assignment(const RaiInstance& inst, const RoundingParams& params,
                                          const FractionalAssignment& x) {
    std::vector<std::string> problems;
    const Integer& t = x.makespan();
    const std::size_t m = inst.machine_count();
    const std::size_t n = inst.job_count();
    if (x.machine_count() != m || x.job_count() != n) {
        problems.push_back("assignment dimensions do not match the instance");
        return problems;
    }
    const Rational t_q(t);
    const Rational half(1, 2);
    const Rational huge_floor = (half + params.xi) * t_q;
    auto is_small = [&](const RaiJob& job) { return Rational(job.size) <= half * t_q; };
    auto is_huge = [&](const RaiJob& job) { return Rational(job.size) > huge_floor; };

    for (const RaiJob& job : inst.jobs()) {
        Rational placed = 0;
        for (MachineId i = 0; i < m; ++i) {
            const Rational& v = x.at(i, job.id);
            if (sgn(v) < 0 || v > 1) {
                problems.push_back("x(" + std::to_string(i) + "," + std::to_string(job.id) +
                                   ") outside [0,1]");
            }
            if (sgn(v) != 0 && (i < job.first || i > job.last)) {
                problems.push_back("job " + std::to_string(job.id) + " placed off its interval");
            }
            if (sgn(v) != 0 && job.size > t) {
                problems.push_back("job " + std::to_string(job.id) + " larger than T placed");
            }
            placed += v;
        }
        if (placed != 1) {
            problems.push_back("job " + std::to_string(job.id) + " placed " + placed.get_str() +
                               " times");
        }
    }
    for (MachineId i = 0; i < m; ++i) {
        Rational load = 0;
        Rational big = 0;
        for (const RaiJob& job : inst.jobs()) {
            load += Rational(job.size) * x.at(i, job.id);
            if (!is_small(job)) {
                big += x.at(i, job.id);
            }
        }
        if (load > t_q) {
            problems.push_back("machine " + std::to_string(i) + " load " + load.get_str() +
                               " exceeds T");
        }
        if (big > 1) {
            problems.push_back("machine " + std::to_string(i) + " holds " + big.get_str() +
                               " large/huge jobs");
        }
    }
    if (sgn(t) > 0) {
        for (MachineId l = 0; l < m; ++l) {
            for (MachineId r = l; r < m; ++r) {
                Rational huge_mass = 0;
                Rational small_inside = 0;
                for (const RaiJob& job : inst.jobs()) {
                    if (is_huge(job)) {
                        for (MachineId i = l; i <= r; ++i) {
                            huge_mass += x.at(i, job.id);
                        }
                    }
                    if (is_small(job) && job.first >= l && job.last <= r) {
                        small_inside += job.size;
                    }
                }
                // Integral count bound: huge_mass <= floor((T*len - small) / huge_floor).
                Rational limit = (t_q * static_cast<unsigned long>(r - l + 1) - small_inside) / huge_floor;
                mpz_class bound;
                mpz_fdiv_q(bound.get_mpz_t(), limit.get_num_mpz_t(), limit.get_den_mpz_t());
                if (huge_mass > Rational(bound)) {
                    problems.push_back("interval [" + std::to_string(l) + "," + std::to_string(r) +
                                       "] holds " + huge_mass.get_str() + " huge jobs, bound " +
                                       bound.get_str());
                }
            }
        }
    }
    return problems;
}

}  // namespace intsched::lp
