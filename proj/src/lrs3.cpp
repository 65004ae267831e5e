#include "intsched/lrs3.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <set>

namespace intsched::lrs3 {

using gadgets::Lrs3Job;
using gadgets::Lrs3Machine;

namespace {

Rational pow_rational(const Rational& base, unsigned long e) {
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    Rational out(num, den);
    out.canonicalize();
    return out;
}

long ceil_half(std::size_t q) { return static_cast<long>((q + 1) / 2); }

// Smallest e with coef * N^e > K.
long threshold(const Lrs3Numeric& num, const Rational& coef) {
    long e = 0;
    if (coef * num.power(0) > num.cap) {
        while (coef * num.power(e - 1) > num.cap) --e;
    } else {
        while (!(coef * num.power(e) > num.cap)) ++e;
    }
    return e;
}

std::optional<Lrs3Class> classify_or_none(const Lrs3Numeric& num, JobId job, MachineId machine) {
    const Rational p = lrs3_processing_time(num, job, machine);
    const Rational pj(num.view.job(job).size);
    const bool eligible = pj <= p && p <= pj + num.delta;
    const bool blocked = p > num.cap;
    if (eligible == blocked) return std::nullopt;
    return eligible ? Lrs3Class::Eligible : Lrs3Class::Blocked;
}

}  // namespace

const Rational& Lrs3Numeric::power(long e) const {
    auto it = powers_.find(e);
    if (it != powers_.end()) return it->second;
    Rational value = pow_rational(base, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e < 0) value = 1 / value;
    return powers_.emplace(e, value).first->second;
}

Lrs3Numeric build_numeric(const sat::SatStarFormula& formula, const Rational& delta, const Rational& cap) {
    if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("delta must lie in (0,1]");
    if (!(cap >= 1)) throw std::invalid_argument("cap K must be at least 1");
    Lrs3Numeric num;
    num.delta = delta;
    num.cap = cap;
    num.eps = delta / 2;
    num.base = cap / num.eps;
    num.delta.canonicalize();
    num.cap.canonicalize();
    num.eps.canonicalize();
    num.base.canonicalize();
    num.big_c = 16 * static_cast<long>(formula.variable_count);
    num.gadget = gadgets::reduce_lrs3_ra(formula);
    num.layout = gadgets::lrs3_layout(formula);
    num.view = num.gadget.restricted();
    num.k = num.layout.trace.k;
    num.block_count = 3 * num.k + 2;

    const auto& trace = num.layout.trace;
    const long C = num.big_c;
    const long K3 = 3 * static_cast<long>(num.k);
    auto iota = [&](std::size_t l, std::size_t j, std::size_t t) { return static_cast<long>(trace.iota(l, j, t)); };
    auto istar = [&](std::size_t l) { return static_cast<long>(trace.iota_star[l]); };

    for (const Lrs3Machine& m : num.layout.machines) {
        const long l = static_cast<long>(m.l);
        const long q = static_cast<long>(m.q);
        const long j = static_cast<long>(m.j);
        const long i = static_cast<long>(m.i);
        const long s = static_cast<long>(m.s);
        std::array<long, 3> a{};  // speed is (1/N)^a
        switch (m.kind) {
            case Lrs3Machine::Kind::T:
                a = {-2 * (4 * j + 2 * q), C + 2 * j + q, -C + 2 * j + q};
                break;
            case Lrs3Machine::Kind::S: {
                const long io = iota(m.l + ceil_half(m.q), m.j, m.t);
                a = {-2 * io, -(3 * l + q) * C + 2 * io, (3 * l + q) * C + 2 * io};
                break;
            }
            case Lrs3Machine::Kind::A: {
                const long is = istar(m.l);
                a = {-2 * is + 1, -(3 * l + q) * C + 2 * is - 1, (3 * l + q) * C + 2 * is - 1};
                break;
            }
            case Lrs3Machine::Kind::C:
                a = {-2 * (3 * i + s), -K3 * C + 2 * (3 * i + s), K3 * C + i};
                break;
        }
        num.machine_speed.push_back({-a[0], -a[1], -a[2]});
        num.machine_block.push_back(m.block);
    }

    const Rational one(1);
    const Rational two(2);
    const Rational& eps = num.eps;
    for (const Lrs3Job& job : num.layout.jobs) {
        const long l = static_cast<long>(job.l);
        const long q = static_cast<long>(job.q);
        const long j = static_cast<long>(job.j);
        const long t = static_cast<long>(job.t);
        const long i = static_cast<long>(job.i);
        std::array<Term, 3> size{};
        switch (job.kind) {
            case Lrs3Job::Kind::TJob:
                size = {Term{two, -2 * (4 * j + 2)}, Term{two, C + 2 * j}, Term{0, 0}};
                break;
            case Lrs3Job::Kind::VJob:
                size = {Term{eps, -2 * (4 * j + t)}, Term{one, 2 * (4 * j + t)}, Term{one, -C + 2 * j + t / 2}};
                break;
            case Lrs3Job::Kind::SJob: {
                const sat::Pair jt{job.j, job.t};
                const long is = istar(job.l);
                if (q == 0 && jt == trace.gt[job.l]) {
                    size = {Term{two, -2 * (is + 1)}, Term{eps, -(3 * l + 1) * C + 2 * (is + 1)},
                            Term{two, 3 * l * C + 2 * is}};
                } else if (q == 0 && jt == trace.lt[job.l]) {
                    size = {Term{one, -2 * (is + 1)}, Term{one, -(3 * l + 1) * C + 2 * is},
                            Term{eps, 3 * l * C + 2 * (is + 1)}};
                } else if (q == 1 && jt == trace.gt[job.l]) {
                    size = {Term{eps, -2 * (is + 1)}, Term{two, -(3 * l + 2) * C + 2 * (is + 1)},
                            Term{two, (3 * l + 1) * C + 2 * (is + 1)}};
                } else {
                    const long io = iota(job.l + 1, job.j, job.t);
                    size = {Term{eps, -2 * io}, Term{one, -(3 * l + q + 1) * C + 2 * io},
                            Term{one, (3 * l + q) * C + 2 * io}};
                }
                break;
            }
            case Lrs3Job::Kind::SPrivate: {
                const long io = iota(job.l + ceil_half(job.q), job.j, job.t);
                size = {Term{one, -2 * io}, Term{eps, -(3 * l + q) * C + 2 * io}, Term{eps, (3 * l + q) * C + 2 * io}};
                break;
            }
            case Lrs3Job::Kind::ABJob: {
                const long is = istar(job.l);
                size = {Term{eps, -2 * is + 1}, Term{one, -(3 * l + q + 1) * C + 2 * is - 1},
                        Term{one, (3 * l + q) * C + 2 * is - 1}};
                break;
            }
            case Lrs3Job::Kind::ASJob: {
                const long is = istar(job.l);
                if (q == 0) {
                    size = {Term{one, -2 * is}, Term{eps, -3 * l * C + 2 * is - 1}, Term{one, 3 * l * C + 2 * is - 1}};
                } else if (q == 1) {
                    size = {Term{one, -2 * is}, Term{eps, -(3 * l + 2) * C + 2 * is - 1},
                            Term{one, (3 * l + 2) * C + 2 * is - 1}};
                } else {
                    size = {Term{one, -2 * (is + 1)}, Term{eps, -(3 * l + 2) * C + 2 * is},
                            Term{one, (3 * l + 2) * C + 2 * is}};
                }
                break;
            }
            case Lrs3Job::Kind::APrivate: {
                const long is = istar(job.l);
                size = {Term{one, -2 * is + 1}, Term{eps, -(3 * l + q) * C + 2 * is - 1},
                        Term{eps, (3 * l + q) * C + 2 * is - 1}};
                break;
            }
            case Lrs3Job::Kind::CJob: {
                const int kind = formula.clauses[job.i].kind;
                const long phi = job.s == 0 ? 1 : job.s == 2 ? 2 : 3 - kind;
                size = {Term{eps, -2 * (3 * i + 2)}, Term{0, 0}, Term{Rational(phi), K3 * C + i}};
                break;
            }
        }
        num.job_size.push_back(size);
    }
    return num;
}

Rational lrs3_processing_time(const Lrs3Numeric& num, JobId job, MachineId machine) {
    const auto& size = num.job_size.at(job);
    const auto& speed = num.machine_speed.at(machine);
    Rational total(0);
    for (std::size_t d = 0; d < 3; ++d) {
        if (sgn(size[d].coef) == 0) continue;
        total += size[d].coef * num.power(size[d].exponent + speed[d]);
    }
    return total;
}

const char* to_string(Lrs3Class c) { return c == Lrs3Class::Eligible ? "eligible" : "blocked"; }

Lrs3Class lrs3_classify(const Lrs3Numeric& num, JobId job, MachineId machine) {
    const auto c = classify_or_none(num, job, machine);
    if (!c) {
        throw InvariantFault(num.gadget.job_names[job] + " on " + num.gadget.machine_names[machine] +
                             " is neither eligible-sized nor blocked");
    }
    return *c;
}

bool lrs3_shortcut_blocked(const Lrs3Numeric& num, JobId job, MachineId machine) {
    const auto& size = num.job_size.at(job);
    const auto& speed = num.machine_speed.at(machine);
    for (std::size_t d = 0; d < 3; ++d) {
        if (sgn(size[d].coef) == 0) continue;
        if (size[d].exponent + speed[d] >= threshold(num, size[d].coef)) return true;
    }
    return false;
}

Lrs3SweepStats lrs3_sweep(const Lrs3Numeric& num, std::uint64_t seed, std::size_t sampled_distant) {
    Lrs3SweepStats stats;
    std::mt19937_64 rng(seed);
    const std::size_t machines = num.machine_speed.size();

    // Per-job exponent thresholds: term d alone exceeds K iff speed[d] >= limit[d].
    std::map<Rational, long> by_coef;
    auto limit_of = [&](const Rational& coef) {
        auto it = by_coef.find(coef);
        if (it == by_coef.end()) it = by_coef.emplace(coef, threshold(num, coef)).first;
        return it->second;
    };

    std::vector<std::vector<MachineId>> block_machines(num.block_count);
    for (MachineId i = 0; i < machines; ++i) block_machines[num.machine_block[i]].push_back(i);

    auto record_failure = [&](const std::string& what) {
        if (stats.examples.size() < 10) stats.examples.push_back(what);
    };

    for (JobId j = 0; j < num.job_size.size(); ++j) {
        const RestrictedJob& rj = num.view.job(j);
        std::set<std::size_t> full;
        for (MachineId i : rj.eligible) {
            const std::size_t b = num.machine_block[i];
            full.insert(b);
            if (b > 0) full.insert(b - 1);
            if (b + 1 < num.block_count) full.insert(b + 1);
        }
        std::vector<std::size_t> distant;
        for (std::size_t b = 0; b < num.block_count; ++b) {
            if (!full.count(b)) distant.push_back(b);
        }
        std::vector<std::size_t> sampled;
        std::sample(distant.begin(), distant.end(), std::back_inserter(sampled), sampled_distant, rng);
        full.insert(sampled.begin(), sampled.end());

        std::array<long, 3> limit{};
        const auto& size = num.job_size[j];
        for (std::size_t d = 0; d < 3; ++d) {
            limit[d] = sgn(size[d].coef) == 0 ? std::numeric_limits<long>::max()
                                              : limit_of(size[d].coef) - size[d].exponent;
        }
        auto shortcut = [&](MachineId i) {
            const auto& speed = num.machine_speed[i];
            return speed[0] >= limit[0] || speed[1] >= limit[1] || speed[2] >= limit[2];
        };

        for (std::size_t b = 0; b < num.block_count; ++b) {
            const bool evaluate_fully = full.count(b) > 0;
            for (MachineId i : block_machines[b]) {
                ++stats.pairs;
                auto label = [&] { return num.gadget.job_names[j] + " on " + num.gadget.machine_names[i]; };
                const bool certified = shortcut(i);
                std::optional<Lrs3Class> cls;
                if (evaluate_fully || !certified) {
                    if (evaluate_fully) {
                        ++stats.full_evaluations;
                    } else {
                        ++stats.shortcut_fallbacks;
                    }
                    cls = classify_or_none(num, j, i);
                    if (!cls) {
                        ++stats.faults;
                        record_failure(label() + ": neither eligible-sized nor blocked");
                        continue;
                    }
                    if (certified && *cls != Lrs3Class::Blocked) {
                        ++stats.shortcut_disagreements;
                        record_failure(label() + ": shortcut disagrees with full evaluation");
                    }
                } else {
                    ++stats.shortcut_certified;
                    cls = Lrs3Class::Blocked;
                }
                const bool eligible = *cls == Lrs3Class::Eligible;
                if (eligible) {
                    ++stats.eligible;
                } else {
                    ++stats.blocked;
                }
                if (eligible != rj.eligible_on(i)) {
                    ++stats.mismatches;
                    record_failure(label() + ": classified " + to_string(*cls) + ", gadget says " +
                                   (rj.eligible_on(i) ? "eligible" : "ineligible"));
                }
            }
        }
    }
    return stats;
}

}  // namespace intsched::lrs3
