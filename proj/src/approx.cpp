#include "intsched/approx.hpp"

#include <algorithm>

#include "intsched/lff.hpp"

namespace intsched::approx {

using lp::SizeClass;

namespace {

Integer floor_of(const Rational& value) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

Integer ceil_of(const Rational& value) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

bool eligible(const RaiJob& job, MachineId i) { return job.first <= i && i <= job.last; }

Rational class_mass(const RaiInstance& inst, const std::vector<SizeClass>& classes,
                    const lp::FractionalAssignment& x, MachineId i, bool huge, bool large) {
    Rational mass = 0;
    for (const RaiJob& job : inst.jobs()) {
        const SizeClass c = classes[job.id];
        if ((huge && c == SizeClass::Huge) || (large && c == SizeClass::Large)) {
            mass += x.at(i, job.id);
        }
    }
    return mass;
}

void record(std::vector<TraceEvent>* trace, const char* phase, MachineId machine,
            std::optional<JobId> job, std::optional<Integer> floor_value = std::nullopt) {
    if (trace) {
        trace->push_back({phase, machine, job, std::move(floor_value)});
    }
}

std::string interval_text(MachineId l, MachineId r) {
    return "[" + std::to_string(l) + "," + std::to_string(r) + "]";
}

}  // namespace

std::vector<SizeClass> classify_all(const RaiInstance& inst, const Integer& makespan,
                                    const Rational& xi) {
    std::vector<SizeClass> classes;
    classes.reserve(inst.job_count());
    for (const RaiJob& job : inst.jobs()) {
        classes.push_back(lp::classify(job.size, makespan, xi));
    }
    return classes;
}

HugePlacement place_huge(const RaiInstance& inst, const std::vector<SizeClass>& classes,
                         const lp::FractionalAssignment& x, std::vector<TraceEvent>* trace) {
    HugePlacement hp;
    hp.placed.assign(inst.job_count(), std::nullopt);
    Rational cumulative = 0;
    Integer previous_floor = 0;
    for (MachineId i = 0; i < inst.machine_count(); ++i) {
        cumulative += class_mass(inst, classes, x, i, true, false);
        const Integer current_floor = floor_of(cumulative);
        if (current_floor > previous_floor) {
            hp.trigger_machines.push_back(i);
            std::vector<JobId> pool;
            for (const RaiJob& job : inst.jobs()) {
                if (classes[job.id] == SizeClass::Huge && !hp.placed[job.id] && eligible(job, i)) {
                    pool.push_back(job.id);
                }
            }
            std::optional<JobId> pick;
            if (!pool.empty()) {
                pick = lff::least_flexible(inst, pool);
                hp.placed[*pick] = i;
            }
            record(trace, "huge", i, pick, current_floor);
        }
        previous_floor = current_floor;
    }
    for (const RaiJob& job : inst.jobs()) {
        if (classes[job.id] == SizeClass::Huge && !hp.placed[job.id]) {
            throw InvariantFault("huge job " + std::to_string(job.id) + " was not placed");
        }
    }
    return hp;
}

Regions map_regions(const RaiInstance& inst, const std::vector<SizeClass>& classes,
                    const lp::FractionalAssignment& x, const HugePlacement& hp,
                    std::vector<TraceEvent>* trace) {
    Regions out;
    const std::size_t m = inst.machine_count();
    std::vector<bool> holds_huge(m, false);
    for (const auto& slot : hp.placed) {
        if (slot) holds_huge[*slot] = true;
    }

    Rational cumulative = 0;
    Integer previous_floor = 0;
    for (MachineId i = 0; i < m; ++i) {
        const Rational large = class_mass(inst, classes, x, i, false, true);
        if (sgn(large) > 0 && !out.anchor) {
            out.anchor = i;
        }
        cumulative += large;
        const Integer current_floor = floor_of(cumulative);
        if (current_floor > previous_floor) {
            out.borders.push_back(i);
            record(trace, "border", i, std::nullopt, current_floor);
        }
        previous_floor = current_floor;
        if (sgn(class_mass(inst, classes, x, i, true, true)) > 0 && !holds_huge[i]) {
            out.candidates.push_back(i);
        }
    }
    if (out.borders.empty()) {
        return out;
    }

    std::vector<MachineId> sequence{*out.anchor};
    sequence.insert(sequence.end(), out.borders.begin(), out.borders.end());
    const std::size_t q = out.borders.size();
    for (std::size_t s = 0; s < q; ++s) {
        out.regions.push_back({sequence[s], sequence[s + 1]});
        out.original_left.push_back(sequence[s]);
        out.original_right.push_back(sequence[s + 1]);
    }
    auto has_candidate = [&](MachineId lo, MachineId hi) {
        auto it = std::lower_bound(out.candidates.begin(), out.candidates.end(), lo);
        return it != out.candidates.end() && *it <= hi;
    };
    for (std::size_t s = 0; s + 1 < q; ++s) {
        const MachineId shared = sequence[s + 1];
        const MachineId lo = out.regions[s].first;
        const bool needs_shared = shared == 0 || lo > shared - 1 || !has_candidate(lo, shared - 1);
        if (needs_shared) {
            out.regions[s + 1].first = shared + 1;
        } else {
            out.regions[s].last = shared - 1;
        }
    }
    for (std::size_t s = 0; s < q; ++s) {
        const Region& region = out.regions[s];
        if (region.first > region.last || !has_candidate(region.first, region.last)) {
            throw InvariantFault("region " + std::to_string(s) + " " +
                                 interval_text(region.first, region.last) + " has no candidate");
        }
        record(trace, "region", region.first, std::nullopt, Integer(static_cast<unsigned long>(s)));
    }
    return out;
}

Partial place_large(const RaiInstance& inst, const std::vector<SizeClass>& classes,
                    const Regions& regions, std::vector<TraceEvent>* trace) {
    Partial placed(inst.job_count());
    std::vector<bool> consumed(inst.machine_count(), false);
    for (const Region& region : regions.regions) {
        auto lo = std::lower_bound(regions.candidates.begin(), regions.candidates.end(), region.first);
        auto hi = std::upper_bound(regions.candidates.begin(), regions.candidates.end(), region.last);
        for (int round = 0; round < 2; ++round) {
            std::vector<JobId> pool;
            for (const RaiJob& job : inst.jobs()) {
                if (classes[job.id] != SizeClass::Large || placed[job.id]) continue;
                if (std::any_of(lo, hi, [&](MachineId c) { return !consumed[c] && eligible(job, c); })) {
                    pool.push_back(job.id);
                }
            }
            if (pool.empty()) {
                break;
            }
            const JobId pick = lff::least_flexible(inst, pool);
            const RaiJob& job = inst.job(pick);
            const MachineId target =
                *std::find_if(lo, hi, [&](MachineId c) { return !consumed[c] && eligible(job, c); });
            placed[pick] = target;
            consumed[target] = true;
            record(trace, "large", target, pick);
        }
    }
    for (const RaiJob& job : inst.jobs()) {
        if (classes[job.id] == SizeClass::Large && !placed[job.id]) {
            throw InvariantFault("large job " + std::to_string(job.id) + " was not placed");
        }
    }
    return placed;
}

Schedule place_small(const RaiInstance& inst, const Integer& makespan,
                     const lp::RoundingParams& params, const std::vector<SizeClass>& classes,
                     const Partial& partial, std::vector<TraceEvent>* trace) {
    Partial placed = partial;
    std::vector<Integer> load(inst.machine_count(), Integer(0));
    for (const RaiJob& job : inst.jobs()) {
        if (placed[job.id]) {
            load[*placed[job.id]] += job.size;
        } else if (classes[job.id] != SizeClass::Small) {
            throw InvariantFault("job " + std::to_string(job.id) + " reached the small phase unplaced");
        }
    }
    const Rational cap = (Rational(2) - params.gamma) * Rational(makespan);
    for (MachineId i = 0; i < inst.machine_count(); ++i) {
        while (true) {
            std::vector<JobId> pool;
            for (const RaiJob& job : inst.jobs()) {
                if (!placed[job.id] && eligible(job, i)) {
                    pool.push_back(job.id);
                }
            }
            if (pool.empty()) {
                break;
            }
            const JobId pick = lff::least_flexible(inst, pool);
            if (Rational(load[i] + inst.job(pick).size) > cap) {
                break;
            }
            placed[pick] = i;
            load[i] += inst.job(pick).size;
            record(trace, "small", i, pick);
        }
    }
    Schedule sched;
    for (JobId j = 0; j < inst.job_count(); ++j) {
        if (!placed[j]) {
            throw InvariantFault("small job " + std::to_string(j) + " was not placed");
        }
        sched.assignment.push_back(*placed[j]);
    }
    return sched;
}

RoundingResult round(const RaiInstance& inst, const Integer& makespan,
                     const lp::RoundingParams& params, const lp::FractionalAssignment& x) {
    RoundingResult result;
    result.classes = classify_all(inst, makespan, params.xi);
    result.huge = place_huge(inst, result.classes, x, &result.trace);
    result.regions = map_regions(inst, result.classes, x, result.huge, &result.trace);
    result.large = place_large(inst, result.classes, result.regions, &result.trace);
    Partial partial = result.huge.placed;
    for (JobId j = 0; j < inst.job_count(); ++j) {
        if (result.large[j]) partial[j] = result.large[j];
    }
    result.schedule = place_small(inst, makespan, params, result.classes, partial, &result.trace);
    return result;
}

std::vector<LemmaCheck> check_lemmas(const RaiInstance& inst, const lp::RoundingParams& params,
                                     const lp::FractionalAssignment& x,
                                     const RoundingResult& result) {
    const std::size_t m = inst.machine_count();
    const Schedule& sched = result.schedule;
    const auto& classes = result.classes;

    // Per-machine fractional and rounded counts by class.
    std::vector<Rational> frac_huge(m), frac_large(m);
    std::vector<int> round_huge(m, 0), round_large(m, 0);
    for (MachineId i = 0; i < m; ++i) {
        frac_huge[i] = class_mass(inst, classes, x, i, true, false);
        frac_large[i] = class_mass(inst, classes, x, i, false, true);
    }
    for (const RaiJob& job : inst.jobs()) {
        if (classes[job.id] == SizeClass::Huge) ++round_huge[sched[job.id]];
        if (classes[job.id] == SizeClass::Large) ++round_large[sched[job.id]];
    }

    auto fail = [](LemmaCheck& check, std::string detail) {
        if (check.passed) {
            check.passed = false;
            check.detail = std::move(detail);
        }
    };

    LemmaCheck placed{"all_jobs_placed", true, 0, ""};
    const ValidationReport report = validate(inst, sched);
    placed.evaluated = inst.job_count();
    if (!report.ok()) {
        fail(placed, report.violations.front().describe());
    }

    LemmaCheck huge_bound{"huge_bound", true, 0, ""};
    LemmaCheck large_bound{"large_bound", true, 0, ""};
    for (MachineId l = 0; l < m; ++l) {
        Rational fh = 0, fl = 0;
        int rh = 0, rl = 0;
        for (MachineId r = l; r < m; ++r) {
            fh += frac_huge[r];
            fl += frac_large[r];
            rh += round_huge[r];
            rl += round_large[r];
            ++huge_bound.evaluated;
            ++large_bound.evaluated;
            if (Integer(rh) > ceil_of(fh)) {
                fail(huge_bound, interval_text(l, r) + ": " + std::to_string(rh) +
                                     " rounded huge vs fractional " + fh.get_str());
            }
            if (!(Rational(rl) < 2 * (fl + 2))) {
                fail(large_bound, interval_text(l, r) + ": " + std::to_string(rl) +
                                      " rounded large vs fractional " + fl.get_str());
            }
        }
    }

    LemmaCheck region_check{"region_candidates", true, 0, ""};
    const Regions& regions = result.regions;
    for (std::size_t s = 0; s < regions.regions.size(); ++s) {
        const Region& region = regions.regions[s];
        ++region_check.evaluated;
        const bool has = std::any_of(regions.candidates.begin(), regions.candidates.end(),
                                     [&](MachineId c) { return region.first <= c && c <= region.last; });
        if (!has) {
            fail(region_check, "region " + std::to_string(s) + " has no candidate");
        }
        if (s > 0 && regions.regions[s - 1].last >= region.first) {
            fail(region_check, "regions " + std::to_string(s - 1) + " and " + std::to_string(s) +
                                   " overlap");
        }
    }

    LemmaCheck big_job{"one_big_job_per_machine", true, 0, ""};
    for (MachineId i = 0; i < m; ++i) {
        ++big_job.evaluated;
        const int big = round_huge[i] + round_large[i];
        if (big > 1) {
            fail(big_job, "machine " + std::to_string(i) + " holds " + std::to_string(big) +
                              " large/huge jobs");
        }
        if (big == 1 && sgn(frac_huge[i] + frac_large[i]) == 0) {
            fail(big_job, "machine " + std::to_string(i) + " got a big job without fractional mass");
        }
    }

    LemmaCheck window{"fractional_load_window", true, 0, ""};
    std::vector<std::optional<std::size_t>> region_of(m);
    for (std::size_t s = 0; s < regions.regions.size(); ++s) {
        for (MachineId i = regions.regions[s].first; i <= regions.regions[s].last; ++i) {
            region_of[i] = s;
        }
    }
    for (MachineId l = 0; l < m; ++l) {
        if (!region_of[l]) continue;
        Rational fl = 0;
        for (MachineId r = l; r < m; ++r) {
            fl += frac_large[r];
            if (!region_of[r]) continue;
            const std::size_t s = *region_of[l];
            const std::size_t t = *region_of[r];
            const Rational k(static_cast<long>(t - s + 1));
            const bool inner_left = l > regions.original_left[s];
            const bool inner_right = r < regions.original_right[t];
            ++window.evaluated;
            Rational upper = k + 2;
            if (inner_left && inner_right) {
                upper = k;
            } else if (inner_left || inner_right) {
                upper = k + 1;
            }
            if (!(k - 2 < fl) || !(fl < upper)) {
                fail(window, interval_text(l, r) + ": fractional large " + fl.get_str() +
                                 " outside (" + Rational(k - 2).get_str() + ", " + upper.get_str() + ")");
            }
        }
    }

    LemmaCheck small_cap{"small_job_cap", true, 0, ""};
    const Rational cap = (Rational(2) - params.gamma) * Rational(x.makespan());
    for (MachineId i = 0; i < m && i < report.loads.size(); ++i) {
        ++small_cap.evaluated;
        if (Rational(report.loads[i]) > cap) {
            fail(small_cap, "machine " + std::to_string(i) + " load " + report.loads[i].get_str() +
                                " above " + cap.get_str());
        }
    }

    return {placed, huge_bound, large_bound, region_check, big_job, window, small_cap};
}

SolveResult solve(const RaiInstance& inst, const lp::RoundingParams& params) {
    if (auto bad = params.violated_inequality()) {
        throw std::invalid_argument("rounding parameters violate " + *bad);
    }
    SolveResult out;
    out.lower = ceil_of(lff::lower_bound(inst).value);
    out.upper = total_size(inst);

    std::optional<lp::FractionalAssignment> best;
    Integer lo = out.lower;
    Integer hi = out.upper;
    while (lo < hi) {
        Integer mid = (lo + hi) / 2;
        ++out.lp_solves;
        auto x = lp::solve_at(inst, mid, params);
        if (x) {
            hi = mid;
            best = std::move(x);
        } else {
            lo = mid + 1;
        }
    }
    if (!best || best->makespan() != lo) {
        ++out.lp_solves;
        best = lp::solve_at(inst, lo, params);
    }
    if (!best) {
        throw InvariantFault("assignment LP infeasible at the trivial upper bound " + lo.get_str());
    }
    out.t_star = lo;
    out.lp_cert = std::move(*best);
    out.rounding = round(inst, out.t_star, params, out.lp_cert);
    out.schedule = out.rounding.schedule;
    out.checks = check_lemmas(inst, params, out.lp_cert, out.rounding);
    return out;
}

}  // namespace intsched::approx
