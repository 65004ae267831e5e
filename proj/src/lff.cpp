#include "intsched/lff.hpp"

#include <algorithm>

namespace intsched::lff {

LffBound lower_bound(const RaiInstance& inst) {
    LffBound bound;
    bound.value = 0;
    if (inst.job_count() == 0) {
        return bound;
    }
    for (const RaiJob& job : inst.jobs()) {
        if (!bound.job_witness || job.size > inst.job(*bound.job_witness).size) {
            bound.job_witness = job.id;
        }
    }
    bound.value = Rational(inst.job(*bound.job_witness).size);

    // contained[l][r] = p(J(l, r)), built from the per-(first, last) buckets.
    const std::size_t m = inst.machine_count();
    std::vector<std::vector<Integer>> bucket(m, std::vector<Integer>(m, Integer(0)));
    for (const RaiJob& job : inst.jobs()) {
        bucket[job.first][job.last] += job.size;
    }
    std::vector<std::vector<Integer>> contained(m + 1, std::vector<Integer>(m, Integer(0)));
    for (std::size_t l = m; l-- > 0;) {
        Integer row = 0;
        for (std::size_t r = l; r < m; ++r) {
            row += bucket[l][r];
            contained[l][r] = contained[l + 1][r] + row;
        }
    }
    for (MachineId l = 0; l < m; ++l) {
        for (MachineId r = l; r < m; ++r) {
            Rational average(contained[l][r], Integer(static_cast<unsigned long>(r - l + 1)));
            average.canonicalize();
            if (average > bound.value) {
                bound.value = average;
                bound.job_witness.reset();
                bound.interval_witness = std::make_pair(l, r);
            }
        }
    }
    return bound;
}

JobId least_flexible(const RaiInstance& inst, const std::vector<JobId>& pool) {
    return *std::min_element(pool.begin(), pool.end(), [&](JobId a, JobId b) {
        const MachineId ra = inst.job(a).last;
        const MachineId rb = inst.job(b).last;
        return ra != rb ? ra < rb : a < b;
    });
}

Schedule lff_schedule(const RaiInstance& inst) { return lff_schedule(inst, lower_bound(inst).value); }

Schedule lff_schedule(const RaiInstance& inst, const Rational& bound) {
    std::vector<std::optional<MachineId>> placed(inst.job_count());
    for (MachineId i = 0; i < inst.machine_count(); ++i) {
        Integer load = 0;
        while (Rational(load) <= bound) {
            std::vector<JobId> pool;
            for (const RaiJob& job : inst.jobs()) {
                if (!placed[job.id] && job.first <= i && i <= job.last) {
                    pool.push_back(job.id);
                }
            }
            if (pool.empty()) {
                break;
            }
            const JobId pick = least_flexible(inst, pool);
            placed[pick] = i;
            load += inst.job(pick).size;
        }
    }
    Schedule sched;
    sched.assignment.reserve(inst.job_count());
    for (JobId j = 0; j < inst.job_count(); ++j) {
        if (!placed[j]) {
            throw InvariantFault("least flexible first left job " + std::to_string(j) + " unplaced");
        }
        sched.assignment.push_back(*placed[j]);
    }
    return sched;
}

}  // namespace intsched::lff
