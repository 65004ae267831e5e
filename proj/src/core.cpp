#include "intsched/core.hpp"

#include <algorithm>
#include <sstream>

namespace intsched {

namespace {

void require_dense_id(JobId id, std::size_t position) {
    if (id != position) {
        throw InvalidInstance("job ids must be dense 0..n-1 in order; found id " +
                              std::to_string(id) + " at position " + std::to_string(position));
    }
}

void require_positive_size(const Integer& size, JobId id) {
    if (sgn(size) <= 0) {
        throw InvalidInstance("job " + std::to_string(id) + " has non-positive size");
    }
}

}  // namespace

NoEligibleMachine::NoEligibleMachine(JobId job)
    : InvalidInstance("job " + std::to_string(job) + " is eligible on no machine"), job_(job) {}

RaiInstance::RaiInstance(std::size_t machine_count, std::vector<RaiJob> jobs)
    : machine_count_(machine_count), jobs_(std::move(jobs)) {
    if (machine_count_ == 0) {
        throw InvalidInstance("an instance needs at least one machine");
    }
    for (std::size_t pos = 0; pos < jobs_.size(); ++pos) {
        const RaiJob& job = jobs_[pos];
        require_dense_id(job.id, pos);
        require_positive_size(job.size, job.id);
        if (job.first > job.last || job.last >= machine_count_) {
            throw InvalidInstance("job " + std::to_string(job.id) + " has interval [" +
                                  std::to_string(job.first) + "," + std::to_string(job.last) +
                                  "] outside 0.." + std::to_string(machine_count_ - 1));
        }
    }
}

bool RestrictedJob::eligible_on(MachineId machine) const {
    return std::binary_search(eligible.begin(), eligible.end(), machine);
}

RestrictedInstance::RestrictedInstance(std::size_t machine_count, std::vector<RestrictedJob> jobs)
    : machine_count_(machine_count), jobs_(std::move(jobs)) {
    if (machine_count_ == 0) {
        throw InvalidInstance("an instance needs at least one machine");
    }
    for (std::size_t pos = 0; pos < jobs_.size(); ++pos) {
        RestrictedJob& job = jobs_[pos];
        require_dense_id(job.id, pos);
        require_positive_size(job.size, job.id);
        std::sort(job.eligible.begin(), job.eligible.end());
        job.eligible.erase(std::unique(job.eligible.begin(), job.eligible.end()), job.eligible.end());
        if (job.eligible.empty()) {
            throw NoEligibleMachine(job.id);
        }
        if (job.eligible.back() >= machine_count_) {
            throw InvalidInstance("job " + std::to_string(job.id) + " names machine " +
                                  std::to_string(job.eligible.back()) + " out of range");
        }
    }
}

ResourceInstance::ResourceInstance(std::size_t resource_count,
                                   std::vector<std::vector<Integer>> capacities,
                                   std::vector<ResourceJob> jobs)
    : resource_count_(resource_count), capacities_(std::move(capacities)), jobs_(std::move(jobs)) {
    if (capacities_.empty()) {
        throw InvalidInstance("an instance needs at least one machine");
    }
    auto check_vector = [&](const std::vector<Integer>& v, const std::string& what) {
        if (v.size() != resource_count_) {
            throw InvalidInstance(what + " has " + std::to_string(v.size()) + " entries, expected " +
                                  std::to_string(resource_count_));
        }
        for (const Integer& entry : v) {
            if (sgn(entry) < 0) {
                throw InvalidInstance(what + " has a negative entry");
            }
        }
    };
    for (std::size_t i = 0; i < capacities_.size(); ++i) {
        check_vector(capacities_[i], "capacity vector of machine " + std::to_string(i));
    }
    for (std::size_t pos = 0; pos < jobs_.size(); ++pos) {
        require_dense_id(jobs_[pos].id, pos);
        require_positive_size(jobs_[pos].size, jobs_[pos].id);
        check_vector(jobs_[pos].demand, "demand vector of job " + std::to_string(pos));
    }
}

RestrictedInstance resource_to_restricted(const ResourceInstance& inst) {
    std::vector<RestrictedJob> jobs;
    jobs.reserve(inst.job_count());
    for (const ResourceJob& job : inst.jobs()) {
        RestrictedJob out{job.id, job.size, {}};
        for (MachineId i = 0; i < inst.machine_count(); ++i) {
            const auto& cap = inst.capacities()[i];
            bool fits = true;
            for (std::size_t r = 0; r < inst.resource_count() && fits; ++r) {
                fits = job.demand[r] <= cap[r];
            }
            if (fits) {
                out.eligible.push_back(i);
            }
        }
        if (out.eligible.empty()) {
            throw NoEligibleMachine(job.id);
        }
        jobs.push_back(std::move(out));
    }
    return RestrictedInstance(inst.machine_count(), std::move(jobs));
}

RestrictedInstance rai_to_restricted(const RaiInstance& inst) {
    std::vector<RestrictedJob> jobs;
    jobs.reserve(inst.job_count());
    for (const RaiJob& job : inst.jobs()) {
        RestrictedJob out{job.id, job.size, {}};
        for (MachineId i = job.first; i <= job.last; ++i) {
            out.eligible.push_back(i);
        }
        jobs.push_back(std::move(out));
    }
    return RestrictedInstance(inst.machine_count(), std::move(jobs));
}

std::optional<RaiInstance> as_interval(const RestrictedInstance& inst) {
    std::vector<RaiJob> jobs;
    jobs.reserve(inst.job_count());
    for (const RestrictedJob& job : inst.jobs()) {
        const MachineId first = job.eligible.front();
        const MachineId last = job.eligible.back();
        if (last - first + 1 != job.eligible.size()) {
            return std::nullopt;
        }
        jobs.push_back(RaiJob{job.id, job.size, first, last});
    }
    return RaiInstance(inst.machine_count(), std::move(jobs));
}

Integer interval_load(const RaiInstance& inst, MachineId l, MachineId r) {
    if (l > r) {
        throw std::invalid_argument("interval_load: l > r");
    }
    Integer total = 0;
    for (const RaiJob& job : inst.jobs()) {
        if (job.first >= l && job.last <= r) {
            total += job.size;
        }
    }
    return total;
}

Integer total_size(const RaiInstance& inst) {
    Integer total = 0;
    for (const RaiJob& job : inst.jobs()) {
        total += job.size;
    }
    return total;
}

Integer total_size(const RestrictedInstance& inst) {
    Integer total = 0;
    for (const RestrictedJob& job : inst.jobs()) {
        total += job.size;
    }
    return total;
}

Integer max_size(const RaiInstance& inst) {
    Integer best = 0;
    for (const RaiJob& job : inst.jobs()) {
        if (job.size > best) {
            best = job.size;
        }
    }
    return best;
}

std::string Violation::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::WrongLength:
            out << "schedule has " << job << " entries, instance has " << machine << " jobs";
            break;
        case Kind::MachineOutOfRange:
            out << "job " << job << " assigned to nonexistent machine " << machine;
            break;
        case Kind::NotEligible:
            out << "job " << job << " assigned to ineligible machine " << machine;
            break;
        case Kind::LoadAboveTarget:
            out << "machine " << machine << " load " << load.get_str() << " exceeds target";
            break;
        case Kind::LoadNotTarget:
            out << "machine " << machine << " load " << load.get_str() << " differs from target";
            break;
    }
    return out.str();
}

std::vector<Integer> machine_loads(const std::vector<Integer>& sizes, std::size_t machine_count,
                                   const Schedule& sched) {
    std::vector<Integer> loads(machine_count, Integer(0));
    for (JobId j = 0; j < sched.size(); ++j) {
        loads.at(sched[j]) += sizes.at(j);
    }
    return loads;
}

ValidationReport validate(const RestrictedInstance& inst, const Schedule& sched,
                          const std::optional<Integer>& target, TargetMode mode) {
    ValidationReport report;
    report.loads.assign(inst.machine_count(), Integer(0));
    if (sched.size() != inst.job_count()) {
        report.violations.push_back(
            {Violation::Kind::WrongLength, sched.size(), inst.job_count(), Integer(0)});
        return report;
    }
    for (const RestrictedJob& job : inst.jobs()) {
        const MachineId machine = sched[job.id];
        if (machine >= inst.machine_count()) {
            report.violations.push_back({Violation::Kind::MachineOutOfRange, job.id, machine, 0});
            continue;
        }
        if (!job.eligible_on(machine)) {
            report.violations.push_back({Violation::Kind::NotEligible, job.id, machine, 0});
        }
        report.loads[machine] += job.size;
    }
    if (target) {
        for (MachineId i = 0; i < inst.machine_count(); ++i) {
            const Integer& load = report.loads[i];
            if (mode == TargetMode::AtMost && load > *target) {
                report.violations.push_back({Violation::Kind::LoadAboveTarget, 0, i, load});
            } else if (mode == TargetMode::Exact && load != *target) {
                report.violations.push_back({Violation::Kind::LoadNotTarget, 0, i, load});
            }
        }
    }
    return report;
}

ValidationReport validate(const RaiInstance& inst, const Schedule& sched,
                          const std::optional<Integer>& target, TargetMode mode) {
    return validate(rai_to_restricted(inst), sched, target, mode);
}

namespace {

std::vector<Integer> sizes_of(const RestrictedInstance& inst) {
    std::vector<Integer> sizes;
    for (const auto& job : inst.jobs()) sizes.push_back(job.size);
    return sizes;
}

std::vector<Integer> sizes_of(const RaiInstance& inst) {
    std::vector<Integer> sizes;
    for (const auto& job : inst.jobs()) sizes.push_back(job.size);
    return sizes;
}

template <typename Inst>
std::vector<Integer> loads_for(const Inst& inst, const Schedule& sched) {
    if (sched.size() != inst.job_count()) {
        throw std::invalid_argument("schedule length does not match the job count");
    }
    return machine_loads(sizes_of(inst), inst.machine_count(), sched);
}

}  // namespace

Integer makespan(const RestrictedInstance& inst, const Schedule& sched) {
    auto loads = loads_for(inst, sched);
    return *std::max_element(loads.begin(), loads.end());
}

Integer makespan(const RaiInstance& inst, const Schedule& sched) {
    auto loads = loads_for(inst, sched);
    return *std::max_element(loads.begin(), loads.end());
}

Integer min_load(const RestrictedInstance& inst, const Schedule& sched) {
    auto loads = loads_for(inst, sched);
    return *std::min_element(loads.begin(), loads.end());
}

Integer min_load(const RaiInstance& inst, const Schedule& sched) {
    auto loads = loads_for(inst, sched);
    return *std::min_element(loads.begin(), loads.end());
}

}  // namespace intsched
