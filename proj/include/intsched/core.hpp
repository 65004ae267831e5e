// Instance and schedule data model shared by every solver and gadget builder.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace intsched {

using Integer = mpz_class;
using Rational = mpq_class;
using MachineId = std::size_t;
using JobId = std::size_t;

/// Thrown when an input violates a documented precondition (shape or value).
class InvalidInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an internal invariant that a lemma guarantees is broken.
/// Seeing one of these means a logic or arithmetic bug, not bad input.
class InvariantFault : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct RaiJob {
    JobId id = 0;
    Integer size;
    MachineId first = 0;
    MachineId last = 0;

    friend bool operator==(const RaiJob&, const RaiJob&) = default;
};

/// Interval-restricted instance: job j may run on machines first..last.
class RaiInstance {
public:
    RaiInstance() = default;
    RaiInstance(std::size_t machine_count, std::vector<RaiJob> jobs);

    std::size_t machine_count() const { return machine_count_; }
    const std::vector<RaiJob>& jobs() const { return jobs_; }
    std::size_t job_count() const { return jobs_.size(); }
    const RaiJob& job(JobId id) const { return jobs_.at(id); }

    friend bool operator==(const RaiInstance&, const RaiInstance&) = default;

private:
    std::size_t machine_count_ = 0;
    std::vector<RaiJob> jobs_;
};

struct RestrictedJob {
    JobId id = 0;
    Integer size;
    std::vector<MachineId> eligible;  // sorted, unique

    bool eligible_on(MachineId machine) const;

    friend bool operator==(const RestrictedJob&, const RestrictedJob&) = default;
};

class RestrictedInstance {
public:
    RestrictedInstance() = default;
    RestrictedInstance(std::size_t machine_count, std::vector<RestrictedJob> jobs);

    std::size_t machine_count() const { return machine_count_; }
    const std::vector<RestrictedJob>& jobs() const { return jobs_; }
    std::size_t job_count() const { return jobs_.size(); }
    const RestrictedJob& job(JobId id) const { return jobs_.at(id); }

    friend bool operator==(const RestrictedInstance&, const RestrictedInstance&) = default;

private:
    std::size_t machine_count_ = 0;
    std::vector<RestrictedJob> jobs_;
};

struct ResourceJob {
    JobId id = 0;
    Integer size;
    std::vector<Integer> demand;

    friend bool operator==(const ResourceJob&, const ResourceJob&) = default;
};

/// Eligibility follows from demand <= capacity in every resource.
class ResourceInstance {
public:
    ResourceInstance() = default;
    ResourceInstance(std::size_t resource_count, std::vector<std::vector<Integer>> capacities,
                     std::vector<ResourceJob> jobs);

    std::size_t resource_count() const { return resource_count_; }
    std::size_t machine_count() const { return capacities_.size(); }
    const std::vector<std::vector<Integer>>& capacities() const { return capacities_; }
    const std::vector<ResourceJob>& jobs() const { return jobs_; }
    std::size_t job_count() const { return jobs_.size(); }

    friend bool operator==(const ResourceInstance&, const ResourceInstance&) = default;

private:
    std::size_t resource_count_ = 0;
    std::vector<std::vector<Integer>> capacities_;
    std::vector<ResourceJob> jobs_;
};

/// Total assignment job id -> machine index.
struct Schedule {
    std::vector<MachineId> assignment;

    MachineId operator[](JobId job) const { return assignment.at(job); }
    std::size_t size() const { return assignment.size(); }
    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Job eligible on no machine. Carries the offending id.
class NoEligibleMachine : public InvalidInstance {
public:
    explicit NoEligibleMachine(JobId job);
    JobId job() const { return job_; }

private:
    JobId job_;
};

RestrictedInstance resource_to_restricted(const ResourceInstance& inst);
RestrictedInstance rai_to_restricted(const RaiInstance& inst);
std::optional<RaiInstance> as_interval(const RestrictedInstance& inst);

/// p(J(l, r)): total size of jobs whose whole interval lies in [l, r].
Integer interval_load(const RaiInstance& inst, MachineId l, MachineId r);

Integer total_size(const RaiInstance& inst);
Integer total_size(const RestrictedInstance& inst);
Integer max_size(const RaiInstance& inst);

enum class TargetMode { AtMost, Exact };

struct Violation {
    enum class Kind { WrongLength, MachineOutOfRange, NotEligible, LoadAboveTarget, LoadNotTarget };
    Kind kind;
    std::size_t job = 0;
    MachineId machine = 0;
    Integer load;

    std::string describe() const;
};

struct ValidationReport {
    std::vector<Integer> loads;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const RestrictedInstance& inst, const Schedule& sched,
                          const std::optional<Integer>& target = std::nullopt,
                          TargetMode mode = TargetMode::AtMost);
ValidationReport validate(const RaiInstance& inst, const Schedule& sched,
                          const std::optional<Integer>& target = std::nullopt,
                          TargetMode mode = TargetMode::AtMost);

/// Per-machine loads; the schedule must have one entry per job with in-range machines.
std::vector<Integer> machine_loads(const std::vector<Integer>& sizes, std::size_t machine_count,
                                   const Schedule& sched);

Integer makespan(const RestrictedInstance& inst, const Schedule& sched);
Integer makespan(const RaiInstance& inst, const Schedule& sched);
Integer min_load(const RestrictedInstance& inst, const Schedule& sched);
Integer min_load(const RaiInstance& inst, const Schedule& sched);

}  // namespace intsched
