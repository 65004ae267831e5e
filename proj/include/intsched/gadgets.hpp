// Gadget instances built from 3-SAT* formulas, their constructive T-schedules
// and the inverse map from a T-schedule back to a truth assignment.
//
// Machines and jobs carry symbolic names such as "TMach(0,1)", "CJob(2,0)",
// "VJob(1,3,top)" or "Private(AMach(0,2))"; ids follow declaration order.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "intsched/bubble.hpp"
#include "intsched/core.hpp"
#include "intsched/formula.hpp"

namespace intsched::gadgets {

enum class GadgetKind { Simple, Rar3, Rar2, Rai, Lrs3Ra };

const char* to_string(GadgetKind kind);
std::optional<GadgetKind> parse_kind(const std::string& text);  // simple|rar3|rar2|rai|lrs3ra

using AnyInstance = std::variant<RestrictedInstance, ResourceInstance, RaiInstance>;

struct GadgetInstance {
    GadgetKind kind = GadgetKind::Simple;
    AnyInstance instance;
    Integer target;
    std::vector<std::string> machine_names;
    std::vector<std::string> job_names;

    std::size_t machine_count() const { return machine_names.size(); }
    std::size_t job_count() const { return job_names.size(); }

    /// Eligibility view shared by all flavors.
    RestrictedInstance restricted() const;
    Integer total_size() const;

    MachineId machine(const std::string& name) const;  // throws std::out_of_range
    JobId job(const std::string& name) const;

    void build_index();

private:
    std::unordered_map<std::string, MachineId> machine_index_;
    std::unordered_map<std::string, JobId> job_index_;
};

GadgetInstance reduce_simple(const sat::SatStarFormula& formula);
GadgetInstance reduce_rar3(const sat::SatStarFormula& formula);
GadgetInstance reduce_rar2(const sat::SatStarFormula& formula);
GadgetInstance reduce_rai(const sat::SatStarFormula& formula);
GadgetInstance reduce_lrs3_ra(const sat::SatStarFormula& formula);
GadgetInstance reduce(GadgetKind kind, const sat::SatStarFormula& formula);

/// Refuses (std::invalid_argument) an assignment that does not satisfy the
/// formula. A placement that cannot be completed raises InvariantFault.
Schedule schedule_from_assignment(const GadgetInstance& gadget, const sat::SatStarFormula& formula,
                                  const sat::Assignment& assignment);

/// Refuses (std::invalid_argument) a schedule that is not an exact
/// target-schedule or does not match the gadget's truth-setting pattern.
sat::Assignment assignment_from_schedule(const GadgetInstance& gadget,
                                         const sat::SatStarFormula& formula, const Schedule& sched);

// Structural description of the rank-three restricted assignment gadget, in
// machine and job id order. Shared with the numeric (speed/size) checker.
struct Lrs3Machine {
    enum class Kind { T, S, A, C } kind;
    std::size_t l = 0, q = 0, j = 0, t = 0, i = 0, s = 0;
    std::size_t block = 0;  // 0 for T, 3l+q+1 for S/A, 3k+1 for C
};

struct Lrs3Job {
    enum class Kind { TJob, VJob, SJob, SPrivate, ABJob, ASJob, APrivate, CJob } kind;
    std::size_t l = 0, q = 0, j = 0, t = 0, i = 0, s = 0;
};

struct Lrs3Layout {
    sat::OccurrenceMap kappa;
    sat::BubbleTrace trace;
    std::vector<Lrs3Machine> machines;
    std::vector<Lrs3Job> jobs;
};

Lrs3Layout lrs3_layout(const sat::SatStarFormula& formula);

}  // namespace intsched::gadgets
