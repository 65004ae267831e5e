#include "intsched/gadgets.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>

namespace intsched::gadgets {

using sat::Assignment;
using sat::SatStarFormula;

namespace {

std::string name(const char* base, std::initializer_list<std::size_t> idx, const char* tag = nullptr) {
    std::string out = base;
    out += '(';
    bool first = true;
    for (std::size_t v : idx) {
        if (!first) out += ',';
        out += std::to_string(v);
        first = false;
    }
    if (tag) {
        out += ',';
        out += tag;
    }
    out += ')';
    return out;
}

const char* truth(bool top) { return top ? "top" : "bot"; }
std::string priv(const std::string& machine) { return "Private(" + machine + ")"; }

bool literal_true(const Assignment& a, std::size_t j, std::size_t t) { return (t < 2) == a[j]; }

// CJob(i,s) sizes shared by the simple, three-resource and rank-three gadgets.
long clause_size_small(int kind, std::size_t s) {
    if (s == 0) return 1;
    if (s == 2) return 2;
    return kind == 1 ? 2 : 1;
}

void require_nonempty(const SatStarFormula& formula) {
    sat::validate_formula(formula);
    if (formula.variable_count == 0) {
        throw InvalidInstance("the empty formula has no gadget (no machines)");
    }
}

class Builder {
public:
    explicit Builder(GadgetKind kind, long target) {
        g_.kind = kind;
        g_.target = target;
    }

    MachineId machine(const std::string& label) {
        const MachineId id = g_.machine_names.size();
        g_.machine_names.push_back(label);
        index_.emplace(label, id);
        return id;
    }

    MachineId at(const std::string& label) const { return index_.at(label); }

    void job(const std::string& label, long size, std::vector<MachineId> eligible) {
        restricted_.push_back({g_.job_names.size(), Integer(size), std::move(eligible)});
        g_.job_names.push_back(label);
    }

    void interval_job(const std::string& label, long size, MachineId first, MachineId last) {
        if (first > last) {
            throw InvariantFault(label + " has first machine after last machine");
        }
        interval_.push_back({g_.job_names.size(), Integer(size), first, last});
        g_.job_names.push_back(label);
    }

    void resource_job(const std::string& label, long size, std::vector<Integer> demand) {
        resource_.push_back({g_.job_names.size(), Integer(size), std::move(demand)});
        g_.job_names.push_back(label);
    }

    std::vector<std::vector<Integer>> capacities;

    GadgetInstance restricted() {
        g_.instance = RestrictedInstance(g_.machine_names.size(), std::move(restricted_));
        return finish();
    }
    GadgetInstance interval() {
        g_.instance = RaiInstance(g_.machine_names.size(), std::move(interval_));
        return finish();
    }
    GadgetInstance resource(std::size_t resources) {
        g_.instance = ResourceInstance(resources, std::move(capacities), std::move(resource_));
        return finish();
    }

private:
    GadgetInstance finish() {
        g_.build_index();
        return std::move(g_);
    }

    GadgetInstance g_;
    std::unordered_map<std::string, MachineId> index_;
    std::vector<RestrictedJob> restricted_;
    std::vector<RaiJob> interval_;
    std::vector<ResourceJob> resource_;
};

// Truth and clause machines in the order TMach(j,q), CMach(i,s), both increasing.
void add_truth_and_clause_machines(Builder& b, const SatStarFormula& f) {
    for (std::size_t j = 0; j < f.variable_count; ++j) {
        for (std::size_t q = 0; q < 2; ++q) b.machine(name("TMach", {j, q}));
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) b.machine(name("CMach", {i, s}));
    }
}

std::vector<Integer> vec(std::initializer_list<long> values) {
    std::vector<Integer> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

}  // namespace

const char* to_string(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::Simple: return "simple";
        case GadgetKind::Rar3: return "rar3";
        case GadgetKind::Rar2: return "rar2";
        case GadgetKind::Rai: return "rai";
        case GadgetKind::Lrs3Ra: return "lrs3ra";
    }
    return "simple";
}

std::optional<GadgetKind> parse_kind(const std::string& text) {
    for (GadgetKind kind : {GadgetKind::Simple, GadgetKind::Rar3, GadgetKind::Rar2, GadgetKind::Rai,
                            GadgetKind::Lrs3Ra}) {
        if (text == to_string(kind)) return kind;
    }
    return std::nullopt;
}

RestrictedInstance GadgetInstance::restricted() const {
    if (const auto* r = std::get_if<RestrictedInstance>(&instance)) return *r;
    if (const auto* r = std::get_if<ResourceInstance>(&instance)) return resource_to_restricted(*r);
    return rai_to_restricted(std::get<RaiInstance>(instance));
}

Integer GadgetInstance::total_size() const { return intsched::total_size(restricted()); }

MachineId GadgetInstance::machine(const std::string& label) const {
    auto it = machine_index_.find(label);
    if (it == machine_index_.end()) throw std::out_of_range("no machine named " + label);
    return it->second;
}

JobId GadgetInstance::job(const std::string& label) const {
    auto it = job_index_.find(label);
    if (it == job_index_.end()) throw std::out_of_range("no job named " + label);
    return it->second;
}

void GadgetInstance::build_index() {
    machine_index_.clear();
    job_index_.clear();
    for (MachineId i = 0; i < machine_names.size(); ++i) machine_index_.emplace(machine_names[i], i);
    for (JobId j = 0; j < job_names.size(); ++j) job_index_.emplace(job_names[j], j);
}

GadgetInstance reduce_simple(const SatStarFormula& f) {
    require_nonempty(f);
    const sat::OccurrenceMap kappa = sat::kappa(f);
    Builder b(GadgetKind::Simple, 2);
    add_truth_and_clause_machines(b, f);
    for (std::size_t j = 0; j < f.variable_count; ++j) {
        b.job(name("TJob", {j}), 2, {b.at(name("TMach", {j, 0})), b.at(name("TMach", {j, 1}))});
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) {
            std::vector<MachineId> eligible;
            for (std::size_t r = 0; r < 3; ++r) eligible.push_back(b.at(name("CMach", {i, r})));
            b.job(name("CJob", {i, s}), clause_size_small(f.clauses[i].kind, s), eligible);
        }
    }
    for (std::size_t j = 0; j < f.variable_count; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            const auto [i, s] = kappa(j, t);
            b.job(name("VJob", {j, t}), 1,
                  {b.at(name("TMach", {j, t / 2})), b.at(name("CMach", {i, s}))});
        }
    }
    return b.restricted();
}

GadgetInstance reduce_rar3(const SatStarFormula& f) {
    require_nonempty(f);
    const sat::OccurrenceMap kappa = sat::kappa(f);
    const long n = static_cast<long>(f.variable_count);
    Builder b(GadgetKind::Rar3, 2);
    add_truth_and_clause_machines(b, f);
    for (long j = 0; j < n; ++j) {
        b.capacities.push_back(vec({4 * j + 1, 4 * n - 4 * j, 1}));
        b.capacities.push_back(vec({4 * j + 3, 4 * n - 4 * j, 0}));
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) {
            const auto [j, t] = kappa.inv(i, s);
            const long jt = static_cast<long>(4 * j + t);
            b.capacities.push_back(vec({jt, 4 * n - jt, 2 + static_cast<long>(i)}));
        }
    }
    for (long j = 0; j < n; ++j) {
        b.resource_job(name("TJob", {static_cast<std::size_t>(j)}), 2, vec({4 * j, 4 * n - 4 * j, 0}));
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) {
            b.resource_job(name("CJob", {i, s}), clause_size_small(f.clauses[i].kind, s),
                           vec({0, 0, 2 + static_cast<long>(i)}));
        }
    }
    for (std::size_t j = 0; j < f.variable_count; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            const long jt = static_cast<long>(4 * j + t);
            b.resource_job(name("VJob", {j, t}), 1,
                           vec({jt, 4 * n - jt, 1 - static_cast<long>(t / 2)}));
        }
    }
    return b.resource(3);
}

GadgetInstance reduce_rar2(const SatStarFormula& f) {
    require_nonempty(f);
    const sat::OccurrenceMap kappa = sat::kappa(f);
    const long n = static_cast<long>(f.variable_count);
    Builder b(GadgetKind::Rar2, 7);
    add_truth_and_clause_machines(b, f);
    for (long j = 0; j < n; ++j) {
        for (long q = 0; q < 2; ++q) b.capacities.push_back(vec({2 * j + q, 6 * n - 2 * j - q}));
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) {
            const auto [j, t] = kappa.inv(i, s);
            b.capacities.push_back(vec({2 * n + static_cast<long>(i), static_cast<long>(4 * j + t)}));
        }
    }
    for (long j = 0; j < n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        b.resource_job(name("TJob", {uj, 0}), 1, vec({2 * j, 6 * n - 2 * j}));
        b.resource_job(name("TJob", {uj, 1}), 1, vec({2 * j + 1, 6 * n - (2 * j + 1)}));
        b.resource_job(name("TJob", {uj, 2}), 2, vec({2 * j, 6 * n - (2 * j + 1)}));
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const long phi[3] = {0, f.clauses[i].kind - 1, 1};
        for (std::size_t s = 0; s < 3; ++s) {
            b.resource_job(name("CJob", {i, s}), 4 + phi[s], vec({2 * n + static_cast<long>(i), 0}));
        }
    }
    for (std::size_t j = 0; j < f.variable_count; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            for (bool top : {true, false}) {
                const long r1 = static_cast<long>(2 * j + t / 2);
                const long r2 = static_cast<long>(4 * j + t);
                b.resource_job(name("VJob", {j, t}, truth(top)), 2 + (top ? 1 : 0), vec({r1, r2}));
            }
        }
    }
    return b.resource(2);
}

GadgetInstance reduce_rai(const SatStarFormula& f) {
    require_nonempty(f);
    const sat::OccurrenceMap kappa = sat::kappa(f);
    const sat::BubbleTrace trace = sat::bubble_trace(f, kappa);
    const std::size_t n = f.variable_count;
    const std::size_t k = trace.k;
    Builder b(GadgetKind::Rai, 8);

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t q = 0; q < 2; ++q) b.machine(name("TMach", {j, q}));
    }
    const auto& phi0 = trace.phi[0];
    for (auto it = phi0.rbegin(); it != phi0.rend(); ++it) b.machine(name("BGMach", {it->first, it->second}));
    for (const auto& [j, t] : phi0) b.machine(name("FGMach", {j, t}));
    for (std::size_t l = 0; l < k; ++l) {
        const auto& back = trace.phi[l];
        for (auto it = back.rbegin(); it != back.rend(); ++it) {
            b.machine(name("BSMach", {l, it->first, it->second}));
        }
        for (const auto& [j, t] : trace.phi[l + 1]) b.machine(name("FSMach", {l, j, t}));
    }
    for (std::size_t i = f.clauses.size(); i-- > 0;) {
        for (std::size_t s = 3; s-- > 0;) b.machine(name("CMach", {i, s}));
    }

    auto span = [&](const std::string& label, long size, const std::string& first, const std::string& last) {
        b.interval_job(label, size, b.at(first), b.at(last));
    };
    auto cmach_of = [&](std::size_t j, std::size_t t) {
        const auto [i, s] = kappa(j, t);
        return name("CMach", {i, s});
    };

    for (std::size_t j = 0; j < n; ++j) {
        span(name("TJob", {j}), 2, name("TMach", {j, 0}), name("TMach", {j, 1}));
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            for (bool top : {true, false}) {
                span(name("VJob", {j, t}, truth(top)), top ? 3 : 2, name("TMach", {j, t / 2}),
                     name("BGMach", {j, t}));
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            for (bool top : {true, false}) {
                span(name("GJob", {j, t}, truth(top)), top ? 4 : 5, name("BGMach", {j, t}),
                     name("FGMach", {j, t}));
            }
        }
    }
    for (std::size_t l = 0; l <= k; ++l) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t t = 0; t < 4; ++t) {
                const std::string first = l == 0 ? name("FGMach", {j, t}) : name("FSMach", {l - 1, j, t});
                const std::string last = l < k ? name("BSMach", {l, j, t}) : cmach_of(j, t);
                for (bool top : {true, false}) {
                    span(name("BJob", {l, j, t}, truth(top)), top ? 2 : 1, first, last);
                }
            }
        }
    }
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t t = 0; t < 4; ++t) {
                const bool special = trace.tau(l) == sat::Pair{j, t};
                for (bool top : {true, false}) {
                    const long size = special ? (top ? 3 : 4) : (top ? 6 : 7);
                    span(name("SJob", {l, j, t}, truth(top)), size, name("BSMach", {l, j, t}),
                         name("FSMach", {l, j, t}));
                }
            }
        }
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const long sizes[3] = {7, 8 - f.clauses[i].kind, 6};
        for (std::size_t s = 0; s < 3; ++s) {
            span(name("CJob", {i, s}), sizes[s], name("CMach", {i, 2}), name("CMach", {i, 0}));
        }
    }
    auto private_load = [&](const std::string& machine, long size) { span(priv(machine), size, machine, machine); };
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t q = 0; q < 2; ++q) private_load(name("TMach", {j, q}), 2);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < 4; ++t) private_load(name("BGMach", {j, t}), 1);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < 4; ++t) private_load(name("FGMach", {j, t}), 2);
    }
    for (std::size_t l = 0; l < k; ++l) {
        const auto [j, t] = trace.tau(l);
        private_load(name("BSMach", {l, j, t}), 3);
        private_load(name("FSMach", {l, j, t}), 3);
    }
    return b.interval();
}

Lrs3Layout lrs3_layout(const SatStarFormula& f) {
    require_nonempty(f);
    Lrs3Layout layout;
    layout.kappa = sat::kappa(f);
    layout.trace = sat::bubble_trace(f, layout.kappa);
    const std::size_t n = f.variable_count;
    const std::size_t k = layout.trace.k;
    using MK = Lrs3Machine::Kind;
    using JK = Lrs3Job::Kind;

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t q = 0; q < 2; ++q) layout.machines.push_back({MK::T, 0, q, j, 0, 0, 0, 0});
    }
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t q = 0; q < 3; ++q) {
            const std::size_t block = 3 * l + q + 1;
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t t = 0; t < 4; ++t) layout.machines.push_back({MK::S, l, q, j, t, 0, 0, block});
            }
            layout.machines.push_back({MK::A, l, q, 0, 0, 0, 0, block});
        }
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) layout.machines.push_back({MK::C, 0, 0, 0, 0, i, s, 3 * k + 1});
    }

    for (std::size_t j = 0; j < n; ++j) layout.jobs.push_back({JK::TJob, 0, 0, j});
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < 4; ++t) layout.jobs.push_back({JK::VJob, 0, 0, j, t});
    }
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t q = 0; q < 3; ++q) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t t = 0; t < 4; ++t) layout.jobs.push_back({JK::SJob, l, q, j, t});
            }
        }
    }
    for (std::size_t l = 0; l < k; ++l) {
        const sat::Pair gt = layout.trace.gt[l];
        const sat::Pair lt = layout.trace.lt[l];
        for (std::size_t q = 0; q < 3; ++q) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t t = 0; t < 4; ++t) {
                    const sat::Pair jt{j, t};
                    const bool exempt = (jt == gt) || (q == 2 && jt == lt);
                    if (!exempt) layout.jobs.push_back({JK::SPrivate, l, q, j, t});
                }
            }
        }
    }
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t q = 0; q < 2; ++q) layout.jobs.push_back({JK::ABJob, l, q});
    }
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t q = 0; q < 3; ++q) layout.jobs.push_back({JK::ASJob, l, q});
    }
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t q = 0; q < 3; ++q) layout.jobs.push_back({JK::APrivate, l, q});
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (std::size_t s = 0; s < 3; ++s) layout.jobs.push_back({JK::CJob, 0, 0, 0, 0, i, s});
    }
    return layout;
}

GadgetInstance reduce_lrs3_ra(const SatStarFormula& f) {
    const Lrs3Layout layout = lrs3_layout(f);
    const std::size_t k = layout.trace.k;
    Builder b(GadgetKind::Lrs3Ra, 2);
    using MK = Lrs3Machine::Kind;
    using JK = Lrs3Job::Kind;
    for (const Lrs3Machine& mach : layout.machines) {
        switch (mach.kind) {
            case MK::T: b.machine(name("TMach", {mach.j, mach.q})); break;
            case MK::S: b.machine(name("SMach", {mach.l, mach.q, mach.j, mach.t})); break;
            case MK::A: b.machine(name("AMach", {mach.l, mach.q})); break;
            case MK::C: b.machine(name("CMach", {mach.i, mach.s})); break;
        }
    }
    auto sm = [&](std::size_t l, std::size_t q, sat::Pair jt) {
        return b.at(name("SMach", {l, q, jt.first, jt.second}));
    };
    auto am = [&](std::size_t l, std::size_t q) { return b.at(name("AMach", {l, q})); };
    auto cm = [&](sat::Pair is) { return b.at(name("CMach", {is.first, is.second})); };

    for (const Lrs3Job& job : layout.jobs) {
        const sat::Pair jt{job.j, job.t};
        switch (job.kind) {
            case JK::TJob:
                b.job(name("TJob", {job.j}), 2,
                      {b.at(name("TMach", {job.j, 0})), b.at(name("TMach", {job.j, 1}))});
                break;
            case JK::VJob: {
                const MachineId right = k > 0 ? sm(0, 0, jt) : cm(layout.kappa(job.j, job.t));
                b.job(name("VJob", {job.j, job.t}), 1, {b.at(name("TMach", {job.j, job.t / 2})), right});
                break;
            }
            case JK::SJob: {
                const sat::Pair gt = layout.trace.gt[job.l];
                const sat::Pair lt = layout.trace.lt[job.l];
                const long size = (jt == gt && job.q < 2) ? 2 : 1;
                std::vector<MachineId> eligible;
                if (job.q == 0 && jt == gt) {
                    eligible = {sm(job.l, 0, gt), sm(job.l, 0, lt), sm(job.l, 1, gt)};
                } else if (job.q == 0 && jt == lt) {
                    eligible = {sm(job.l, 0, lt), sm(job.l, 1, lt), sm(job.l, 1, gt)};
                } else if (job.l + 1 == k && job.q == 2) {
                    eligible = {sm(job.l, 2, jt), cm(layout.kappa(job.j, job.t))};
                } else {
                    eligible = {sm(job.l, job.q, jt), sm(job.l + job.q / 2, (job.q + 1) % 3, jt)};
                }
                b.job(name("SJob", {job.l, job.q, job.j, job.t}), size, eligible);
                break;
            }
            case JK::SPrivate:
                b.job(priv(name("SMach", {job.l, job.q, job.j, job.t})), 1, {sm(job.l, job.q, jt)});
                break;
            case JK::ABJob:
                b.job(name("ABJob", {job.l, job.q}), 1, {am(job.l, job.q), am(job.l, job.q + 1)});
                break;
            case JK::ASJob: {
                const sat::Pair gt = layout.trace.gt[job.l];
                const sat::Pair lt = layout.trace.lt[job.l];
                std::vector<MachineId> eligible;
                if (job.q == 0) eligible = {am(job.l, 0), sm(job.l, 0, gt)};
                if (job.q == 1) eligible = {am(job.l, 2), sm(job.l, 2, lt)};
                if (job.q == 2) eligible = {sm(job.l, 2, lt), sm(job.l, 2, gt)};
                b.job(name("ASJob", {job.l, job.q}), 1, eligible);
                break;
            }
            case JK::APrivate:
                b.job(priv(name("AMach", {job.l, job.q})), 1, {am(job.l, job.q)});
                break;
            case JK::CJob: {
                std::vector<MachineId> eligible;
                for (std::size_t r = 0; r < 3; ++r) eligible.push_back(cm({job.i, r}));
                b.job(name("CJob", {job.i, job.s}), clause_size_small(f.clauses[job.i].kind, job.s), eligible);
                break;
            }
        }
    }
    return b.restricted();
}

GadgetInstance reduce(GadgetKind kind, const SatStarFormula& formula) {
    switch (kind) {
        case GadgetKind::Simple: return reduce_simple(formula);
        case GadgetKind::Rar3: return reduce_rar3(formula);
        case GadgetKind::Rar2: return reduce_rar2(formula);
        case GadgetKind::Rai: return reduce_rai(formula);
        case GadgetKind::Lrs3Ra: return reduce_lrs3_ra(formula);
    }
    throw std::invalid_argument("unknown gadget kind");
}

namespace {

class Placer {
public:
    explicit Placer(const GadgetInstance& g)
        : g_(g), view_(g.restricted()), slot_(g.job_count()), load_(g.machine_count(), Integer(0)) {}

    void put(const std::string& job, const std::string& machine) { put(g_.job(job), g_.machine(machine)); }

    void put(JobId j, MachineId i) {
        if (slot_[j]) throw InvariantFault(g_.job_names[j] + " placed twice");
        slot_[j] = i;
        load_[i] += view_.job(j).size;
    }

    void put_private(const std::string& machine) { put(priv(machine), machine); }

    // Matches CJob(i,0..2) to CMach(i,0..2) so every clause machine reaches the target.
    void fill_clause(std::size_t i) {
        std::array<std::size_t, 3> perm{0, 1, 2};
        do {
            bool fits = true;
            for (std::size_t s = 0; s < 3 && fits; ++s) {
                const JobId j = g_.job(name("CJob", {i, perm[s]}));
                const MachineId m = g_.machine(name("CMach", {i, s}));
                fits = view_.job(j).eligible_on(m) && load_[m] + view_.job(j).size == g_.target;
            }
            if (fits) {
                for (std::size_t s = 0; s < 3; ++s) {
                    put(name("CJob", {i, perm[s]}), name("CMach", {i, s}));
                }
                return;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        throw InvariantFault("clause " + std::to_string(i) + " jobs cannot complete their machines");
    }

    Schedule finish() const {
        Schedule sched;
        for (JobId j = 0; j < slot_.size(); ++j) {
            if (!slot_[j]) throw InvariantFault(g_.job_names[j] + " was not placed");
            sched.assignment.push_back(*slot_[j]);
        }
        const ValidationReport report = validate(view_, sched, g_.target, TargetMode::Exact);
        if (!report.ok()) {
            throw InvariantFault("constructed schedule is not a " + g_.target.get_str() +
                                 "-schedule: " + report.violations.front().describe());
        }
        return sched;
    }

private:
    const GadgetInstance& g_;
    RestrictedInstance view_;
    std::vector<std::optional<MachineId>> slot_;
    std::vector<Integer> load_;
};

}  // namespace

Schedule schedule_from_assignment(const GadgetInstance& g, const SatStarFormula& f,
                                  const Assignment& a) {
    if (!sat::evaluate(f, a)) {
        throw std::invalid_argument("assignment does not satisfy the formula");
    }
    const sat::OccurrenceMap kappa = sat::kappa(f);
    const std::size_t n = f.variable_count;
    auto cmach_of = [&](std::size_t j, std::size_t t) {
        const auto [i, s] = kappa(j, t);
        return name("CMach", {i, s});
    };
    Placer p(g);

    switch (g.kind) {
        case GadgetKind::Simple:
        case GadgetKind::Rar3:
            for (std::size_t j = 0; j < n; ++j) {
                p.put(name("TJob", {j}), name("TMach", {j, a[j] ? 0U : 1U}));
                for (std::size_t t = 0; t < 4; ++t) {
                    p.put(name("VJob", {j, t}),
                          literal_true(a, j, t) ? cmach_of(j, t) : name("TMach", {j, t / 2}));
                }
            }
            break;
        case GadgetKind::Rar2:
            for (std::size_t j = 0; j < n; ++j) {
                p.put(name("TJob", {j, 0}), name("TMach", {j, 0}));
                p.put(name("TJob", {j, 1}), name("TMach", {j, 1}));
                p.put(name("TJob", {j, 2}), name("TMach", {j, a[j] ? 1U : 0U}));
                for (std::size_t t = 0; t < 4; ++t) {
                    // A true literal sends the small (bot) job to its clause machine.
                    const bool lit = literal_true(a, j, t);
                    p.put(name("VJob", {j, t}, truth(!lit)), cmach_of(j, t));
                    p.put(name("VJob", {j, t}, truth(lit)), name("TMach", {j, t / 2}));
                }
            }
            break;
        case GadgetKind::Rai: {
            const sat::BubbleTrace trace = sat::bubble_trace(f, kappa);
            const std::size_t k = trace.k;
            for (std::size_t j = 0; j < n; ++j) {
                p.put(name("TJob", {j}), name("TMach", {j, a[j] ? 0U : 1U}));
                for (std::size_t q = 0; q < 2; ++q) p.put_private(name("TMach", {j, q}));
                for (std::size_t t = 0; t < 4; ++t) {
                    // c is the value carried rightwards along the chain of (j,t).
                    const bool c = literal_true(a, j, t);
                    p.put(name("VJob", {j, t}, truth(!c)), name("TMach", {j, t / 2}));
                    p.put(name("VJob", {j, t}, truth(c)), name("BGMach", {j, t}));
                    p.put(name("GJob", {j, t}, truth(c)), name("BGMach", {j, t}));
                    p.put(name("GJob", {j, t}, truth(!c)), name("FGMach", {j, t}));
                    p.put(name("BJob", {0, j, t}, truth(!c)), name("FGMach", {j, t}));
                    p.put_private(name("BGMach", {j, t}));
                    p.put_private(name("FGMach", {j, t}));
                    for (std::size_t l = 0; l < k; ++l) {
                        p.put(name("BJob", {l, j, t}, truth(c)), name("BSMach", {l, j, t}));
                        p.put(name("SJob", {l, j, t}, truth(c)), name("BSMach", {l, j, t}));
                        p.put(name("SJob", {l, j, t}, truth(!c)), name("FSMach", {l, j, t}));
                        p.put(name("BJob", {l + 1, j, t}, truth(!c)), name("FSMach", {l, j, t}));
                    }
                    p.put(name("BJob", {k, j, t}, truth(c)), cmach_of(j, t));
                }
            }
            for (std::size_t l = 0; l < k; ++l) {
                const auto [j, t] = trace.tau(l);
                p.put_private(name("BSMach", {l, j, t}));
                p.put_private(name("FSMach", {l, j, t}));
            }
            break;
        }
        case GadgetKind::Lrs3Ra: {
            const sat::BubbleTrace trace = sat::bubble_trace(f, kappa);
            const std::size_t k = trace.k;
            auto smach = [](std::size_t l, std::size_t q, sat::Pair jt) {
                return name("SMach", {l, q, jt.first, jt.second});
            };
            for (std::size_t j = 0; j < n; ++j) {
                p.put(name("TJob", {j}), name("TMach", {j, a[j] ? 0U : 1U}));
                for (std::size_t t = 0; t < 4; ++t) {
                    const bool right = literal_true(a, j, t);
                    const std::string out = k > 0 ? smach(0, 0, {j, t}) : cmach_of(j, t);
                    p.put(name("VJob", {j, t}), right ? out : name("TMach", {j, t / 2}));
                    for (std::size_t l = 0; l < k; ++l) {
                        for (std::size_t q = 0; q < 3; ++q) {
                            const std::string next = (l + 1 == k && q == 2)
                                                         ? cmach_of(j, t)
                                                         : smach(l + q / 2, (q + 1) % 3, {j, t});
                            p.put(name("SJob", {l, q, j, t}), right ? next : smach(l, q, {j, t}));
                        }
                    }
                }
            }
            for (JobId id = 0; id < g.job_count(); ++id) {
                const std::string& label = g.job_names[id];
                if (label.rfind("Private(", 0) == 0) {
                    p.put_private(label.substr(8, label.size() - 9));
                }
            }
            for (std::size_t l = 0; l < k; ++l) {
                const sat::Pair gt = trace.gt[l];
                const sat::Pair lt = trace.lt[l];
                const bool right = literal_true(a, gt.first, gt.second);
                const std::string am0 = name("AMach", {l, 0});
                const std::string am1 = name("AMach", {l, 1});
                const std::string am2 = name("AMach", {l, 2});
                if (right) {
                    p.put(name("ASJob", {l, 0}), smach(l, 0, gt));
                    p.put(name("ABJob", {l, 0}), am0);
                    p.put(name("ABJob", {l, 1}), am1);
                    p.put(name("ASJob", {l, 1}), am2);
                    p.put(name("ASJob", {l, 2}), smach(l, 2, lt));
                } else {
                    p.put(name("ASJob", {l, 0}), am0);
                    p.put(name("ABJob", {l, 0}), am1);
                    p.put(name("ABJob", {l, 1}), am2);
                    p.put(name("ASJob", {l, 1}), smach(l, 2, lt));
                    p.put(name("ASJob", {l, 2}), smach(l, 2, gt));
                }
            }
            break;
        }
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) p.fill_clause(i);
    return p.finish();
}

Assignment assignment_from_schedule(const GadgetInstance& g, const SatStarFormula& f,
                                    const Schedule& sched) {
    const ValidationReport report = validate(g.restricted(), sched, g.target, TargetMode::Exact);
    if (!report.ok()) {
        throw std::invalid_argument("not an exact " + g.target.get_str() +
                                    "-schedule: " + report.violations.front().describe());
    }
    const std::size_t n = f.variable_count;
    Assignment a(n);
    for (std::size_t j = 0; j < n; ++j) {
        const MachineId t0 = g.machine(name("TMach", {j, 0}));
        const MachineId t1 = g.machine(name("TMach", {j, 1}));
        const JobId truth_job = g.job(g.kind == GadgetKind::Rar2 ? name("TJob", {j, 2}) : name("TJob", {j}));
        const MachineId where = sched[truth_job];
        if (where != t0 && where != t1) {
            throw std::invalid_argument(g.job_names[truth_job] + " is not on a truth machine");
        }
        a[j] = g.kind == GadgetKind::Rar2 ? where == t1 : where == t0;
        if (g.kind == GadgetKind::Rai) {
            for (std::size_t t = 0; t < 4; ++t) {
                const bool c = literal_true(a, j, t);
                if (sched[g.job(name("VJob", {j, t}, truth(!c)))] != g.machine(name("TMach", {j, t / 2}))) {
                    throw std::invalid_argument("variable jobs of x" + std::to_string(j) +
                                                " match neither truth-setting pattern");
                }
            }
        }
    }
    if (!sat::evaluate(f, a)) {
        throw InvariantFault("extracted assignment does not satisfy the formula");
    }
    return a;
}

}  // namespace intsched::gadgets
