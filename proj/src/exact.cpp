#include "intsched/exact.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace intsched::exact {

namespace {

struct Exhausted {};

class Meter {
public:
    explicit Meter(const SearchBudget& budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void tick() {
        ++nodes_;
        if (nodes_ > budget_.node_limit) throw Exhausted{};
        if ((nodes_ & 0xfff) == 0) {
            const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
            if (spent.count() > budget_.time_limit) throw Exhausted{};
        }
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
};

std::int64_t narrow(const Integer& value) {
    if (!value.fits_slong_p()) {
        throw InvalidInstance("size " + value.get_str() + " is too large for exact search");
    }
    return value.get_si();
}

struct Flat {
    std::size_t m = 0;
    std::vector<std::int64_t> size;
    std::vector<std::vector<MachineId>> eligible;
    std::vector<JobId> order;  // decreasing size, ties by id
};

Flat flatten(const RestrictedInstance& inst) {
    Flat f;
    f.m = inst.machine_count();
    for (const RestrictedJob& job : inst.jobs()) {
        if (job.eligible.empty()) throw NoEligibleMachine(job.id);
        f.size.push_back(narrow(job.size));
        f.eligible.push_back(job.eligible);
    }
    f.order.resize(f.size.size());
    std::iota(f.order.begin(), f.order.end(), JobId{0});
    std::stable_sort(f.order.begin(), f.order.end(),
                     [&](JobId a, JobId b) { return f.size[a] > f.size[b]; });
    return f;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

class MakespanSearch {
public:
    MakespanSearch(const Flat& f, Meter& meter)
        : f_(f), meter_(meter), load_(f.m, 0), assign_(f.size.size(), 0) {
        remaining_ = std::accumulate(f.size.begin(), f.size.end(), std::int64_t{0});
    }

    void run() {
        // Greedy incumbent: each job to its least loaded eligible machine.
        std::vector<std::int64_t> load(f_.m, 0);
        best_assign_.assign(f_.size.size(), 0);
        for (JobId j : f_.order) {
            MachineId pick = f_.eligible[j].front();
            for (MachineId i : f_.eligible[j]) {
                if (load[i] < load[pick]) pick = i;
            }
            best_assign_[j] = pick;
            load[pick] += f_.size[j];
        }
        best_ = f_.m == 0 ? 0 : *std::max_element(load.begin(), load.end());
        std::int64_t max_p = 0;
        for (std::int64_t p : f_.size) max_p = std::max(max_p, p);
        floor_ = f_.m == 0 ? 0 : std::max(max_p, ceil_div(remaining_, static_cast<std::int64_t>(f_.m)));
        if (best_ > floor_) dfs(0, 0);
    }

    std::int64_t best() const { return best_; }
    const std::vector<MachineId>& best_assignment() const { return best_assign_; }

private:
    void dfs(std::size_t depth, std::int64_t current) {
        meter_.tick();
        if (depth == f_.order.size()) {
            if (current < best_) {
                best_ = current;
                best_assign_ = assign_;
            }
            return;
        }
        const std::int64_t placed = std::accumulate(load_.begin(), load_.end(), std::int64_t{0});
        if (std::max(current, ceil_div(placed + remaining_, static_cast<std::int64_t>(f_.m))) >= best_) {
            return;
        }
        const JobId j = f_.order[depth];
        const std::int64_t p = f_.size[j];
        for (MachineId i : f_.eligible[j]) {
            if (load_[i] + p >= best_) continue;
            load_[i] += p;
            remaining_ -= p;
            assign_[j] = i;
            dfs(depth + 1, std::max(current, load_[i]));
            remaining_ += p;
            load_[i] -= p;
            if (best_ <= floor_) return;
        }
    }

    const Flat& f_;
    Meter& meter_;
    std::vector<std::int64_t> load_;
    std::vector<MachineId> assign_;
    std::vector<MachineId> best_assign_;
    std::int64_t remaining_ = 0;
    std::int64_t best_ = 0;
    std::int64_t floor_ = 0;
};

class MinLoadSearch {
public:
    MinLoadSearch(const Flat& f, Meter& meter)
        : f_(f), meter_(meter), load_(f.m, 0), reach_(f.m, 0), assign_(f.size.size(), 0) {
        for (JobId j = 0; j < f.size.size(); ++j) {
            for (MachineId i : f.eligible[j]) reach_[i] += f.size[j];
        }
    }

    void run() {
        std::vector<std::int64_t> load(f_.m, 0);
        best_assign_.assign(f_.size.size(), 0);
        for (JobId j : f_.order) {
            MachineId pick = f_.eligible[j].front();
            for (MachineId i : f_.eligible[j]) {
                if (load[i] < load[pick]) pick = i;
            }
            best_assign_[j] = pick;
            load[pick] += f_.size[j];
        }
        best_ = f_.m == 0 ? 0 : *std::min_element(load.begin(), load.end());
        const std::int64_t total = std::accumulate(f_.size.begin(), f_.size.end(), std::int64_t{0});
        ceiling_ = f_.m == 0 ? 0 : std::min(*std::min_element(reach_.begin(), reach_.end()),
                                            total / static_cast<std::int64_t>(f_.m));
        if (best_ < ceiling_) dfs(0);
    }

    std::int64_t best() const { return best_; }
    const std::vector<MachineId>& best_assignment() const { return best_assign_; }

private:
    // reach_[i] = load_[i] + unassigned sizes eligible on i, an upper bound on i's final load.
    void dfs(std::size_t depth) {
        meter_.tick();
        if (*std::min_element(reach_.begin(), reach_.end()) <= best_) return;
        if (depth == f_.order.size()) {
            best_ = *std::min_element(load_.begin(), load_.end());
            best_assign_ = assign_;
            return;
        }
        const JobId j = f_.order[depth];
        const std::int64_t p = f_.size[j];
        for (MachineId i : f_.eligible[j]) reach_[i] -= p;
        for (MachineId i : f_.eligible[j]) {
            load_[i] += p;
            reach_[i] += p;
            assign_[j] = i;
            dfs(depth + 1);
            reach_[i] -= p;
            load_[i] -= p;
            if (best_ >= ceiling_) break;
        }
        for (MachineId i : f_.eligible[j]) reach_[i] += p;
    }

    const Flat& f_;
    Meter& meter_;
    std::vector<std::int64_t> load_;
    std::vector<std::int64_t> reach_;
    std::vector<MachineId> assign_;
    std::vector<MachineId> best_assign_;
    std::int64_t best_ = 0;
    std::int64_t ceiling_ = 0;
};

constexpr MachineId kUnassigned = static_cast<MachineId>(-1);

class ExactSearch {
public:
    ExactSearch(const Flat& f, std::int64_t target, Meter& meter) : f_(f), meter_(meter) {
        cap_.assign(f.m, target);
        assign_.assign(f.size.size(), kUnassigned);
    }

    bool run() { return search(cap_, assign_); }
    const std::vector<MachineId>& solution() const { return solution_; }

private:
    using Caps = std::vector<std::int64_t>;
    using Assign = std::vector<MachineId>;

    void place(Caps& cap, Assign& assign, JobId j, MachineId i) const {
        assign[j] = i;
        cap[i] -= f_.size[j];
    }

    // False on a dead end.
    bool propagate(Caps& cap, Assign& assign) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (JobId j = 0; j < assign.size(); ++j) {
                if (assign[j] != kUnassigned) continue;
                MachineId only = kUnassigned;
                int options = 0;
                for (MachineId i : f_.eligible[j]) {
                    if (cap[i] >= f_.size[j]) {
                        ++options;
                        only = i;
                    }
                }
                if (options == 0) return false;
                if (options == 1) {
                    place(cap, assign, j, only);
                    changed = true;
                }
            }
            std::vector<std::int64_t> offered(f_.m, 0);
            for (JobId j = 0; j < assign.size(); ++j) {
                if (assign[j] != kUnassigned) continue;
                for (MachineId i : f_.eligible[j]) {
                    if (cap[i] >= f_.size[j]) offered[i] += f_.size[j];
                }
            }
            for (MachineId i = 0; i < f_.m; ++i) {
                if (offered[i] < cap[i]) return false;
                if (cap[i] > 0 && offered[i] == cap[i]) {
                    for (JobId j = 0; j < assign.size(); ++j) {
                        if (assign[j] == kUnassigned && f_.size[j] <= cap[i] &&
                            std::binary_search(f_.eligible[j].begin(), f_.eligible[j].end(), i)) {
                            place(cap, assign, j, i);
                        }
                    }
                    changed = true;
                }
            }
            for (MachineId i = 0; i < f_.m; ++i) {
                if (cap[i] < 0) return false;
            }
        }
        return true;
    }

    bool search(Caps cap, Assign assign) {
        meter_.tick();
        if (!propagate(cap, assign)) return false;
        JobId branch = kUnassigned;
        int branch_options = 0;
        for (JobId j = 0; j < assign.size(); ++j) {
            if (assign[j] != kUnassigned) continue;
            int options = 0;
            for (MachineId i : f_.eligible[j]) {
                if (cap[i] >= f_.size[j]) ++options;
            }
            const bool better = branch == kUnassigned || options < branch_options ||
                                (options == branch_options && f_.size[j] > f_.size[branch]);
            if (better) {
                branch = j;
                branch_options = options;
            }
        }
        if (branch == kUnassigned) {
            if (std::any_of(cap.begin(), cap.end(), [](std::int64_t c) { return c != 0; })) {
                return false;
            }
            solution_ = assign;
            return true;
        }
        for (MachineId i : f_.eligible[branch]) {
            if (cap[i] < f_.size[branch]) continue;
            Caps next_cap = cap;
            Assign next_assign = assign;
            place(next_cap, next_assign, branch, i);
            if (search(std::move(next_cap), std::move(next_assign))) return true;
        }
        return false;
    }

    const Flat& f_;
    Meter& meter_;
    Caps cap_;
    Assign assign_;
    Assign solution_;
};

}  // namespace

const char* to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Found: return "found";
        case SearchStatus::Absent: return "absent";
        case SearchStatus::Unknown: return "unknown";
    }
    return "unknown";
}

OptimumResult optimal_makespan(const RestrictedInstance& inst, const SearchBudget& budget) {
    const Flat f = flatten(inst);
    Meter meter(budget);
    MakespanSearch search(f, meter);
    OptimumResult out;
    try {
        search.run();
        out.status = SearchStatus::Found;
        out.opt = Integer(static_cast<long>(search.best()));
        out.schedule.assignment = search.best_assignment();
    } catch (const Exhausted&) {
        out.status = SearchStatus::Unknown;
    }
    out.nodes = meter.nodes();
    return out;
}

OptimumResult optimal_min_load(const RestrictedInstance& inst, const SearchBudget& budget) {
    const Flat f = flatten(inst);
    Meter meter(budget);
    MinLoadSearch search(f, meter);
    OptimumResult out;
    try {
        search.run();
        out.status = SearchStatus::Found;
        out.opt = Integer(static_cast<long>(search.best()));
        out.schedule.assignment = search.best_assignment();
    } catch (const Exhausted&) {
        out.status = SearchStatus::Unknown;
    }
    out.nodes = meter.nodes();
    return out;
}

ExactResult exists_exact_T_schedule(const RestrictedInstance& inst, const Integer& target,
                                    const SearchBudget& budget) {
    ExactResult out;
    if (total_size(inst) != target * static_cast<unsigned long>(inst.machine_count())) {
        out.status = SearchStatus::Absent;
        return out;
    }
    const Flat f = flatten(inst);
    Meter meter(budget);
    ExactSearch search(f, narrow(target), meter);
    try {
        if (search.run()) {
            out.status = SearchStatus::Found;
            out.schedule = Schedule{search.solution()};
        } else {
            out.status = SearchStatus::Absent;
        }
    } catch (const Exhausted&) {
        out.status = SearchStatus::Unknown;
    }
    out.nodes = meter.nodes();
    return out;
}

}  // namespace intsched::exact
