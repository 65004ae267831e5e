#include <doctest.h>

#include "intsched/exact.hpp"
#include "intsched/gadgets.hpp"
#include "support.hpp"

using namespace intsched;
using namespace intsched::exact;

namespace {

RestrictedInstance everywhere(std::size_t machines, std::initializer_list<long> sizes) {
    std::vector<MachineId> all;
    for (MachineId i = 0; i < machines; ++i) all.push_back(i);
    std::vector<RestrictedJob> jobs;
    for (long p : sizes) jobs.push_back({jobs.size(), Integer(p), all});
    return RestrictedInstance(machines, std::move(jobs));
}

RestrictedInstance random_restricted(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> machines_dist(1, 4);
    std::uniform_int_distribution<int> jobs_dist(1, 8);
    std::uniform_int_distribution<int> size_dist(1, 9);
    const std::size_t m = machines_dist(rng);
    const int n = jobs_dist(rng);
    std::vector<RestrictedJob> jobs;
    for (int j = 0; j < n; ++j) {
        std::vector<MachineId> elig;
        for (MachineId i = 0; i < m; ++i) {
            if (rng() % 2 == 0) elig.push_back(i);
        }
        if (elig.empty()) elig.push_back(rng() % m);
        jobs.push_back({static_cast<JobId>(j), Integer(size_dist(rng)), elig});
    }
    return RestrictedInstance(m, std::move(jobs));
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("makespan and min-load optimum of three equal jobs") {
    const RestrictedInstance inst = everywhere(2, {2, 2, 2});
    const OptimumResult mk = optimal_makespan(inst);
    REQUIRE(mk.status == SearchStatus::Found);
    CHECK(mk.opt == 4);
    CHECK(makespan(inst, mk.schedule) == 4);
    const OptimumResult ml = optimal_min_load(inst);
    REQUIRE(ml.status == SearchStatus::Found);
    CHECK(ml.opt == 2);
    CHECK(min_load(inst, ml.schedule) == 2);
}

TEST_CASE("single machine and forced eligibility") {
    CHECK(optimal_makespan(everywhere(1, {3, 5, 1})).opt == 9);
    const RestrictedInstance forced(2, {{0, 3, {0}}, {1, 4, {0}}, {2, 5, {1}}});
    CHECK(optimal_makespan(forced).opt == 7);
    const RestrictedInstance idle(2, {{0, 3, {0}}});
    CHECK(optimal_min_load(idle).opt == 0);
}

TEST_CASE("optima agree with the subset oracle") {
    std::mt19937_64 rng(404);
    for (int rep = 0; rep < 60; ++rep) {
        const RestrictedInstance inst = random_restricted(rng);
        const OptimumResult mk = optimal_makespan(inst);
        REQUIRE(mk.status == SearchStatus::Found);
        CHECK(mk.opt == testsupport::oracle_makespan(inst));
        const OptimumResult ml = optimal_min_load(inst);
        REQUIRE(ml.status == SearchStatus::Found);
        CHECK(ml.opt == testsupport::oracle_min_load(inst));
        const Integer total = total_size(inst);
        const Integer m(static_cast<unsigned long>(inst.machine_count()));
        if (total % m == 0) {
            const Integer t = total / m;
            const ExactResult ex = exists_exact_T_schedule(inst, t);
            CHECK((ex.status == SearchStatus::Found) ==
                  testsupport::oracle_feasible(inst, t, testsupport::LoadRule::Exactly));
            if (ex.status == SearchStatus::Found) {
                CHECK(validate(inst, *ex.schedule, t, TargetMode::Exact).ok());
                CHECK(ml.opt == t);
            }
        }
    }
}

TEST_CASE("a tiny budget yields unknown, never a bound") {
    const RestrictedInstance inst = everywhere(3, {5, 7, 9, 11, 13, 4, 6, 8});
    const OptimumResult res = optimal_makespan(inst, SearchBudget{2, 600.0});
    CHECK(res.status == SearchStatus::Unknown);
    CHECK(std::string(to_string(res.status)) == "unknown");
}

TEST_CASE("exact-T examples") {
    const RestrictedInstance one(1, {{0, 3, {0}}, {1, 4, {0}}});
    const ExactResult forced = exists_exact_T_schedule(one, Integer(7));
    REQUIRE(forced.status == SearchStatus::Found);
    CHECK(forced.schedule->assignment == std::vector<MachineId>{0, 0});
    CHECK(exists_exact_T_schedule(one, Integer(6)).status == SearchStatus::Absent);

    const auto f = sat::minimal_formula();
    const auto g = gadgets::reduce_simple(f);
    const ExactResult simple = exists_exact_T_schedule(g.restricted(), g.target);
    REQUIRE(simple.status == SearchStatus::Found);
    CHECK(validate(g.restricted(), *simple.schedule, Integer(2), TargetMode::Exact).ok());
    CHECK(sat::evaluate(f, gadgets::assignment_from_schedule(g, f, *simple.schedule)));
}

}  // TEST_SUITE
