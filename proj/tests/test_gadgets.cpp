#include <doctest.h>

#include <algorithm>

#include "intsched/exact.hpp"
#include "intsched/gadgets.hpp"
#include "support.hpp"

using namespace intsched;
using namespace intsched::gadgets;

namespace {

const std::vector<GadgetKind> kAllKinds{GadgetKind::Simple, GadgetKind::Rar3, GadgetKind::Rar2, GadgetKind::Rai,
                                        GadgetKind::Lrs3Ra};

std::vector<MachineId> eligible_of(const GadgetInstance& g, const std::string& job) {
    return g.restricted().job(g.job(job)).eligible;
}

std::vector<MachineId> machines(const GadgetInstance& g, std::initializer_list<std::string> names) {
    std::vector<MachineId> out;
    for (const auto& n : names) out.push_back(g.machine(n));
    std::sort(out.begin(), out.end());
    return out;
}

std::string pair_name(const char* base, std::size_t a, std::size_t b) {
    return std::string(base) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

sat::SatStarFormula satisfiable_random(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    while (true) {
        sat::SatStarFormula f = sat::random_formula(n, rng);
        if (sat::sat_brute_force(f)) return f;
    }
}

}  // namespace

TEST_SUITE("gadgets") {

TEST_CASE("simple reduction of the minimal formula") {
    const auto f = sat::minimal_formula();
    const GadgetInstance g = reduce_simple(f);
    CHECK(g.machine_count() == 18);
    CHECK(g.total_size() == 36);
    CHECK(g.target == 2);
    CHECK(eligible_of(g, "VJob(0,3)").size() == 2);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const Integer size = g.restricted().job(g.job(pair_name("CJob", i, 1))).size;
        CHECK((size == 2) == (f.clauses[i].kind == 1));
    }
}

TEST_CASE("three-resource table entries") {
    const auto f = sat::minimal_formula();
    const GadgetInstance g = reduce_rar3(f);
    const auto& inst = std::get<ResourceInstance>(g.instance);
    const long n = 3;
    for (long j = 0; j < n; ++j) {
        const auto& caps = inst.capacities()[g.machine(pair_name("TMach", j, 1))];
        CHECK(caps == std::vector<Integer>{Integer(4 * j + 3), Integer(4 * n - 4 * j), Integer(0)});
        for (std::size_t t = 0; t < 4; ++t) {
            const auto& demand = inst.jobs()[g.job(pair_name("VJob", j, t))].demand;
            CHECK(demand[2] == 1 - static_cast<long>(t / 2));
        }
    }
}

TEST_CASE("three-resource variable job eligibility equals the simple reduction's") {
    const auto f = sat::minimal_formula();
    const GadgetInstance simple = reduce_simple(f);
    const GadgetInstance rar3 = reduce_rar3(f);
    CHECK(simple.machine_names == rar3.machine_names);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            const std::string name = pair_name("VJob", j, t);
            CHECK(eligible_of(simple, name) == eligible_of(rar3, name));
        }
    }
}

TEST_CASE("two-resource table entries") {
    const auto f = sat::minimal_formula();
    const GadgetInstance g = reduce_rar2(f);
    const auto& inst = std::get<ResourceInstance>(g.instance);
    const long n = 3;
    for (long j = 0; j < n; ++j) {
        const auto& job = inst.jobs()[g.job(pair_name("TJob", j, 2))];
        CHECK(job.size == 2);
        CHECK(job.demand == std::vector<Integer>{Integer(2 * j), Integer(6 * n - (2 * j + 1))});
        for (std::size_t t = 0; t < 4; ++t) {
            CHECK(inst.jobs()[g.job("VJob(" + std::to_string(j) + "," + std::to_string(t) + ",top)")].size == 3);
            CHECK(inst.jobs()[g.job("VJob(" + std::to_string(j) + "," + std::to_string(t) + ",bot)")].size == 2);
        }
    }
    CHECK(g.machine_count() == 18);
    CHECK(g.total_size() == 126);
    CHECK(g.target == 7);
}

TEST_CASE("interval gadget machine count, mass and bridge order") {
    const auto f = sat::minimal_formula();
    const std::size_t k = sat::bubble_trace(f, sat::kappa(f)).k;
    const GadgetInstance g = reduce_rai(f);
    CHECK(g.machine_count() == (14 + 8 * k) * 3);
    CHECK(g.total_size() == 8 * g.machine_count());
    const auto& inst = std::get<RaiInstance>(g.instance);
    std::size_t bridges = 0;
    for (JobId j = 0; j < g.job_count(); ++j) {
        if (g.job_names[j].rfind("BJob(", 0) == 0) {
            ++bridges;
            CHECK(inst.job(j).first < inst.job(j).last);
        }
    }
    CHECK(bridges > 0);
    CHECK(as_interval(g.restricted()).has_value());
}

TEST_CASE("rank-three gadget structure") {
    const auto f = sat::minimal_formula();
    const sat::OccurrenceMap kappa = sat::kappa(f);
    const std::size_t k = sat::bubble_trace(f, kappa).k;
    const GadgetInstance g = reduce_lrs3_ra(f);
    CHECK(g.machine_count() == (12 * k + 6) * 3 + 3 * k);
    CHECK(g.total_size() == 2 * g.machine_count());
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t t = 0; t < 4; ++t) {
            const std::string tuple = std::to_string(k - 1) + ",2," + std::to_string(j) + "," + std::to_string(t);
            const sat::Pair is = kappa(j, t);
            CHECK(eligible_of(g, "SJob(" + tuple + ")") ==
                  machines(g, {"SMach(" + tuple + ")", pair_name("CMach", is.first, is.second)}));
        }
    }
    std::size_t amp_private = 0;
    const RestrictedInstance view = g.restricted();
    for (JobId j = 0; j < g.job_count(); ++j) {
        if (g.job_names[j].rfind("Private(AMach(", 0) == 0) {
            ++amp_private;
            CHECK(view.job(j).size == 1);
            CHECK(view.job(j).eligible.size() == 1);
        }
    }
    CHECK(amp_private == 3 * k);
}

TEST_CASE("mass identities on random formulas") {
    std::mt19937_64 rng(99);
    for (std::size_t n : {3, 6, 9}) {
        for (int rep = 0; rep < 3; ++rep) {
            const auto f = sat::random_formula(n, rng);
            for (GadgetKind kind : kAllKinds) {
                const GadgetInstance g = reduce(kind, f);
                CHECK_MESSAGE(g.total_size() == g.target * Integer(static_cast<unsigned long>(g.machine_count())),
                              to_string(kind));
            }
        }
    }
}

TEST_CASE("constructive round trip for every satisfying assignment") {
    const std::vector<sat::SatStarFormula> formulas{sat::minimal_formula(), satisfiable_random(6, 3),
                                                    sat::parse_formula("1: 1 1 -1\n1: -1 2 2\n2: -2 -2 3\n2: 3 -3 -3\n")};
    for (const auto& f : formulas) {
        for (GadgetKind kind : kAllKinds) {
            const GadgetInstance g = reduce(kind, f);
            for (const sat::Assignment& a : sat::all_satisfying(f)) {
                const Schedule s = schedule_from_assignment(g, f, a);
                CHECK_MESSAGE(validate(g.restricted(), s, g.target, TargetMode::Exact).ok(), to_string(kind));
                CHECK(assignment_from_schedule(g, f, s) == a);
            }
        }
    }
}

TEST_CASE("truth job placement encodes the assignment") {
    const auto f = sat::minimal_formula();
    const GadgetInstance g = reduce_simple(f);
    const Schedule s = schedule_from_assignment(g, f, {true, false, true});
    CHECK(s[g.job("TJob(0)")] == g.machine("TMach(0,0)"));
    CHECK(s[g.job("TJob(1)")] == g.machine("TMach(1,1)"));
}

TEST_CASE("refusals") {
    const auto f = sat::minimal_formula();
    for (GadgetKind kind : kAllKinds) {
        const GadgetInstance g = reduce(kind, f);
        CHECK_THROWS_AS(schedule_from_assignment(g, f, sat::Assignment(3, true)), std::invalid_argument);
        Schedule lumped;
        const RestrictedInstance view = g.restricted();
        for (const auto& job : view.jobs()) lumped.assignment.push_back(job.eligible.front());
        if (!validate(view, lumped, g.target, TargetMode::Exact).ok()) {
            CHECK_THROWS_AS(assignment_from_schedule(g, f, lumped), std::invalid_argument);
        }
    }
    CHECK_THROWS_AS(reduce_simple(sat::SatStarFormula{}), InvalidInstance);
}

TEST_CASE("search direction on the simple gadget") {
    const auto f = sat::minimal_formula();
    const GadgetInstance g = reduce_simple(f);
    CHECK(exact::exists_exact_T_schedule(g.restricted(), g.target).status == exact::SearchStatus::Found);
    const auto unsat = testsupport::find_unsatisfiable(3);
    REQUIRE(unsat);
    REQUIRE_FALSE(sat::sat_brute_force(*unsat));
    const GadgetInstance u = reduce_simple(*unsat);
    CHECK(exact::exists_exact_T_schedule(u.restricted(), u.target).status == exact::SearchStatus::Absent);
}

}  // TEST_SUITE

TEST_SUITE("rar3_claim") {

// The three-resource table lets TJob(j) also fit CMach(kappa(j,0)); the
// stated claim is that it fits exactly the two truth machines.
TEST_CASE("three-resource truth job eligibility equals the simple reduction's") {
    const auto f = sat::minimal_formula();
    const GadgetInstance simple = reduce_simple(f);
    const GadgetInstance rar3 = reduce_rar3(f);
    for (std::size_t j = 0; j < 3; ++j) {
        const std::string name = "TJob(" + std::to_string(j) + ")";
        CHECK(eligible_of(simple, name) == eligible_of(rar3, name));
    }
}

}  // TEST_SUITE
