#include <doctest.h>

#include "intsched/lff.hpp"
#include "support.hpp"

using namespace intsched;
using namespace intsched::lff;

TEST_SUITE("lff") {

TEST_CASE("lower bound examples") {
    // Intervals [0,0]: 2, [1,1]: 0, [0,1]: 4/2. Max size is also 2.
    CHECK(lower_bound(RaiInstance(2, {{0, 2, 0, 0}, {1, 2, 0, 1}})).value == 2);
    CHECK(lower_bound(RaiInstance(5, {{0, 9, 3, 3}})).value == 9);
    const LffBound avg = lower_bound(RaiInstance(1, {{0, 1, 0, 0}, {1, 1, 0, 0}, {2, 1, 0, 0}}));
    CHECK(avg.value == 3);
    REQUIRE(avg.interval_witness);
    CHECK(*avg.interval_witness == std::pair<MachineId, MachineId>{0, 0});
    const LffBound empty = lower_bound(RaiInstance(3, {}));
    CHECK(empty.value == 0);
    CHECK_FALSE(empty.job_witness);
    CHECK_FALSE(empty.interval_witness);
}

TEST_CASE("hand trace: machine 0 takes both jobs") {
    const RaiInstance inst(2, {{0, 2, 0, 0}, {1, 2, 0, 1}});
    const Schedule s = lff_schedule(inst);
    CHECK(s.assignment == std::vector<MachineId>{0, 0});
    CHECK(makespan(inst, s) == 4);
}

TEST_CASE("single machine and forced assignments") {
    const RaiInstance one(1, {{0, 5, 0, 0}, {1, 1, 0, 0}});
    CHECK(lff_schedule(one).assignment == std::vector<MachineId>{0, 0});
    const RaiInstance forced(3, {{0, 4, 2, 2}, {1, 1, 0, 0}, {2, 7, 1, 1}});
    CHECK(lff_schedule(forced).assignment == std::vector<MachineId>{2, 0, 1});
}

TEST_CASE("least flexible breaks ties by id") {
    const RaiInstance inst(3, {{0, 1, 0, 2}, {1, 1, 0, 1}, {2, 1, 1, 1}});
    CHECK(least_flexible(inst, {0, 1, 2}) == 1);
    CHECK(least_flexible(inst, {0, 2}) == 2);
}

TEST_CASE("corpus: load at most L + pmax, L at most OPT") {
    for (const RaiInstance& inst : testsupport::corpus(80, 0x1ff)) {
        const Rational L = lower_bound(inst).value;
        CHECK(L == testsupport::oracle_lower_bound(inst));
        const Schedule s = lff_schedule(inst);
        REQUIRE(validate(inst, s).ok());
        CHECK(Rational(makespan(inst, s)) <= L + Rational(max_size(inst)));
        const Integer opt = testsupport::oracle_makespan(rai_to_restricted(inst));
        CHECK(L <= Rational(opt));
        CHECK(makespan(inst, s) <= 2 * opt);
    }
}

}  // TEST_SUITE
