#include <doctest.h>

#include <random>

#include "intsched/lrs3.hpp"

using namespace intsched;
using namespace intsched::lrs3;

namespace {

const Lrs3Numeric& minimal_numeric() {
    static const Lrs3Numeric num = build_numeric(sat::minimal_formula(), Rational(1, 2), Rational(8));
    return num;
}

Rational pow_int(const Rational& base, int e) {
    Rational out = 1;
    for (int k = 0; k < (e < 0 ? -e : e); ++k) out *= base;
    return e < 0 ? Rational(1) / out : out;
}

}  // namespace

TEST_SUITE("lrs3") {

TEST_CASE("parameters") {
    const Lrs3Numeric& num = minimal_numeric();
    CHECK(num.eps == Rational(1, 4));
    CHECK(num.base == 32);
    CHECK(num.big_c == 48);
    CHECK(num.block_count == 3 * num.k + 2);
    CHECK(num.power(-2) == Rational(1, 1024));
}

TEST_CASE("closed-form processing times") {
    const Lrs3Numeric& num = minimal_numeric();
    const auto& g = num.gadget;
    const Rational N = num.base;
    CHECK(lrs3_processing_time(num, g.job("TJob(0)"), g.machine("TMach(0,0)")) == 2 * pow_int(N, -4) + 2);
    CHECK(lrs3_processing_time(num, g.job("TJob(0)"), g.machine("TMach(0,1)")) == 2 + 2 * pow_int(N, -1));
    // Clause 0 is 1-in-3, so phi(0,1) = 2.
    for (std::size_t s = 0; s < 3; ++s) {
        const std::string cm = "CMach(0," + std::to_string(s) + ")";
        CHECK(lrs3_processing_time(num, g.job("CJob(0,1)"), g.machine(cm)) ==
              num.eps * pow_int(N, 2 * (static_cast<int>(s) - 2)) + 2);
    }
}

TEST_CASE("variable jobs on the first truth machine") {
    const Lrs3Numeric& num = minimal_numeric();
    const auto& g = num.gadget;
    for (std::size_t j = 0; j < 3; ++j) {
        const MachineId tm = g.machine("TMach(" + std::to_string(j) + ",0)");
        for (std::size_t t = 0; t < 4; ++t) {
            const JobId v = g.job("VJob(" + std::to_string(j) + "," + std::to_string(t) + ")");
            CHECK(lrs3_classify(num, v, tm) == (t < 2 ? Lrs3Class::Eligible : Lrs3Class::Blocked));
            if (t < 2) {
                const Rational p = lrs3_processing_time(num, v, tm);
                CHECK(p >= 1);
                CHECK(p <= num.eps + pow_int(num.base, -1) + 1);
            }
        }
    }
}

TEST_CASE("sorting-machine private load on its own machine is 1 + 2 eps") {
    const Lrs3Numeric& num = minimal_numeric();
    const auto& g = num.gadget;
    std::size_t seen = 0;
    for (JobId j = 0; j < g.job_count(); ++j) {
        const std::string& name = g.job_names[j];
        if (name.rfind("Private(SMach(", 0) != 0) continue;
        const std::string machine = name.substr(8, name.size() - 9);
        const MachineId i = g.machine(machine);
        CHECK(lrs3_classify(num, j, i) == Lrs3Class::Eligible);
        CHECK(lrs3_processing_time(num, j, i) == 1 + 2 * num.eps);
        if (++seen == 40) break;
    }
    CHECK(seen == 40);
}

TEST_CASE("invalid parameters are refused") {
    const auto f = sat::minimal_formula();
    CHECK_THROWS_AS(build_numeric(f, Rational(0), Rational(8)), std::invalid_argument);
    CHECK_THROWS_AS(build_numeric(f, Rational(3, 2), Rational(8)), std::invalid_argument);
    CHECK_THROWS_AS(build_numeric(f, Rational(1, 2), Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("shortcut never contradicts full evaluation on random pairs") {
    const Lrs3Numeric& num = minimal_numeric();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<JobId> job(0, num.gadget.job_count() - 1);
    std::uniform_int_distribution<MachineId> machine(0, num.gadget.machine_count() - 1);
    std::size_t certified = 0;
    for (int rep = 0; rep < 3000; ++rep) {
        const JobId j = job(rng);
        const MachineId i = machine(rng);
        const Lrs3Class c = lrs3_classify(num, j, i);
        CHECK((c == Lrs3Class::Eligible) == num.view.job(j).eligible_on(i));
        if (lrs3_shortcut_blocked(num, j, i)) {
            ++certified;
            CHECK(c == Lrs3Class::Blocked);
            CHECK(lrs3_processing_time(num, j, i) > num.cap);
        }
    }
    CHECK(certified > 0);
}

TEST_CASE("sweep on the formula whose psi_0 is already sorted") {
    const auto f = sat::parse_formula("1: 1 1 -1\n1: -1 2 2\n2: -2 -2 3\n2: 3 -3 -3\n");
    const Lrs3Numeric num = build_numeric(f, Rational(1, 2), Rational(8));
    CHECK(num.k == 0);
    const Lrs3SweepStats stats = lrs3_sweep(num);
    CHECK(stats.pairs == num.gadget.job_count() * num.gadget.machine_count());
    CHECK(stats.ok());
}

}  // TEST_SUITE
