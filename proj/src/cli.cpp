#include "intsched/cli.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>

#include "intsched/approx.hpp"
#include "intsched/exact.hpp"
#include "intsched/formula.hpp"
#include "intsched/gadgets.hpp"
#include "intsched/io.hpp"
#include "intsched/lff.hpp"
#include "intsched/lrs3.hpp"

namespace intsched::cli {

using io::Json;

namespace {

constexpr const char* kExitHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  parse or i/o error: unreadable or malformed instance, schedule or formula file,\n"
    "     unwritable output, or bad command line\n"
    "  2  shape error: invalid instance, non-interval input to solve/lff, failed verify\n"
    "  3  parameter error: bad flag value or violated gamma/xi inequality\n"
    "  4  exact search budget exhausted (report still printed)\n"
    "  5  internal invariant fault, failed lemma check or lrs3-check mismatch\n";

class ParamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Check {
    std::string name;
    bool passed = true;
    std::size_t evaluated = 0;
    std::string detail;
};

Json checks_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const Check& c : checks) {
        arr.push_back({{"name", c.name}, {"passed", c.passed}, {"evaluated", c.evaluated}, {"detail", c.detail}});
    }
    return arr;
}

bool all_passed(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Rational rational_flag(const std::string& name, const std::string& text) {
    try {
        return io::parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ParamError("--" + name + ": " + e.what());
    }
}

Integer integer_flag(const std::string& name, const std::string& text) {
    const Rational r = rational_flag(name, text);
    if (r.get_den() != 1) throw ParamError("--" + name + " must be an integer, got " + text);
    return r.get_num();
}

io::AnyInstance load_instance(const std::string& path) {
    return io::parse_instance(io::parse_json(io::read_file(path)));
}

sat::SatStarFormula load_formula(const std::string& path) { return sat::parse_formula(io::read_file(path)); }

Json loads_json(const std::vector<Integer>& loads) {
    Json arr = Json::array();
    for (const Integer& v : loads) arr.push_back(io::integer_json(v));
    return arr;
}

Check validation_check(const std::string& name, const ValidationReport& report) {
    Check c{name, report.ok(), report.loads.size(), ""};
    if (!report.ok()) c.detail = report.violations.front().describe();
    return c;
}

int emit(std::ostream& out, const Json& report, int code) {
    out << report.dump(2) << '\n';
    return code;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
    std::string path;
    std::string gamma = "1/24";
    std::string xi = "1/24";
    bool trace = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const io::AnyInstance any = load_instance(a.path);
    const auto inst = io::interval_view(any);
    if (!inst) throw ShapeError("eligibility sets are not intervals under the machine order");
    lp::RoundingParams params{rational_flag("gamma", a.gamma), rational_flag("xi", a.xi)};
    if (auto bad = params.violated_inequality()) throw ParamError("rounding parameters violate " + *bad);

    const approx::SolveResult res = approx::solve(*inst, params);
    std::vector<Check> checks;
    for (const approx::LemmaCheck& lc : res.checks) checks.push_back({lc.name, lc.passed, lc.evaluated, lc.detail});
    const std::vector<std::string> lp_issues = lp::check_assignment(*inst, params, res.lp_cert);
    checks.push_back({"lp_certificate", lp_issues.empty(), 1, lp_issues.empty() ? "" : lp_issues.front()});
    const Rational cap = (2 - params.gamma) * Rational(res.t_star);
    const Integer span = makespan(*inst, res.schedule);
    checks.push_back(validation_check("schedule_valid", validate(*inst, res.schedule)));
    checks.push_back({"makespan_within_(2-gamma)t_star", Rational(span) <= cap, 1,
                      Rational(span) <= cap ? "" : span.get_str() + " > " + cap.get_str()});

    Json report;
    report["command"] = "solve";
    report["instance_digest"] = io::instance_digest(any);
    report["gamma"] = io::rational_text(params.gamma);
    report["xi"] = io::rational_text(params.xi);
    report["t_star"] = io::integer_json(res.t_star);
    report["search_lower"] = io::integer_json(res.lower);
    report["search_upper"] = io::integer_json(res.upper);
    report["lp_solves"] = res.lp_solves;
    report["makespan"] = io::integer_json(span);
    report["lemma_checks"] = checks_json(checks);
    report["schedule"] = res.schedule.assignment;
    if (a.trace) {
        Json trace = Json::array();
        for (const approx::TraceEvent& ev : res.rounding.trace) {
            Json e;
            e["phase"] = ev.phase;
            e["machine"] = ev.machine;
            if (ev.job) e["job"] = *ev.job;
            if (ev.floor_value) e["floor"] = io::integer_json(*ev.floor_value);
            trace.push_back(std::move(e));
        }
        report["trace"] = std::move(trace);
    }
    return emit(out, report, all_passed(checks) ? kOk : kFault);
}

// ---- lff -----------------------------------------------------------------

int cmd_lff(const std::string& path, std::ostream& out) {
    const io::AnyInstance any = load_instance(path);
    const auto inst = io::interval_view(any);
    if (!inst) throw ShapeError("eligibility sets are not intervals under the machine order");
    const lff::LffBound bound = lff::lower_bound(*inst);
    const Schedule sched = lff::lff_schedule(*inst, bound.value);
    const ValidationReport report_v = validate(*inst, sched);
    std::vector<Check> checks{validation_check("all_jobs_placed", report_v)};
    const Rational limit = bound.value + Rational(max_size(*inst));
    Check load{"load_at_most_L_plus_pmax", true, report_v.loads.size(), ""};
    for (MachineId i = 0; i < report_v.loads.size(); ++i) {
        if (Rational(report_v.loads[i]) > limit && load.passed) {
            load.passed = false;
            load.detail = "machine " + std::to_string(i) + " load " + report_v.loads[i].get_str() + " > " + limit.get_str();
        }
    }
    checks.push_back(load);

    Json report;
    report["command"] = "lff";
    report["instance_digest"] = io::instance_digest(any);
    report["bound_L"] = io::rational_text(bound.value);
    if (bound.job_witness) report["bound_job_witness"] = *bound.job_witness;
    if (bound.interval_witness) {
        report["bound_interval_witness"] = {bound.interval_witness->first, bound.interval_witness->second};
    }
    report["makespan"] = io::integer_json(makespan(*inst, sched));
    report["lemma_checks"] = checks_json(checks);
    report["schedule"] = sched.assignment;
    return emit(out, report, all_passed(checks) ? kOk : kFault);
}

// ---- opt -----------------------------------------------------------------

struct OptArgs {
    std::string path;
    std::string objective = "makespan";
    std::uint64_t nodes = exact::SearchBudget{}.node_limit;
    double seconds = exact::SearchBudget{}.time_limit;
};

int cmd_opt(const OptArgs& a, std::ostream& out) {
    const io::AnyInstance any = load_instance(a.path);
    const RestrictedInstance inst = io::restricted_view(any);
    if (a.objective != "makespan" && a.objective != "minload") {
        throw ParamError("--objective must be makespan or minload");
    }
    const exact::SearchBudget budget{a.nodes, a.seconds};
    const bool mk = a.objective == "makespan";
    const exact::OptimumResult res = mk ? exact::optimal_makespan(inst, budget) : exact::optimal_min_load(inst, budget);

    std::vector<Check> checks;
    Json report;
    report["command"] = "opt";
    report["instance_digest"] = io::instance_digest(any);
    report["objective"] = a.objective;
    report["status"] = exact::to_string(res.status);
    report["nodes"] = res.nodes;
    if (res.status == exact::SearchStatus::Found) {
        const ValidationReport v = validate(inst, res.schedule);
        checks.push_back(validation_check("schedule_valid", v));
        const Integer value = mk ? makespan(inst, res.schedule) : min_load(inst, res.schedule);
        checks.push_back({"schedule_attains_opt", value == res.opt, 1,
                          value == res.opt ? "" : value.get_str() + " != " + res.opt.get_str()});
        report[mk ? "makespan" : "min_load"] = io::integer_json(res.opt);
        report["lemma_checks"] = checks_json(checks);
        report["schedule"] = res.schedule.assignment;
        return emit(out, report, all_passed(checks) ? kOk : kFault);
    }
    report["lemma_checks"] = checks_json(checks);
    return emit(out, report, kBudget);
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
    std::string path;
    std::string schedule_path;
    std::string exact_target;
    std::string atmost_target;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const io::AnyInstance any = load_instance(a.path);
    const RestrictedInstance inst = io::restricted_view(any);
    const Schedule sched = io::parse_schedule(io::parse_json(io::read_file(a.schedule_path)));
    if (!a.exact_target.empty() && !a.atmost_target.empty()) {
        throw ParamError("--exact and --atmost are mutually exclusive");
    }
    std::optional<Integer> target;
    TargetMode mode = TargetMode::AtMost;
    if (!a.exact_target.empty()) {
        target = integer_flag("exact", a.exact_target);
        mode = TargetMode::Exact;
    } else if (!a.atmost_target.empty()) {
        target = integer_flag("atmost", a.atmost_target);
    }
    const ValidationReport v = validate(inst, sched, target, mode);
    const std::vector<Check> checks{validation_check("validate", v)};

    Json report;
    report["command"] = "verify";
    report["instance_digest"] = io::instance_digest(any);
    report["mode"] = target ? (mode == TargetMode::Exact ? "exact" : "atmost") : "eligibility";
    if (target) report["target"] = io::integer_json(*target);
    report["valid"] = v.ok();
    report["loads"] = loads_json(v.loads);
    Json violations = Json::array();
    for (const Violation& viol : v.violations) violations.push_back(viol.describe());
    report["violations"] = std::move(violations);
    report["lemma_checks"] = checks_json(checks);
    report["schedule"] = sched.assignment;
    return emit(out, report, v.ok() ? kOk : kShape);
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
    std::string reduction;
    std::string formula_path;
    std::string out_path;
    std::string schedule_out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    const auto kind = gadgets::parse_kind(a.reduction);
    if (!kind) throw ParamError("--reduction must be one of simple|rar3|rar2|rai|lrs3ra");
    const sat::SatStarFormula formula = load_formula(a.formula_path);
    const gadgets::GadgetInstance g = gadgets::reduce(*kind, formula);
    const io::AnyInstance any = g.instance;

    std::vector<Check> checks;
    const Integer total = g.total_size();
    const Integer mass = g.target * g.machine_count();
    checks.push_back({"mass_identity", total == mass, 1,
                      total == mass ? "" : total.get_str() + " != " + mass.get_str()});

    io::write_file(a.out_path, io::serialize_instance(any).dump(2) + "\n");
    Json names;
    names["reduction"] = gadgets::to_string(*kind);
    names["target"] = io::integer_json(g.target);
    names["machines"] = g.machine_names;
    names["jobs"] = g.job_names;
    const std::string names_path = a.out_path + ".names.json";
    io::write_file(names_path, names.dump(2) + "\n");

    Json report;
    report["command"] = "gen";
    report["instance_digest"] = io::instance_digest(any);
    report["reduction"] = gadgets::to_string(*kind);
    report["format"] = io::format_name(any);
    report["target"] = io::integer_json(g.target);
    report["machines"] = g.machine_count();
    report["jobs"] = g.job_count();
    report["total_size"] = io::integer_json(total);
    report["names_file"] = names_path;

    if (!a.schedule_out.empty()) {
        if (formula.variable_count > sat::kBruteForceLimit) {
            throw ParamError("--schedule-out needs brute force over at most " +
                             std::to_string(sat::kBruteForceLimit) + " variables");
        }
        const auto assignment = sat::sat_brute_force(formula);
        report["satisfiable"] = assignment.has_value();
        if (assignment) {
            const Schedule sched = gadgets::schedule_from_assignment(g, formula, *assignment);
            checks.push_back(validation_check("constructive_schedule_exact",
                                              validate(g.restricted(), sched, g.target, TargetMode::Exact)));
            Json bits = Json::array();
            for (bool b : *assignment) bits.push_back(b);
            report["assignment"] = std::move(bits);
            io::write_file(a.schedule_out, io::serialize_schedule(sched).dump(2) + "\n");
            report["schedule_file"] = a.schedule_out;
        }
    }
    report["lemma_checks"] = checks_json(checks);
    return emit(out, report, all_passed(checks) ? kOk : kFault);
}

// ---- lrs3-check ----------------------------------------------------------

struct Lrs3Args {
    std::string formula_path;
    std::string delta = "1/2";
    std::string cap = "8";
    std::uint64_t seed = 20240611;
    std::size_t distant = 3;
};

int cmd_lrs3(const Lrs3Args& a, std::ostream& out) {
    const Rational delta = rational_flag("delta", a.delta);
    const Rational cap = rational_flag("cap", a.cap);
    const sat::SatStarFormula formula = load_formula(a.formula_path);
    lrs3::Lrs3Numeric num = [&] {
        try {
            return lrs3::build_numeric(formula, delta, cap);
        } catch (const InvalidInstance&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ParamError(e.what());
        }
    }();
    const lrs3::Lrs3SweepStats st = lrs3::lrs3_sweep(num, a.seed, a.distant);

    std::vector<Check> checks;
    checks.push_back({"trichotomy_matches_eligibility", st.mismatches == 0 && st.faults == 0, st.pairs,
                      st.ok() || st.examples.empty() ? "" : st.examples.front()});
    checks.push_back({"shortcut_agrees_with_full_evaluation", st.shortcut_disagreements == 0, st.full_evaluations, ""});

    // Closed forms for TJob(0) on its truth machines and CJob(0,1) on CMach(0,1).
    const Rational& N = num.base;
    auto spot = [&](const std::string& job, const std::string& machine, const Rational& expected) {
        const Rational got = lrs3::lrs3_processing_time(num, num.gadget.job(job), num.gadget.machine(machine));
        checks.push_back({"spot " + job + " on " + machine, got == expected, 1,
                          got == expected ? "" : got.get_str() + " != " + expected.get_str()});
    };
    spot("TJob(0)", "TMach(0,0)", 2 / (N * N * N * N) + 2);
    spot("TJob(0)", "TMach(0,1)", 2 + 2 / N);
    const long phi01 = 3 - formula.clauses[0].kind;
    spot("CJob(0,1)", "CMach(0,1)", num.eps / (N * N) + phi01);

    Json table;
    table["pairs"] = st.pairs;
    table["full_evaluations"] = st.full_evaluations;
    table["shortcut_certified"] = st.shortcut_certified;
    table["shortcut_fallbacks"] = st.shortcut_fallbacks;
    table["eligible"] = st.eligible;
    table["blocked"] = st.blocked;
    table["mismatches"] = st.mismatches;
    table["faults"] = st.faults;
    table["shortcut_disagreements"] = st.shortcut_disagreements;

    Json report;
    report["command"] = "lrs3-check";
    report["instance_digest"] = io::sha256_hex(sat::to_text(formula));
    report["delta"] = io::rational_text(num.delta);
    report["cap"] = io::rational_text(num.cap);
    report["eps"] = io::rational_text(num.eps);
    report["base_N"] = io::rational_text(num.base);
    report["big_c"] = num.big_c;
    report["k"] = num.k;
    report["machines"] = num.machine_speed.size();
    report["jobs"] = num.job_size.size();
    report["seed"] = a.seed;
    report["sampled_distant_blocks"] = a.distant;
    report["table"] = std::move(table);
    report["failures"] = st.examples;
    report["lemma_checks"] = checks_json(checks);
    return emit(out, report, all_passed(checks) ? kOk : kFault);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interval-restricted scheduling: LP rounding, LFF, exact search and reduction gadgets"};
    app.footer(kExitHelp);
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "LP rounding with binary search on T (rai or interval restricted file)");
    s->add_option("instance", solve.path, "instance JSON file")->required();
    s->add_option("--gamma", solve.gamma, "makespan slack as a/b (default 1/24)");
    s->add_option("--xi", solve.xi, "large/huge split as a/b (default 1/24)");
    s->add_flag("--trace", solve.trace, "include the rounding trace");

    std::string lff_path;
    auto* l = app.add_subcommand("lff", "least flexible first and its lower bound L");
    l->add_option("instance", lff_path, "instance JSON file")->required();

    OptArgs opt;
    auto* o = app.add_subcommand("opt", "exact optimum by branch and bound");
    o->add_option("instance", opt.path, "instance JSON file")->required();
    o->add_option("--objective", opt.objective, "makespan or minload");
    o->add_option("--nodes", opt.nodes, "node budget");
    o->add_option("--seconds", opt.seconds, "time budget in seconds");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "check a schedule file against an instance");
    v->add_option("instance", verify.path, "instance JSON file")->required();
    v->add_option("schedule", verify.schedule_path, "schedule JSON file")->required();
    v->add_option("--exact", verify.exact_target, "every machine load must equal T");
    v->add_option("--atmost", verify.atmost_target, "every machine load must be at most T");

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "build a reduction gadget from a 3-SAT* formula file");
    g->add_option("--reduction", gen.reduction, "simple|rar3|rar2|rai|lrs3ra")->required();
    g->add_option("formula", gen.formula_path, "formula file, one `k: l1 l2 l3` clause per line")->required();
    g->add_option("--out", gen.out_path, "instance output path (names go to <out>.names.json)")->required();
    g->add_option("--schedule-out", gen.schedule_out, "write the constructive T-schedule of a satisfying assignment");

    Lrs3Args lrs;
    auto* c = app.add_subcommand("lrs3-check", "exact rank-three size check of the lrs3ra gadget");
    c->add_option("formula", lrs.formula_path, "formula file")->required();
    c->add_option("--delta", lrs.delta, "delta in (0,1] as a/b (default 1/2)");
    c->add_option("--cap", lrs.cap, "K >= 1 as a/b (default 8)");
    c->add_option("--seed", lrs.seed, "seed for the sampled distant blocks");
    c->add_option("--distant", lrs.distant, "distant blocks evaluated exactly per job (default 3)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kParse;
    }

    try {
        if (*s) return cmd_solve(solve, out);
        if (*l) return cmd_lff(lff_path, out);
        if (*o) return cmd_opt(opt, out);
        if (*v) return cmd_verify(verify, out);
        if (*g) return cmd_gen(gen, out);
        if (*c) return cmd_lrs3(lrs, out);
    } catch (const io::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const io::IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kParse;
    } catch (const sat::FormulaError& e) {
        err << "formula error: " << e.what() << '\n';
        return kParse;
    } catch (const InvalidInstance& e) {
        err << "invalid instance: " << e.what() << '\n';
        return kShape;
    } catch (const ShapeError& e) {
        err << "shape error: " << e.what() << '\n';
        return kShape;
    } catch (const ParamError& e) {
        err << "parameter error: " << e.what() << '\n';
        return kParams;
    } catch (const InvariantFault& e) {
        err << "invariant fault: " << e.what() << '\n';
        return kFault;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFault;
    }
    return kParse;
}

}  // namespace intsched::cli
