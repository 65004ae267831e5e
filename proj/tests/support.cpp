#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace testsupport {

using namespace intsched;

RaiInstance random_rai(std::mt19937_64& rng, int min_machines, int max_machines, int max_jobs, int max_size) {
    std::uniform_int_distribution<int> machines_dist(min_machines, max_machines);
    const int m = machines_dist(rng);
    std::uniform_int_distribution<int> jobs_dist(1, max_jobs);
    std::uniform_int_distribution<int> size_dist(1, max_size);
    std::uniform_int_distribution<int> machine_dist(0, m - 1);
    const int n = jobs_dist(rng);
    std::vector<RaiJob> jobs;
    for (int j = 0; j < n; ++j) {
        int a = machine_dist(rng);
        int b = machine_dist(rng);
        if (a > b) std::swap(a, b);
        jobs.push_back({static_cast<JobId>(j), Integer(size_dist(rng)), static_cast<MachineId>(a),
                        static_cast<MachineId>(b)});
    }
    return RaiInstance(static_cast<std::size_t>(m), std::move(jobs));
}

std::vector<RaiInstance> corpus(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<RaiInstance> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(random_rai(rng));
    return out;
}

bool oracle_feasible(const RestrictedInstance& inst, const Integer& target, LoadRule rule) {
    const std::size_t n = inst.job_count();
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<Integer> sum(full + 1, Integer(0));
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        sum[mask] = sum[mask & (mask - 1)] + inst.job(low).size;
    }
    auto ok = [&](const Integer& load) {
        switch (rule) {
            case LoadRule::AtMost: return load <= target;
            case LoadRule::AtLeast: return load >= target;
            case LoadRule::Exactly: return load == target;
        }
        return false;
    };
    std::vector<char> reach(full + 1, 0);
    reach[0] = 1;
    for (MachineId i = 0; i < inst.machine_count(); ++i) {
        std::size_t elig = 0;
        for (JobId j = 0; j < n; ++j) {
            if (inst.job(j).eligible_on(i)) elig |= std::size_t{1} << j;
        }
        std::vector<char> next(full + 1, 0);
        for (std::size_t mask = 0; mask <= full; ++mask) {
            if (!reach[mask]) continue;
            const std::size_t free = ~mask & full & elig;
            for (std::size_t sub = free;; sub = (sub - 1) & free) {
                if (ok(sum[sub])) next[mask | sub] = 1;
                if (sub == 0) break;
            }
        }
        reach.swap(next);
    }
    return reach[full] != 0;
}

Integer oracle_makespan(const RestrictedInstance& inst) {
    Integer lo = 0;
    Integer hi = 0;
    for (const auto& job : inst.jobs()) hi += job.size;
    while (lo < hi) {
        const Integer mid = (lo + hi) / 2;
        if (oracle_feasible(inst, mid, LoadRule::AtMost)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

Integer oracle_min_load(const RestrictedInstance& inst) {
    Integer lo = 0;
    Integer hi = 0;
    for (const auto& job : inst.jobs()) hi += job.size;
    while (lo < hi) {
        const Integer mid = (lo + hi + 1) / 2;
        if (oracle_feasible(inst, mid, LoadRule::AtLeast)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

Rational oracle_lower_bound(const RaiInstance& inst) {
    Rational best = 0;
    for (const auto& job : inst.jobs()) best = std::max(best, Rational(job.size));
    for (MachineId l = 0; l < inst.machine_count(); ++l) {
        for (MachineId r = l; r < inst.machine_count(); ++r) {
            Integer load = 0;
            for (const auto& job : inst.jobs()) {
                if (l <= job.first && job.last <= r) load += job.size;
            }
            Rational avg(load, Integer(static_cast<unsigned long>(r - l + 1)));
            avg.canonicalize();
            best = std::max(best, avg);
        }
    }
    return best;
}

Integer ceil_of(const Rational& value) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

std::filesystem::path scratch_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("intsched_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<sat::SatStarFormula> find_unsatisfiable(std::size_t n) {
    // Occurrence codes 2v (positive) and 2v+1 (negative), each twice.
    std::vector<int> codes;
    for (std::size_t v = 0; v < 2 * n; ++v) codes.insert(codes.end(), {static_cast<int>(v), static_cast<int>(v)});
    std::sort(codes.begin(), codes.end());
    const std::size_t clauses = codes.size() / 3;
    do {
        sat::SatStarFormula f;
        f.variable_count = n;
        bool distinct = true;
        for (std::size_t i = 0; i < clauses && distinct; ++i) {
            sat::Clause c;
            c.kind = i < clauses / 2 ? 1 : 2;
            for (std::size_t s = 0; s < 3; ++s) {
                const int code = codes[3 * i + s];
                c.literals[s] = {static_cast<std::size_t>(code / 2), code % 2 == 0};
            }
            // Three distinct variables per clause, literals listed in increasing code order.
            distinct = c.literals[0].var < c.literals[1].var && c.literals[1].var < c.literals[2].var;
            f.clauses.push_back(c);
        }
        if (!distinct) continue;
        bool satisfiable = false;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n) && !satisfiable; ++bits) {
            satisfiable = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const sat::Clause& c) {
                int truths = 0;
                for (const sat::Literal& lit : c.literals) truths += (((bits >> lit.var) & 1U) == 1U) == lit.positive;
                return truths == c.kind;
            });
        }
        if (!satisfiable) return f;
    } while (std::next_permutation(codes.begin(), codes.end()));
    return std::nullopt;
}

}  // namespace testsupport
