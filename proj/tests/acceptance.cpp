// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hrc/cli.hpp"
#include "hrc/generators.hpp"
#include "hrc/io.hpp"
#include "hrc/oracle.hpp"
#include "hrc/reductions.hpp"
#include "hrc/stability.hpp"
#include "support.hpp"

using namespace hrc;
using Clock = std::chrono::steady_clock;

namespace {

const char *kExample = R"(hospital h 2
single d : h
couple c1 c2 : h,h
hpref h : c1 d c2
)";

const char *kTwoStable = R"(hospital h 2
couple c1 c2 : h,h
couple c3 c4 : h,h
hpref h : c1 c3 c4 c2
)";

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

// Results are printed in criterion order once every check has run.
struct Ledger {
    std::map<int, std::pair<bool, std::string>> results;

    void report(int id, bool ok, const std::string &detail) { results[id] = {ok, detail}; }

    int print() const
    {
        int failed = 0;
        for (const auto &[id, r] : results) {
            std::printf("%s %d %s\n", r.first ? "PASS" : "FAIL", id, r.second.c_str());
            failed += !r.first;
        }
        return failed;
    }
};

// Every half-integral solution seen by the run: stable and each node on 0 or 2 half edges.
struct HalfAudit {
    long long solutions = 0;
    long long bad = 0;

    void check(const SfInstance &g, const HalfMatching &m)
    {
        ++solutions;
        bool ok = false;
        try {
            ok = sf_stability_check(g, m).empty() && support::half_edges_paired(g, m);
        }
        catch (const Error &) {
            ok = false;
        }
        bad += !ok;
    }
};

std::set<std::vector<int>> as_set(const std::vector<HrcMatching> &ms)
{
    std::set<std::vector<int>> out;
    for (const auto &m : ms)
        out.insert(m.assignment);
    return out;
}

void criterion1(Ledger &ledger)
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hrc_acceptance";
    fs::create_directories(dir);
    std::string file = (dir / "example.hrc").string();
    std::ofstream(file) << kExample;

    std::ostringstream out, err;
    auto t0 = Clock::now();
    int code = cli::run({"solve", "--mode", "near", file}, out, err);
    double ms = seconds_since(t0) * 1000.0;

    HrcInstance inst = parse_hrc(kExample);
    bool ok = code == 0;
    std::size_t blocking = 0;
    MatchingFile mf;
    try {
        mf = parse_matching(inst, out.str());
        blocking = hrc_blocking_pairs(inst, InstanceIndex(inst), mf.matching, mf.capacity).size();
    }
    catch (const Error &) {
        ok = false;
    }
    ok = ok && out.str().rfind("status stable\n", 0) == 0 && mf.capacity == std::vector<int>{3} &&
         mf.matching.assignment == std::vector<int>{0, 0, 0} && blocking == 0 && ms < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "worked example: q'_h=%d, assigned to h=%d/3, blocking=%zu, %.3f ms",
                  mf.capacity.empty() ? -1 : mf.capacity[0],
                  static_cast<int>(std::count(mf.matching.assignment.begin(), mf.matching.assignment.end(), 0)),
                  blocking, ms);
    ledger.report(1, ok, buf);
}

void criterion2(Ledger &ledger, HalfAudit &audit)
{
    std::mt19937_64 rng(20001);
    int bad = 0, raised = 0, lowered = 0;
    auto t0 = Clock::now();
    for (int t = 0; t < 1000; ++t) {
        GenParams p;
        p.seed = rng();
        p.couples = static_cast<int>(rng() % 7);
        p.singles = static_cast<int>(rng() % (21 - 2 * p.couples));
        p.hospitals = 1 + static_cast<int>(rng() % 8);
        p.max_capacity = 3;
        p.max_list = std::min(4, p.hospitals);
        HrcInstance inst = gen_random(p).instance;
        SolveResult res = solve(inst, SolveMode::Near);
        audit.check(res.reduction.sf, res.sf_matching);
        bool ok = res.stable;
        for (std::size_t h = 0; h < inst.hospitals.size(); ++h) {
            int delta = res.capacity[h] - inst.hospitals[h].capacity;
            ok = ok && std::abs(delta) <= 1;
            raised += delta > 0;
            lowered += delta < 0;
        }
        try {
            ok = ok && hrc_blocking_pairs(inst, InstanceIndex(inst), res.matching, res.capacity).empty();
        }
        catch (const InfeasibleMatching &) {
            ok = false;
        }
        bad += !ok;
    }
    double s = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "near-feasible: 1000 instances, %d failures, %d raised / %d lowered capacities, %.2f s",
                  bad, raised, lowered, s);
    ledger.report(2, bad == 0 && s < 30.0, buf);
}

void criterion4_7(Ledger &ledger, HalfAudit &audit)
{
    std::mt19937_64 rng(40001);
    int disagree = 0, outside = 0, none = 0, budget = 0, rural_bad = 0, multi = 0;
    auto t0 = Clock::now();
    OracleBudget ob;
    ob.max_nodes = 2'000'000;
    ob.max_seconds = 10.0;
    int done = 0;
    for (int t = 0; done < 500; ++t) {
        GenParams p;
        p.seed = rng();
        p.singles = static_cast<int>(rng() % 5);
        p.couples = 1 + static_cast<int>(rng() % 4);
        p.hospitals = 3 + static_cast<int>(rng() % 3);
        p.max_capacity = 2;
        p.max_list = 3;
        p.types = {CoupleType::A, CoupleType::B, CoupleType::C};
        HrcInstance inst = gen_random(p).instance;
        std::vector<HrcMatching> all;
        try {
            all = enumerate_stable(inst, SIZE_MAX, ob);
        }
        catch (const BudgetExceeded &) {
            ++budget;
            continue;
        }
        ++done;
        SolveResult res = solve(inst, SolveMode::Exact);
        audit.check(res.reduction.sf, res.sf_matching);
        disagree += res.stable == all.empty();
        auto stable = as_set(all);
        if (res.stable && !stable.count(res.matching.assignment))
            ++outside;
        none += !res.stable;
        RuralReport rr = rural_report(inst, all);
        rural_bad += !rr.holds();
        multi += rr.matchings > 1;
    }
    double s = seconds_since(t0);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "exact vs oracle: 500 typed instances (%d skipped over budget), %d disagreements, %d outside the "
                  "stable set, %d with none, %.2f s",
                  budget, disagree, outside, none, s);
    ledger.report(4, disagree == 0 && outside == 0 && s < 300.0, buf);

    HrcInstance two_stable = parse_hrc(kTwoStable);
    auto rm = enumerate_stable(two_stable);
    bool two_stable_ok = rm.size() == 2 && rural_report(two_stable, rm).holds();
    if (rm.size() == 2) {
        std::set<int> d0, d1;
        std::vector<int> f0(two_stable.hospitals.size()), f1(two_stable.hospitals.size());
        for (std::size_t d = 0; d < two_stable.doctors.size(); ++d) {
            if (rm[0].assignment[d] != kNone) {
                d0.insert(static_cast<int>(d));
                ++f0[rm[0].assignment[d]];
            }
            if (rm[1].assignment[d] != kNone) {
                d1.insert(static_cast<int>(d));
                ++f1[rm[1].assignment[d]];
            }
        }
        two_stable_ok = two_stable_ok && d0 != d1 && f0 == f1;
    }
    std::snprintf(buf, sizeof buf,
                  "rural hospitals: %d/500 corpus instances violate, %d with several stable matchings; two-stable "
                  "instance %zu stable matchings, %s",
                  rural_bad, multi, rm.size(), two_stable_ok ? "different doctors, same fill" : "mismatch");
    ledger.report(7, rural_bad == 0 && two_stable_ok, buf);
}

void criterion5(Ledger &ledger, HalfAudit &audit)
{
    std::mt19937_64 rng(50001);
    int disagree = 0, exists = 0;
    for (int t = 0; t < 500; ++t) {
        SfInstance g = support::random_sf(rng, 8, 2, 0.5);
        // exhaustive edge-subset search
        std::size_t m = g.edge_count();
        bool brute = false;
        for (std::size_t mask = 0; mask < (std::size_t{1} << m) && !brute; ++mask) {
            std::vector<int> w(m);
            std::vector<int> load(g.node_count(), 0);
            bool feasible = true;
            for (std::size_t e = 0; e < m; ++e)
                if ((mask >> e) & 1) {
                    w[e] = 2;
                    feasible = feasible && ++load[g.edges[e][0]] <= g.capacity[g.edges[e][0]] &&
                               ++load[g.edges[e][1]] <= g.capacity[g.edges[e][1]];
                }
            brute = feasible && support::sf_half_stable(g, w);
        }
        audit.check(g, solve_half_integral(g));
        auto got = decide_integral(g);
        bool ok = got.has_value() == brute;
        if (got)
            ok = ok && got->integral() && sf_stability_check(g, *got).empty();
        disagree += !ok;
        exists += brute;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "integral decision: 500 SF instances, %d disagreements (%d with a stable matching)",
                  disagree, exists);
    ledger.report(5, disagree == 0, buf);
}

void criterion6(Ledger &ledger, HalfAudit &audit)
{
    std::mt19937_64 rng(60001);
    int none = 0, nonbip = 0, nondual = 0;
    for (int t = 0; t < 200; ++t) {
        GenParams p;
        p.seed = rng();
        p.singles = static_cast<int>(rng() % 10);
        p.couples = 1 + static_cast<int>(rng() % 6);
        p.hospitals = 2 + static_cast<int>(rng() % 7);
        p.max_capacity = 3;
        p.max_list = 3;
        p.dual_market = true;
        HrcInstance inst = gen_random(p).instance;
        nondual += !detect_dual_market(inst).is_dual;
        SolveResult res = solve(inst, SolveMode::Auto);
        audit.check(res.reduction.sf, res.sf_matching);
        none += !res.stable;
        nonbip += !is_bipartite(res.reduction.sf);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "dual markets: 200 instances, %d none, %d non-bipartite reductions, %d not dual", none,
                  nonbip, nondual);
    ledger.report(6, none == 0 && nonbip == 0 && nondual == 0, buf);
}

void criterion8(Ledger &ledger)
{
    std::mt19937_64 rng(80001);
    int disagree = 0, exists = 0, loops = 0, parallels = 0;
    for (int t = 0; t < 200; ++t) {
        MultigraphInstance g;
        int n = 1 + static_cast<int>(rng() % 6), m = static_cast<int>(rng() % 9);
        for (int v = 0; v < n; ++v)
            g.add_node("v" + std::to_string(v), 1 + static_cast<int>(rng() % 3));
        std::set<std::pair<int, int>> seen;
        for (int e = 0; e < m; ++e) {
            int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
            loops += u == v;
            parallels += !seen.insert({std::min(u, v), std::max(u, v)}).second;
            int id = g.add_edge("e" + std::to_string(e), u, v);
            g.ranking[u].push_back(id);
            if (u != v)
                g.ranking[v].push_back(id);
        }
        for (auto &r : g.ranking)
            std::shuffle(r.begin(), r.end(), rng);
        auto brute = support::multigraph_brute(g);
        auto got = solve_multigraph(g);
        bool ok = got.has_value() == !brute.empty();
        if (got) {
            std::vector<char> in(m, 0);
            for (int e : *got)
                in[e] = 1;
            ok = ok && std::find(brute.begin(), brute.end(), in) != brute.end();
        }
        disagree += !ok;
        exists += !brute.empty();
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "multigraph: 200 instances (%d loops, %d parallel edges), %d disagreements, %d with a stable b-matching",
                  loops, parallels, disagree, exists);
    ledger.report(8, disagree == 0 && loops > 0 && parallels > 0, buf);
}

void criterion9(Ledger &ledger)
{
    // (a) dual-market construction from satisfiable formulas
    int formulas = 0, bad_a = 0;
    for (std::uint64_t seed = 1; formulas < 20 && seed < 10000; ++seed) {
        int n = 3 * (1 + static_cast<int>(seed % 3));
        CnfFormula f = gen_22e3sat(seed, n);
        auto value = satisfying_assignment(f);
        if (!value)
            continue;
        ++formulas;
        SatConstruction con = gen_dual_market_from_sat(f, true, true);
        const HrcInstance &inst = con.generated.instance;
        HrcMatching w = sat_witness(f, con, *value);
        bool ok = lint_sat_construction(con).empty() && detect_dual_market(inst).is_dual;
        for (int d : con.core_doctors)
            ok = ok && w.assignment[d] != kNone;
        try {
            ok = ok && hrc_blocking_pairs(inst, w).empty();
        }
        catch (const InfeasibleMatching &) {
            ok = false;
        }
        bad_a += !ok;
    }

    // (b) smti construction against direct enumeration of the core
    int cores = 0, bad_b = 0, yes_b = 0, skipped_b = 0;
    OracleBudget ob;
    ob.max_nodes = 5'000'000;
    ob.max_seconds = 20.0;
    for (std::uint64_t seed = 1; cores < 20 && seed < 1000; ++seed) {
        int men = 2 + static_cast<int>(seed % 2);
        SmtiInstance s = gen_smti(seed * 7919, men, men, 0.8);
        bool core = !support::smti_complete_stable(s).empty();
        SmtiConstruction con = gen_from_smti(s);
        bool stable;
        try {
            stable = !enumerate_stable(con.generated.instance, 1, ob).empty();
        }
        catch (const BudgetExceeded &) {
            ++skipped_b;
            continue;
        }
        ++cores;
        bad_b += core != stable;
        yes_b += core;
    }

    // (c) min-bp construction with B = 3
    int minbp = 0, bad_c = 0, yes_c = 0, skipped_c = 0;
    for (std::uint64_t seed = 1; minbp < 10 && seed < 1000; ++seed) {
        int men = 1 + static_cast<int>(seed % 2);
        SmtiInstance s = gen_smti(seed * 104729, men, men, 0.6);
        bool core = !support::smti_complete_stable(s).empty();
        if ((core ? yes_c : minbp - yes_c) >= 5)
            continue;
        MinBpConstruction con = gen_minbp_from_smti(s, 1, 3, seed);
        MinBp r;
        try {
            r = min_bp(con.generated.instance, ob);
        }
        catch (const BudgetExceeded &) {
            ++skipped_c;
            continue;
        }
        ++minbp;
        bad_c += core ? r.value > con.tie_women : r.value < 3;
        yes_c += core;
    }
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "constructions: (a) %d formulas, %d failing; (b) %d smti cores (%d with a complete stable matching, "
                  "%d over budget), %d mismatches; (c) %d min-bp cores (%d yes, %d over budget), %d outside the gap",
                  formulas, bad_a, cores, yes_b, skipped_b, bad_b, minbp, yes_c, skipped_c, bad_c);
    bool ok = formulas == 20 && bad_a == 0 && cores == 20 && bad_b == 0 && yes_b > 0 && yes_b < cores && minbp == 10 &&
              bad_c == 0 && yes_c > 0 && yes_c < minbp;
    ledger.report(9, ok, buf);
}

double time_near(const HrcInstance &inst, HalfAudit &audit)
{
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
        auto t0 = Clock::now();
        SolveResult res = solve(inst, SolveMode::Near);
        best = std::min(best, seconds_since(t0));
        if (rep == 0)
            audit.check(res.reduction.sf, res.sf_matching);
    }
    return best;
}

void criterion10(Ledger &ledger, HalfAudit &audit)
{
    GenParams p;
    p.seed = 100001;
    p.singles = 9000;
    p.couples = 500;
    p.hospitals = 1000;
    p.min_capacity = 5;
    p.max_capacity = 15;
    p.min_list = 10;
    p.max_list = 12;
    HrcInstance small = gen_random(p).instance;
    p.min_list = 20;
    p.max_list = 24;
    HrcInstance large = gen_random(p).instance;
    double t1 = time_near(small, audit);
    double t2 = time_near(large, audit);
    double ratio = t2 / t1;
    char buf[200];
    std::snprintf(buf, sizeof buf, "performance: m=%zu in %.3f s, m=%zu in %.3f s, ratio %.2f",
                  small.preference_length(), t1, large.preference_length(), t2, ratio);
    bool ok = small.doctors.size() == 10000 && small.preference_length() >= 100000 && t1 < 2.0 && ratio < 2.5;
    ledger.report(10, ok, buf);
}

}  // namespace

int main()
{
    Ledger ledger;
    HalfAudit audit;
    criterion1(ledger);
    criterion2(ledger, audit);
    criterion4_7(ledger, audit);
    criterion5(ledger, audit);
    criterion6(ledger, audit);
    criterion8(ledger);
    criterion9(ledger);
    criterion10(ledger, audit);
    char buf[160];
    std::snprintf(buf, sizeof buf, "half-integral invariant: %lld solutions checked, %lld violations", audit.solutions,
                  audit.bad);
    ledger.report(3, audit.bad == 0 && audit.solutions > 0, buf);
    return ledger.print() == 0 ? 0 : 1;
}
