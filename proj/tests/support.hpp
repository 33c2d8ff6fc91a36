#pragma once

// Brute-force reference implementations and random instance builders shared by the tests.
// Nothing here calls into the solvers; stability is re-derived from the definitions.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hrc/model.hpp"
#include "hrc/sf.hpp"

namespace support {

using hrc::kNone;

inline hrc::SfInstance random_sf(std::mt19937_64 &rng, int max_nodes, int max_cap, double density,
                                 int min_cap = 1)
{
    std::uniform_int_distribution<int> nd(2, max_nodes), cd(min_cap, max_cap);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    hrc::SfInstance g;
    int n = nd(rng);
    for (int v = 0; v < n; ++v)
        g.add_node("v" + std::to_string(v), cd(rng));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < density) {
                int e = g.add_edge(u, v);
                g.ranking[u].push_back(e);
                g.ranking[v].push_back(e);
            }
    for (auto &r : g.ranking)
        std::shuffle(r.begin(), r.end(), rng);
    return g;
}

inline int rank_at(const hrc::SfInstance &g, int v, int e)
{
    const auto &r = g.ranking[v];
    return static_cast<int>(std::find(r.begin(), r.end(), e) - r.begin());
}

// Half-integral stability straight from the definition: every edge below weight 1 has an endpoint
// whose capacity is used up by edges it likes at least as much.
inline bool sf_half_stable(const hrc::SfInstance &g, const std::vector<int> &w)
{
    int n = static_cast<int>(g.node_count());
    std::vector<int> load(n, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        load[g.edges[e][0]] += w[e];
        load[g.edges[e][1]] += w[e];
    }
    for (int v = 0; v < n; ++v)
        if (load[v] > 2 * g.capacity[v])
            return false;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (w[e] == 2)
            continue;
        bool dominated = false;
        for (int x : g.edges[e]) {
            if (load[x] < 2 * g.capacity[x])
                continue;
            bool all_better = true;
            for (int f : g.ranking[x])
                if (w[f] > 0 && rank_at(g, x, f) > rank_at(g, x, static_cast<int>(e)))
                    all_better = false;
            if (all_better)
                dominated = true;
        }
        if (!dominated)
            return false;
    }
    return true;
}

// All capacity-respecting weight vectors over {0..top} per edge (top 2 = integral, halves otherwise).
inline void for_each_weighting(const hrc::SfInstance &g, int step, const std::function<void(const std::vector<int> &)> &f)
{
    std::vector<int> w(g.edges.size(), 0), load(g.node_count(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == w.size()) {
            f(w);
            return;
        }
        auto [u, v] = g.edges[i];
        for (int x = 0; x <= 2; x += step) {
            if (load[u] + x > 2 * g.capacity[u] || load[v] + x > 2 * g.capacity[v])
                break;
            w[i] = x;
            load[u] += x;
            load[v] += x;
            go(i + 1);
            load[u] -= x;
            load[v] -= x;
        }
        w[i] = 0;
    };
    go(0);
}

inline std::vector<std::vector<int>> all_stable_integral(const hrc::SfInstance &g)
{
    std::vector<std::vector<int>> out;
    for_each_weighting(g, 2, [&](const std::vector<int> &w) {
        if (sf_half_stable(g, w))
            out.push_back(w);
    });
    return out;
}

inline std::vector<int> weights(const hrc::HalfMatching &m)
{
    return std::vector<int>(m.halves.begin(), m.halves.end());
}

// Observation-1 shape: every node meets 0 or 2 edges of weight 1/2.
inline bool half_edges_paired(const hrc::SfInstance &g, const hrc::HalfMatching &m)
{
    std::vector<int> c(g.node_count(), 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (m.halves[e] == 1) {
            ++c[g.edges[e][0]];
            ++c[g.edges[e][1]];
        }
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0 || x == 2; });
}

// ---- HRC ----

inline int hrank(const hrc::HrcInstance &inst, int h, int d)
{
    const auto &p = inst.hospitals[h].prefs;
    auto it = std::find(p.begin(), p.end(), d);
    return it == p.end() ? -1 : static_cast<int>(it - p.begin());
}

// Naive blocking test following the definition clause by clause; returns the labels found for
// each blocking coalition in the same order the library reports them.
inline std::vector<std::string> naive_blocking(const hrc::HrcInstance &inst, const std::vector<int> &a,
                                               const std::vector<int> &q)
{
    std::vector<std::vector<int>> occ(inst.hospitals.size());
    for (std::size_t d = 0; d < a.size(); ++d)
        if (a[d] != kNone)
            occ[a[d]].push_back(static_cast<int>(d));
    auto under = [&](int h) { return h == kNone || static_cast<int>(occ[h].size()) < q[h]; };
    auto prefers = [&](int h, int d, int r) { return hrank(inst, h, d) >= 0 && hrank(inst, h, d) < hrank(inst, h, r); };
    auto some_worse = [&](int h, int d, int skip) {
        if (h == kNone)
            return false;
        for (int r : occ[h])
            if (r != skip && prefers(h, d, r))
                return true;
        return false;
    };
    std::vector<std::string> out;
    for (std::size_t di = 0; di < inst.doctors.size(); ++di) {
        int d = static_cast<int>(di);
        if (!inst.is_single(d))
            continue;
        const auto &p = inst.doctors[d].prefs;
        auto cur = std::find(p.begin(), p.end(), a[d]);
        for (auto it = p.begin(); it != cur; ++it)
            if (under(*it) || some_worse(*it, d, kNone))
                out.push_back("single " + inst.doctors[d].name + " " + inst.hospitals[*it].name + " 1");
    }
    for (const auto &c : inst.couples) {
        int c1 = c.members[0], c2 = c.members[1];
        hrc::HospitalPair cur{a[c1], a[c2]};
        auto end = std::find(c.prefs.begin(), c.prefs.end(), cur);
        for (auto it = c.prefs.begin(); it != end; ++it) {
            int hj = it->first, hk = it->second;
            std::string label;
            if (hj == a[c1] || hk == a[c2]) {
                if (hj == a[c1] && (under(hk) || some_worse(hk, c2, c1)))
                    label = "2a";
                else if (hk == a[c2] && (under(hj) || some_worse(hj, c1, c2)))
                    label = "2b";
            }
            else if (hj != hk) {
                if ((under(hj) || some_worse(hj, c1, kNone)) && (under(hk) || some_worse(hk, c2, kNone)))
                    label = "3a";
            }
            else {
                int free = q[hj] - static_cast<int>(occ[hj].size());
                if (free >= 2)
                    label = "3b";
                else if (free == 1 && (some_worse(hj, c1, kNone) || some_worse(hj, c2, kNone)))
                    label = "3c";
                else if (free == 0) {
                    for (int rs : occ[hj])
                        for (int rt : occ[hj])
                            if (rs != rt && prefers(hj, c1, rs) && prefers(hj, c2, rt))
                                label = "3d";
                }
            }
            if (!label.empty()) {
                auto nm = [&](int h) { return h == kNone ? std::string("-") : inst.hospitals[h].name; };
                out.push_back("couple " + inst.doctors[c1].name + " " + inst.doctors[c2].name + " " + nm(hj) + " " +
                              nm(hk) + " " + label);
            }
        }
    }
    return out;
}

// Every feasible matching under q: singles over list + unassigned, couples over joint list + (-,-).
inline void for_each_matching(const hrc::HrcInstance &inst, const std::vector<int> &q,
                              const std::function<void(const std::vector<int> &)> &f)
{
    std::vector<int> a(inst.doctors.size(), kNone), load(inst.hospitals.size(), 0);
    std::vector<int> singles;
    for (std::size_t d = 0; d < inst.doctors.size(); ++d)
        if (inst.is_single(static_cast<int>(d)))
            singles.push_back(static_cast<int>(d));
    std::size_t units = singles.size() + inst.couples.size();
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == units) {
            f(a);
            return;
        }
        if (i < singles.size()) {
            int d = singles[i];
            go(i + 1);
            for (int h : inst.doctors[d].prefs)
                if (load[h] < q[h]) {
                    ++load[h];
                    a[d] = h;
                    go(i + 1);
                    a[d] = kNone;
                    --load[h];
                }
            return;
        }
        const auto &c = inst.couples[i - singles.size()];
        go(i + 1);
        for (auto p : c.prefs) {
            bool ok = true;
            if (p.first != kNone)
                ok = ok && load[p.first] < q[p.first];
            if (ok && p.first != kNone)
                ++load[p.first];
            if (ok && p.second != kNone && load[p.second] >= q[p.second]) {
                if (p.first != kNone)
                    --load[p.first];
                ok = false;
            }
            if (!ok)
                continue;
            if (p.second != kNone)
                ++load[p.second];
            a[c.members[0]] = p.first;
            a[c.members[1]] = p.second;
            go(i + 1);
            a[c.members[0]] = a[c.members[1]] = kNone;
            if (p.first != kNone)
                --load[p.first];
            if (p.second != kNone)
                --load[p.second];
        }
    };
    go(0);
}

inline std::vector<int> capacities(const hrc::HrcInstance &inst)
{
    std::vector<int> q;
    for (const auto &h : inst.hospitals)
        q.push_back(h.capacity);
    return q;
}

inline std::set<std::vector<int>> brute_stable(const hrc::HrcInstance &inst)
{
    std::set<std::vector<int>> out;
    auto q = capacities(inst);
    for_each_matching(inst, q, [&](const std::vector<int> &a) {
        if (naive_blocking(inst, a, q).empty())
            out.insert(a);
    });
    return out;
}

// ---- multigraph ----

inline bool multigraph_stable(const hrc::MultigraphInstance &g, const std::vector<char> &in)
{
    int n = static_cast<int>(g.node_names.size());
    std::vector<int> load(n, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (in[e]) {
            ++load[g.edges[e][0]];
            ++load[g.edges[e][1]];
        }
    for (int v = 0; v < n; ++v)
        if (load[v] > g.capacity[v])
            return false;
    auto pos = [&](int v, int e) {
        const auto &r = g.ranking[v];
        return std::find(r.begin(), r.end(), e) - r.begin();
    };
    auto worse_edges = [&](int v, int e) {
        std::vector<int> out;
        for (int f : g.ranking[v])
            if (in[f] && pos(v, f) > pos(v, e))
                out.push_back(f);
        return out;
    };
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        int e = static_cast<int>(ei);
        if (in[e])
            continue;
        int u = g.edges[e][0], v = g.edges[e][1];
        bool blocks = false;
        if (u != v) {
            blocks = (load[u] < g.capacity[u] || !worse_edges(u, e).empty()) &&
                     (load[v] < g.capacity[v] || !worse_edges(v, e).empty());
        }
        else {
            auto w = worse_edges(u, e);
            int free = g.capacity[u] - load[u];
            bool worse_loop = std::any_of(w.begin(), w.end(), [&](int f) { return g.edges[f][0] == g.edges[f][1]; });
            blocks = free >= 2 || (free >= 1 && !w.empty()) || worse_loop || w.size() >= 2;
        }
        if (blocks)
            return false;
    }
    return true;
}

inline std::vector<std::vector<char>> multigraph_brute(const hrc::MultigraphInstance &g)
{
    std::vector<std::vector<char>> out;
    std::size_t m = g.edges.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<char> in(m);
        for (std::size_t e = 0; e < m; ++e)
            in[e] = (mask >> e) & 1;
        if (multigraph_stable(g, in))
            out.push_back(in);
    }
    return out;
}

// ---- SMTI ----

// Rank of man u in woman w's list; the two men of a tie share rank 0.
inline int smti_rank(const hrc::SmtiInstance &s, int w, int u)
{
    const auto &p = s.woman_prefs[w];
    auto it = std::find(p.begin(), p.end(), u);
    if (it == p.end())
        return -1;
    return s.woman_tie[w] ? 0 : static_cast<int>(it - p.begin());
}

// Every complete weakly stable matching, as man -> woman.
inline std::vector<std::vector<int>> smti_complete_stable(const hrc::SmtiInstance &s)
{
    std::vector<std::vector<int>> out;
    int nm = static_cast<int>(s.men.size()), nw = static_cast<int>(s.women.size());
    if (nm != nw)
        return out;
    std::vector<int> mw(nm, kNone), wm(nw, kNone);
    std::function<void(int)> go = [&](int u) {
        if (u == nm) {
            for (int x = 0; x < nm; ++x) {
                const auto &p = s.man_prefs[x];
                for (int w : p) {
                    if (w == mw[x])
                        break;
                    if (smti_rank(s, w, x) < smti_rank(s, w, wm[w]))
                        return;
                }
            }
            out.push_back(mw);
            return;
        }
        for (int w : s.man_prefs[u])
            if (wm[w] == kNone) {
                mw[u] = w;
                wm[w] = u;
                go(u + 1);
                mw[u] = wm[w] = kNone;
            }
    };
    go(0);
    return out;
}

}  // namespace support
