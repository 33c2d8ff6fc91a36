#include "hrc/stability.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace hrc {

std::vector<int> instance_capacities(const HrcInstance &inst)
{
    std::vector<int> q(inst.hospitals.size());
    for (std::size_t h = 0; h < q.size(); ++h)
        q[h] = inst.hospitals[h].capacity;
    return q;
}

void check_feasible(const HrcInstance &inst, const InstanceIndex &index, const HrcMatching &m,
                    const std::vector<int> &capacity)
{
    std::vector<std::string> issues;
    int nh = static_cast<int>(inst.hospitals.size());
    if (m.assignment.size() != inst.doctors.size())
        throw InfeasibleMatching({"assignment covers " + std::to_string(m.assignment.size()) + " of " +
                                  std::to_string(inst.doctors.size()) + " doctors"});
    if (capacity.size() != inst.hospitals.size())
        throw InfeasibleMatching({"capacity vector has the wrong length"});
    std::vector<int> load(nh, 0);
    for (std::size_t d = 0; d < inst.doctors.size(); ++d) {
        int h = m.assignment[d];
        if (h == kNone)
            continue;
        if (h < 0 || h >= nh) {
            issues.push_back("doctor " + inst.doctors[d].name + " assigned to an unknown hospital");
            continue;
        }
        ++load[h];
        if (inst.is_single(static_cast<int>(d)) && !index.accepts(static_cast<int>(d), h))
            issues.push_back("single " + inst.doctors[d].name + " assigned to unacceptable " + inst.hospitals[h].name);
    }
    for (std::size_t c = 0; c < inst.couples.size(); ++c) {
        HospitalPair p = m.pair_of(inst, static_cast<int>(c));
        if (p.first == kNone && p.second == kNone)
            continue;
        if (index.pair_rank(static_cast<int>(c), p) == kNone) {
            const auto &mem = inst.couples[c].members;
            issues.push_back("couple " + inst.doctors[mem[0]].name + "," + inst.doctors[mem[1]].name +
                             " assigned to a pair it does not list");
        }
    }
    for (int h = 0; h < nh; ++h) {
        if (capacity[h] < 0)
            issues.push_back("hospital " + inst.hospitals[h].name + " has negative capacity");
        if (load[h] > capacity[h])
            issues.push_back("hospital " + inst.hospitals[h].name + " holds " + std::to_string(load[h]) +
                             " doctors, capacity " + std::to_string(capacity[h]));
    }
    if (!issues.empty())
        throw InfeasibleMatching(std::move(issues));
}

namespace {

constexpr int kNoRank = std::numeric_limits<int>::min();

// Occupancy of a hospital: size and the two worst occupants with their ranks.
struct Occupancy {
    int count = 0;
    int worst = kNone, worst_rank = kNoRank;
    int second = kNone, second_rank = kNoRank;

    void add(int d, int r)
    {
        ++count;
        if (r > worst_rank) {
            second = worst;
            second_rank = worst_rank;
            worst = d;
            worst_rank = r;
        }
        else if (r > second_rank) {
            second = d;
            second_rank = r;
        }
    }
};

}  // namespace

std::vector<BlockingRecord> hrc_blocking_pairs(const HrcInstance &inst, const InstanceIndex &index,
                                               const HrcMatching &m, const std::vector<int> &capacity)
{
    check_feasible(inst, index, m, capacity);
    std::vector<Occupancy> occ(inst.hospitals.size());
    for (std::size_t d = 0; d < inst.doctors.size(); ++d) {
        int h = m.assignment[d];
        if (h != kNone)
            occ[h].add(static_cast<int>(d), index.rank(h, static_cast<int>(d)));
    }
    auto undersubscribed = [&](int h) { return h == kNone || occ[h].count < capacity[h]; };
    // Some occupant of h other than excluded ranks below d.
    auto beats = [&](int h, int d, int excluded) {
        const Occupancy &o = occ[h];
        int r = index.rank(h, d);
        if (r == kNone)
            return false;
        int worst_rank = o.worst != excluded ? o.worst_rank : o.second_rank;
        return worst_rank != kNoRank && r < worst_rank;
    };

    std::vector<BlockingRecord> out;
    for (std::size_t di = 0; di < inst.doctors.size(); ++di) {
        int d = static_cast<int>(di);
        if (!inst.is_single(d))
            continue;
        int current = m.assignment[d];
        for (int h : inst.doctors[d].prefs) {
            if (h == current)
                break;
            if (undersubscribed(h) || beats(h, d, kNone))
                out.push_back({d, kNone, {h, kNone}, "1"});
        }
    }
    for (std::size_t ci = 0; ci < inst.couples.size(); ++ci) {
        int c = static_cast<int>(ci);
        const auto &couple = inst.couples[c];
        int c1 = couple.members[0], c2 = couple.members[1];
        int m1 = m.assignment[c1], m2 = m.assignment[c2];
        HospitalPair current{m1, m2};
        for (HospitalPair p : couple.prefs) {
            if (p == current)
                break;
            int hj = p.first, hk = p.second;
            const char *label = nullptr;
            if (hj == m1 || hk == m2) {
                if (hj == m1 && (undersubscribed(hk) || beats(hk, c2, c1)))
                    label = "2a";
                else if (hk == m2 && (undersubscribed(hj) || beats(hj, c1, c2)))
                    label = "2b";
            }
            else if (hj != hk) {
                if ((undersubscribed(hj) || beats(hj, c1, kNone)) && (undersubscribed(hk) || beats(hk, c2, kNone)))
                    label = "3a";
            }
            else {
                const Occupancy &o = occ[hj];
                int free = capacity[hj] - o.count;
                int r1 = index.rank(hj, c1), r2 = index.rank(hj, c2);
                bool w1 = o.worst_rank != kNoRank;
                bool w2 = o.second_rank != kNoRank;
                if (free >= 2)
                    label = "3b";
                else if (free == 1 && w1 && (r1 < o.worst_rank || r2 < o.worst_rank))
                    label = "3c";
                else if (free == 0 && w1 && r1 < o.worst_rank && r2 < o.worst_rank && w2 &&
                         (r1 < o.second_rank || r2 < o.second_rank))
                    label = "3d";
            }
            if (label)
                out.push_back({kNone, c, p, label});
        }
    }
    return out;
}

std::vector<BlockingRecord> hrc_blocking_pairs(const HrcInstance &inst, const HrcMatching &m)
{
    InstanceIndex index(inst);
    return hrc_blocking_pairs(inst, index, m, instance_capacities(inst));
}

std::string format_blocking(const HrcInstance &inst, const BlockingRecord &r)
{
    auto hname = [&](int h) { return h == kNone ? std::string("-") : inst.hospitals[h].name; };
    if (r.doctor != kNone)
        return "block single " + inst.doctors[r.doctor].name + ' ' + hname(r.pair.first) + ' ' + r.label;
    const auto &mem = inst.couples[r.couple].members;
    return "block couple " + inst.doctors[mem[0]].name + ' ' + inst.doctors[mem[1]].name + ' ' + hname(r.pair.first) +
           ' ' + hname(r.pair.second) + ' ' + r.label;
}

std::vector<int> sf_stability_check(const SfInstance &g, const HalfMatching &m)
{
    int n = static_cast<int>(g.node_count());
    if (m.halves.size() != g.edge_count())
        throw InfeasibleMatching({"weight vector has the wrong length"});
    std::vector<int> load(n, 0);
    std::vector<std::string> issues;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (m.halves[e] > 2)
            issues.push_back("edge " + std::to_string(e) + " has a weight outside {0, 1/2, 1}");
        load[g.edges[e][0]] += m.halves[e];
        load[g.edges[e][1]] += m.halves[e];
    }
    for (int v = 0; v < n; ++v)
        if (load[v] > 2 * g.capacity[v])
            issues.push_back("node " + std::to_string(v) + " exceeds its capacity");
    if (!issues.empty())
        throw InfeasibleMatching(std::move(issues));

    auto ranks = edge_ranks(g);
    std::vector<int> worst(n, -1);  // rank of the worst positive edge
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (m.halves[e] > 0)
            for (int s = 0; s < 2; ++s)
                worst[g.edges[e][s]] = std::max(worst[g.edges[e][s]], ranks[e][s]);
    std::vector<int> out;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (m.halves[e] == 2)
            continue;
        bool dominated = false;
        for (int s = 0; s < 2 && !dominated; ++s) {
            int x = g.edges[e][s];
            dominated = load[x] == 2 * g.capacity[x] && worst[x] <= ranks[e][s];
        }
        if (!dominated)
            out.push_back(static_cast<int>(e));
    }
    return out;
}

std::vector<int> multigraph_blocking_edges(const MultigraphInstance &g, const std::vector<int> &matching)
{
    int n = static_cast<int>(g.node_names.size());
    std::vector<char> in(g.edges.size(), 0);
    std::vector<int> load(n, 0);
    std::vector<std::string> issues;
    for (int e : matching) {
        if (e < 0 || e >= static_cast<int>(g.edges.size())) {
            issues.push_back("unknown edge in matching");
            continue;
        }
        if (in[e]) {
            issues.push_back("edge " + g.edge_names[e] + " listed twice");
            continue;
        }
        in[e] = 1;
        load[g.edges[e][0]] += 1;
        load[g.edges[e][1]] += 1;
    }
    for (int v = 0; v < n; ++v)
        if (load[v] > g.capacity[v])
            issues.push_back("node " + g.node_names[v] + " exceeds its capacity");
    if (!issues.empty())
        throw InfeasibleMatching(std::move(issues));

    auto rank_at = [&](int v, int e) {
        const auto &r = g.ranking[v];
        return static_cast<int>(std::find(r.begin(), r.end(), e) - r.begin());
    };
    // Matched edges at v ranked below e: count, and whether one of them is a loop.
    auto worse = [&](int v, int e, bool &loop) {
        int re = rank_at(v, e), count = 0;
        loop = false;
        for (std::size_t i = re + 1; i < g.ranking[v].size(); ++i) {
            int f = g.ranking[v][i];
            if (in[f]) {
                ++count;
                if (g.is_loop(f))
                    loop = true;
            }
        }
        return count;
    };

    std::vector<int> out;
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        int e = static_cast<int>(ei);
        if (in[e])
            continue;
        auto [u, v] = g.edges[e];
        bool loop = false;
        bool blocks;
        if (u != v) {
            blocks = true;
            for (int x : {u, v})
                if (!(load[x] < g.capacity[x] || worse(x, e, loop) > 0))
                    blocks = false;
        }
        else {
            int free = g.capacity[u] - load[u];
            int w = worse(u, e, loop);
            blocks = free >= 2 || (free >= 1 && w >= 1) || loop || w >= 2;
        }
        if (blocks)
            out.push_back(e);
    }
    return out;
}

}  // namespace hrc
