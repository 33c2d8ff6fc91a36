#include "hrc/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace hrc {

int CoupleProfile::rank(int slot, int h) const
{
    const auto &o = order[slot];
    auto it = std::find(o.begin(), o.end(), h);
    return it == o.end() ? kNone : static_cast<int>(it - o.begin());
}

namespace {

// Orders slot's hospitals (plus kNone) consistently with every pair of entries that differ
// only in that slot. Returns false on a cycle.
bool member_order(const HrcInstance &inst, const Couple &couple, int slot, std::vector<int> &out)
{
    int other = 1 - slot;
    std::vector<int> nodes;
    std::unordered_map<int, int> id;
    for (auto p : couple.prefs)
        if (id.emplace(p[slot], static_cast<int>(nodes.size())).second)
            nodes.push_back(p[slot]);

    std::vector<std::vector<int>> succ(nodes.size());
    std::vector<int> indeg(nodes.size(), 0);
    std::unordered_map<int, int> last_in_group;
    for (auto p : couple.prefs) {
        auto it = last_in_group.find(p[other]);
        if (it != last_in_group.end()) {
            succ[it->second].push_back(id[p[slot]]);
            ++indeg[id[p[slot]]];
        }
        last_in_group[p[other]] = id[p[slot]];
    }

    // Lexicographic tie-break by identifier; the unassigned option sorts last.
    auto later = [&](int a, int b) {
        int ha = nodes[a], hb = nodes[b];
        if ((ha == kNone) != (hb == kNone))
            return ha == kNone;
        if (ha == kNone)
            return false;
        return inst.hospitals[ha].name > inst.hospitals[hb].name;
    };
    std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (indeg[i] == 0)
            ready.push(static_cast<int>(i));
    std::size_t emitted = 0;
    out.clear();
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        ++emitted;
        if (nodes[v] != kNone)
            out.push_back(nodes[v]);
        for (int w : succ[v])
            if (--indeg[w] == 0)
                ready.push(w);
    }
    if (emitted != nodes.size()) {
        out.clear();
        return false;
    }
    return true;
}

}  // namespace

CoupleProfile classify_couple(const HrcInstance &inst, const InstanceIndex &index, int c)
{
    const Couple &couple = inst.couples[c];
    CoupleProfile prof;
    std::array<std::vector<int>, 2> order;
    prof.sub_responsive = member_order(inst, couple, 0, order[0]) && member_order(inst, couple, 1, order[1]);
    if (prof.sub_responsive)
        prof.order = order;

    const auto &a0 = index.acceptable(couple.members[0]);
    const auto &a1 = index.acceptable(couple.members[1]);
    bool alone0 = false, alone1 = false;  // member may be assigned while the partner is not
    for (auto p : couple.prefs) {
        if (p.second == kNone)
            alone0 = true;
        if (p.first == kNone)
            alone1 = true;
    }
    std::vector<int> s0(a0.begin(), a0.end()), s1(a1.begin(), a1.end());
    if (alone1)
        s0.push_back(kNone);
    if (alone0)
        s1.push_back(kNone);
    std::size_t expected = 0;
    bool all_present = true;
    for (int x : s0)
        for (int y : s1) {
            if (x == kNone && y == kNone)
                continue;
            ++expected;
            if (index.pair_rank(c, {x, y}) == kNone)
                all_present = false;
        }
    prof.sub_complete = all_present && expected == couple.prefs.size();

    if (prof.sub_complete) {
        if (alone0 && alone1)
            prof.sep_class = SepClass::Separable;
        else if (alone0 || alone1) {
            prof.sep_class = SepClass::HalfSeparable;
            prof.alone_slot = alone0 ? 0 : 1;
        }
        else
            prof.sep_class = SepClass::Connected;
    }

    if (!prof.sub_responsive || !prof.sub_complete)
        return prof;

    std::vector<int> common;
    for (int h : a0)
        if (std::find(a1.begin(), a1.end(), h) != a1.end())
            common.push_back(h);
    if (common.empty()) {
        prof.type = CoupleType::A;
        return prof;
    }
    if (prof.sep_class != SepClass::Connected || common.size() != 1)
        return prof;
    int h = common.front();
    int r0 = index.rank(h, couple.members[0]);
    int r1 = index.rank(h, couple.members[1]);
    bool type_b = false;
    if (r0 != kNone && r1 != kNone) {
        const auto &worse = r0 < r1 ? a1 : a0;
        type_b = worse.size() == 1;
    }
    bool type_c = prof.order[0].back() == h && prof.order[1].back() == h;
    if (type_b || type_c) {
        prof.type = type_b ? CoupleType::B : CoupleType::C;
        prof.common_hospital = h;
    }
    return prof;
}

std::vector<CoupleProfile> classify_all(const HrcInstance &inst, const InstanceIndex &index)
{
    std::vector<CoupleProfile> out;
    out.reserve(inst.couples.size());
    for (std::size_t c = 0; c < inst.couples.size(); ++c)
        out.push_back(classify_couple(inst, index, static_cast<int>(c)));
    return out;
}

std::string to_string(SepClass c)
{
    switch (c) {
    case SepClass::Separable: return "separable";
    case SepClass::HalfSeparable: return "half-separable";
    case SepClass::Connected: return "connected";
    default: return "none";
    }
}

std::string to_string(CoupleType t)
{
    switch (t) {
    case CoupleType::A: return "type-a";
    case CoupleType::B: return "type-b";
    case CoupleType::C: return "type-c";
    default: return "other";
    }
}

std::array<int, 2> normalized_slots(const HrcInstance &inst, const InstanceIndex &index, int c,
                                    const CoupleProfile &prof)
{
    if (prof.type != CoupleType::B && prof.type != CoupleType::C)
        return {0, 1};
    const auto &m = inst.couples[c].members;
    int h = prof.common_hospital;
    return index.rank(h, m[0]) > index.rank(h, m[1]) ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0};
}

DualMarket detect_dual_market(const HrcInstance &inst)
{
    // Union-find with parity; node nh stands for side H1.
    int nh = static_cast<int>(inst.hospitals.size());
    std::vector<int> parent(nh + 1), parity(nh + 1, 0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        if (parent[x] == x)
            return x;
        int root = find(parent[x]);
        parity[x] ^= parity[parent[x]];
        parent[x] = root;
        return root;
    };
    bool ok = true;
    auto relate = [&](int a, int b, int diff) {
        int ra = find(a), rb = find(b);
        if (ra == rb) {
            if ((parity[a] ^ parity[b]) != diff)
                ok = false;
            return;
        }
        parent[ra] = rb;
        parity[ra] = parity[a] ^ parity[b] ^ diff;
    };
    const int anchor = nh;
    for (const auto &d : inst.doctors)
        if (d.couple == kNone)
            for (std::size_t i = 1; i < d.prefs.size(); ++i)
                relate(d.prefs[0], d.prefs[i], 0);
    for (const auto &c : inst.couples)
        for (auto p : c.prefs) {
            if (p.first != kNone)
                relate(p.first, anchor, 0);
            if (p.second != kNone)
                relate(p.second, anchor, 1);
        }
    DualMarket out;
    out.is_dual = ok;
    if (!ok)
        return out;
    out.side.resize(nh);
    int ra = find(anchor);
    for (int h = 0; h < nh; ++h)
        out.side[h] = find(h) == ra ? (parity[h] ^ parity[anchor]) : 0;
    return out;
}

}  // namespace hrc
