#include "hrc/reductions.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hrc/stability.hpp"

namespace hrc {

namespace {

class Builder {
public:
    Builder(Reduction &r, std::size_t expected_edges) : r_(r) { edges_.reserve(expected_edges); }

    int node(std::string name, int cap, int hospital = kNone, int doctor = kNone)
    {
        r_.map.node_hospital.push_back(hospital);
        r_.map.node_doctor.push_back(doctor);
        return r_.sf.add_node(std::move(name), cap);
    }

    int edge(int u, int v)
    {
        long long key = (static_cast<long long>(std::min(u, v)) << 32) | static_cast<unsigned>(std::max(u, v));
        auto [it, fresh] = edges_.emplace(key, 0);
        if (fresh)
            it->second = r_.sf.add_edge(u, v);
        return it->second;
    }

    void rank(int x, const std::vector<int> &others)
    {
        auto &list = r_.sf.ranking[x];
        for (int y : others)
            list.push_back(edge(x, y));
    }

private:
    Reduction &r_;
    std::unordered_map<long long, int> edges_;
};

void require_class(const HrcInstance &inst, const std::vector<CoupleProfile> &profiles, bool typed)
{
    for (std::size_t c = 0; c < inst.couples.size(); ++c) {
        const auto &p = profiles[c];
        const auto &mem = inst.couples[c].members;
        std::string who = inst.doctors[mem[0]].name + "," + inst.doctors[mem[1]].name;
        if (!p.sub_responsive)
            throw ClassificationError(static_cast<int>(c), "couple " + who + " is not sub-responsive");
        if (!p.sub_complete)
            throw ClassificationError(static_cast<int>(c), "couple " + who + " is not sub-complete");
        if (typed && p.type == CoupleType::Other)
            throw ClassificationError(static_cast<int>(c), "couple " + who + " is not of type a, b or c");
    }
}

void init_map(Reduction &r, const HrcInstance &inst)
{
    r.map.doctor_node.assign(inst.doctors.size(), kNone);
    r.map.hospital_nodes.assign(inst.hospitals.size(), {kNone, kNone});
    r.map.couple_slots.assign(inst.couples.size(), {0, 1});
}

}  // namespace

Reduction reduce_general(const HrcInstance &inst, const InstanceIndex &index, const std::vector<CoupleProfile> &profiles)
{
    (void)index;
    require_class(inst, profiles, false);
    Reduction r;
    init_map(r, inst);
    Builder b(r, 2 * inst.preference_length() + 8 * inst.couples.size());
    for (std::size_t d = 0; d < inst.doctors.size(); ++d)
        r.map.doctor_node[d] = b.node(inst.doctors[d].name, 1, kNone, static_cast<int>(d));
    for (std::size_t h = 0; h < inst.hospitals.size(); ++h)
        r.map.hospital_nodes[h][0] = b.node(inst.hospitals[h].name, inst.hospitals[h].capacity, static_cast<int>(h));

    auto hospital_nodes = [&](const std::vector<int> &hs) {
        std::vector<int> out;
        for (int h : hs)
            out.push_back(r.map.hospital_nodes[h][0]);
        return out;
    };
    for (std::size_t h = 0; h < inst.hospitals.size(); ++h) {
        std::vector<int> docs;
        for (int d : inst.hospitals[h].prefs)
            docs.push_back(r.map.doctor_node[d]);
        b.rank(r.map.hospital_nodes[h][0], docs);
    }
    for (std::size_t d = 0; d < inst.doctors.size(); ++d)
        if (inst.is_single(static_cast<int>(d)))
            b.rank(r.map.doctor_node[d], hospital_nodes(inst.doctors[d].prefs));

    for (std::size_t c = 0; c < inst.couples.size(); ++c) {
        const auto &p = profiles[c];
        const auto &mem = inst.couples[c].members;
        int x[2] = {r.map.doctor_node[mem[0]], r.map.doctor_node[mem[1]]};
        if (p.sep_class == SepClass::Separable) {
            for (int s = 0; s < 2; ++s)
                b.rank(x[s], hospital_nodes(p.order[s]));
        }
        else if (p.sep_class == SepClass::HalfSeparable) {
            for (int s = 0; s < 2; ++s) {
                auto list = hospital_nodes(p.order[s]);
                if (s == p.alone_slot)
                    list.push_back(x[1 - s]);
                else
                    list.insert(list.begin(), x[1 - s]);
                b.rank(x[s], list);
            }
        }
        else {
            const std::string &base = inst.doctors[mem[0]].name;
            int a[2], bb[2];
            for (int s = 0; s < 2; ++s) {
                a[s] = b.node(base + "~a" + std::to_string(s + 1), 1);
                bb[s] = b.node(base + "~b" + std::to_string(s + 1), 1);
            }
            for (int s = 0; s < 2; ++s) {
                auto list = hospital_nodes(p.order[s]);
                list.insert(list.begin(), a[s]);
                list.push_back(bb[1 - s]);
                b.rank(x[s], list);
            }
            b.rank(a[0], {bb[0], x[0]});
            b.rank(bb[0], {x[1], a[0]});
            b.rank(a[1], {bb[1], x[1]});
            b.rank(bb[1], {x[0], a[1]});
        }
    }
    return r;
}

Reduction reduce_typed(const HrcInstance &inst, const InstanceIndex &index, const std::vector<CoupleProfile> &profiles)
{
    require_class(inst, profiles, true);
    Reduction r;
    init_map(r, inst);
    Builder b(r, 2 * inst.preference_length() + 8 * inst.couples.size());
    for (std::size_t d = 0; d < inst.doctors.size(); ++d)
        r.map.doctor_node[d] = b.node(inst.doctors[d].name, 1, kNone, static_cast<int>(d));
    for (std::size_t h = 0; h < inst.hospitals.size(); ++h) {
        int hi = static_cast<int>(h);
        r.map.hospital_nodes[h][0] = b.node(inst.hospitals[h].name + "^1", inst.hospitals[h].capacity - 1, hi);
        r.map.hospital_nodes[h][1] = b.node(inst.hospitals[h].name + "^2", 1, hi);
    }

    // (doctor, hospital) pairs whose 1-copy edge is dropped: the better member of a type-b couple.
    std::unordered_set<long long> dropped;
    auto key = [](int d, int h) { return (static_cast<long long>(d) << 32) | static_cast<unsigned>(h); };
    for (std::size_t c = 0; c < inst.couples.size(); ++c) {
        r.map.couple_slots[c] = normalized_slots(inst, index, static_cast<int>(c), profiles[c]);
        if (profiles[c].type == CoupleType::B) {
            int better = inst.couples[c].members[r.map.couple_slots[c][1]];
            dropped.insert(key(better, profiles[c].common_hospital));
        }
    }

    for (std::size_t h = 0; h < inst.hospitals.size(); ++h) {
        std::vector<int> low, high;
        for (int d : inst.hospitals[h].prefs) {
            low.push_back(r.map.doctor_node[d]);
            if (!dropped.count(key(d, static_cast<int>(h))))
                high.push_back(r.map.doctor_node[d]);
        }
        b.rank(r.map.hospital_nodes[h][0], low);
        b.rank(r.map.hospital_nodes[h][1], high);
    }
    auto expand = [&](int d, const std::vector<int> &hs, int skip = kNone) {
        std::vector<int> out;
        for (int h : hs) {
            if (h == skip)
                continue;
            out.push_back(r.map.hospital_nodes[h][0]);
            if (!dropped.count(key(d, h)))
                out.push_back(r.map.hospital_nodes[h][1]);
        }
        return out;
    };
    for (std::size_t d = 0; d < inst.doctors.size(); ++d)
        if (inst.is_single(static_cast<int>(d)))
            b.rank(r.map.doctor_node[d], expand(static_cast<int>(d), inst.doctors[d].prefs));

    for (std::size_t c = 0; c < inst.couples.size(); ++c) {
        const auto &p = profiles[c];
        const auto &mem = inst.couples[c].members;
        auto slots = r.map.couple_slots[c];
        int doc[2] = {mem[slots[0]], mem[slots[1]]};  // role order
        int x[2] = {r.map.doctor_node[doc[0]], r.map.doctor_node[doc[1]]};
        const std::vector<int> *order[2] = {&p.order[slots[0]], &p.order[slots[1]]};
        if (p.sep_class == SepClass::Separable) {
            for (int k = 0; k < 2; ++k)
                b.rank(x[k], expand(doc[k], *order[k]));
        }
        else if (p.sep_class == SepClass::HalfSeparable) {
            for (int k = 0; k < 2; ++k) {
                auto list = expand(doc[k], *order[k]);
                if (slots[k] == p.alone_slot)
                    list.push_back(x[1 - k]);
                else
                    list.insert(list.begin(), x[1 - k]);
                b.rank(x[k], list);
            }
        }
        else {
            const std::string &base = inst.doctors[mem[0]].name;
            int a[2], bb[2];
            for (int k = 0; k < 2; ++k) {
                a[k] = b.node(base + "~a" + std::to_string(k + 1), 1);
                bb[k] = b.node(base + "~b" + std::to_string(k + 1), 1);
            }
            for (int k = 0; k < 2; ++k) {
                std::vector<int> list{a[k]};
                if (p.type == CoupleType::C) {
                    int h = p.common_hospital;
                    auto rest = expand(doc[k], *order[k], h);
                    list.insert(list.end(), rest.begin(), rest.end());
                    list.push_back(r.map.hospital_nodes[h][0]);
                    list.push_back(x[1 - k]);
                    list.push_back(r.map.hospital_nodes[h][1]);
                }
                else {
                    auto rest = expand(doc[k], *order[k]);
                    list.insert(list.end(), rest.begin(), rest.end());
                }
                list.push_back(bb[1 - k]);
                b.rank(x[k], list);
            }
            b.rank(a[0], {bb[0], x[0]});
            b.rank(bb[0], {x[1], a[0]});
            b.rank(a[1], {bb[1], x[1]});
            b.rank(bb[1], {x[0], a[1]});
        }
    }
    return r;
}

NearFeasible round_to_near_feasible(const HrcInstance &inst, const Reduction &r, const HalfMatching &f)
{
    if (!sf_stability_check(r.sf, f).empty())
        throw Error("fractional solution is not stable in the reduced instance");
    NearFeasible out;
    out.matching = HrcMatching(inst.doctors.size());
    for (std::size_t d = 0; d < inst.doctors.size(); ++d) {
        int x = r.map.doctor_node[d];
        for (int e : r.sf.ranking[x]) {
            int y = r.sf.other(e, x);
            if (f.halves[e] > 0 && r.map.node_hospital[y] != kNone) {
                out.matching.assignment[d] = r.map.node_hospital[y];
                break;
            }
        }
    }
    std::vector<int> assigned(inst.hospitals.size(), 0);
    for (int h : out.matching.assignment)
        if (h != kNone)
            ++assigned[h];
    out.capacity.resize(inst.hospitals.size());
    for (std::size_t h = 0; h < inst.hospitals.size(); ++h) {
        int x = r.map.hospital_nodes[h][0];
        int load = 0;
        for (int e : r.sf.ranking[x])
            load += f.halves[e];
        int q = inst.hospitals[h].capacity;
        out.capacity[h] = load == 2 * q ? assigned[h] : q;
    }
    return out;
}

HrcMatching extract_hrc_matching(const HrcInstance &inst, const Reduction &r, const HalfMatching &m)
{
    HrcMatching out(inst.doctors.size());
    for (std::size_t d = 0; d < inst.doctors.size(); ++d) {
        int x = r.map.doctor_node[d];
        for (int e : r.sf.ranking[x]) {
            int y = r.sf.other(e, x);
            if (m.halves[e] == 2 && r.map.node_hospital[y] != kNone) {
                out.assignment[d] = r.map.node_hospital[y];
                break;
            }
        }
    }
    return out;
}

std::string to_string(SolveMode mode)
{
    switch (mode) {
    case SolveMode::Near: return "near";
    case SolveMode::Exact: return "exact";
    default: return "auto";
    }
}

SolveResult solve(const HrcInstance &inst, SolveMode mode)
{
    InstanceIndex index(inst);
    auto profiles = classify_all(inst, index);
    if (mode == SolveMode::Auto) {
        bool typed = std::all_of(profiles.begin(), profiles.end(), [](const CoupleProfile &p) {
            return p.sub_responsive && p.sub_complete && p.type != CoupleType::Other;
        });
        mode = typed ? SolveMode::Exact : SolveMode::Near;
    }
    SolveResult res;
    res.mode_used = mode;
    if (mode == SolveMode::Exact) {
        res.reduction = reduce_typed(inst, index, profiles);
        auto m = decide_integral(res.reduction.sf);
        res.capacity = std::vector<int>(inst.hospitals.size());
        for (std::size_t h = 0; h < inst.hospitals.size(); ++h)
            res.capacity[h] = inst.hospitals[h].capacity;
        if (!m) {
            res.stable = false;
            res.sf_matching = solve_half_integral(res.reduction.sf);
            return res;
        }
        res.stable = true;
        res.sf_matching = *m;
        res.matching = extract_hrc_matching(inst, res.reduction, *m);
        return res;
    }
    res.reduction = reduce_general(inst, index, profiles);
    res.sf_matching = solve_half_integral(res.reduction.sf);
    auto nf = round_to_near_feasible(inst, res.reduction, res.sf_matching);
    res.stable = true;
    res.matching = std::move(nf.matching);
    res.capacity = std::move(nf.capacity);
    return res;
}

HrcInstance multigraph_to_hrc(const MultigraphInstance &g)
{
    HrcInstance inst;
    for (std::size_t v = 0; v < g.node_names.size(); ++v)
        inst.add_hospital(g.node_names[v], g.capacity[v]);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        inst.add_couple(g.edge_names[e] + "/1", g.edge_names[e] + "/2", {{g.edges[e][0], g.edges[e][1]}});
    for (std::size_t v = 0; v < g.node_names.size(); ++v)
        for (int e : g.ranking[v]) {
            const auto &mem = inst.couples[e].members;
            if (g.is_loop(e)) {
                inst.hospitals[v].prefs.push_back(mem[0]);
                inst.hospitals[v].prefs.push_back(mem[1]);
            }
            else {
                inst.hospitals[v].prefs.push_back(g.edges[e][0] == static_cast<int>(v) ? mem[0] : mem[1]);
            }
        }
    auto issues = validate_instance(inst);
    if (!issues.empty())
        throw ValidationError("multigraph translation: " + issues.front());
    return inst;
}

std::optional<std::vector<int>> solve_multigraph(const MultigraphInstance &g)
{
    HrcInstance inst = multigraph_to_hrc(g);
    SolveResult res = solve(inst, SolveMode::Exact);
    if (!res.stable)
        return std::nullopt;
    std::vector<int> edges;
    for (std::size_t e = 0; e < inst.couples.size(); ++e) {
        HospitalPair p = res.matching.pair_of(inst, static_cast<int>(e));
        if (p.first != kNone && p.second != kNone)
            edges.push_back(static_cast<int>(e));
        else if (p.first != kNone || p.second != kNone)
            throw InternalError("edge couple " + g.edge_names[e] + " is half assigned");
    }
    return edges;
}

}  // namespace hrc
