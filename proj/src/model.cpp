#include "hrc/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace hrc {

ParseError::ParseError(int line, int column, const std::string &message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column)
{
}

ClassificationError::ClassificationError(int couple, const std::string &message)
    : Error(message), couple_(couple)
{
}

namespace {

std::string join_issues(const std::vector<std::string> &issues)
{
    std::string out = "infeasible matching";
    for (const auto &s : issues)
        out += "; " + s;
    return out;
}

long long pair_key(HospitalPair p)
{
    return (static_cast<long long>(p.first + 1) << 32) | static_cast<unsigned>(p.second + 1);
}

}  // namespace

InfeasibleMatching::InfeasibleMatching(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues))
{
}

int HrcInstance::add_hospital(std::string name, int cap)
{
    hospitals.push_back({std::move(name), cap, {}});
    return static_cast<int>(hospitals.size()) - 1;
}

int HrcInstance::add_single(std::string name, std::vector<int> prefs)
{
    doctors.push_back({std::move(name), kNone, 0, std::move(prefs)});
    return static_cast<int>(doctors.size()) - 1;
}

int HrcInstance::add_couple(std::string first, std::string second, std::vector<HospitalPair> prefs)
{
    int c = static_cast<int>(couples.size());
    int d = static_cast<int>(doctors.size());
    doctors.push_back({std::move(first), c, 0, {}});
    doctors.push_back({std::move(second), c, 1, {}});
    couples.push_back({{d, d + 1}, std::move(prefs)});
    return c;
}

int HrcInstance::find_doctor(std::string_view name) const
{
    for (std::size_t i = 0; i < doctors.size(); ++i)
        if (doctors[i].name == name)
            return static_cast<int>(i);
    return kNone;
}

int HrcInstance::find_hospital(std::string_view name) const
{
    for (std::size_t i = 0; i < hospitals.size(); ++i)
        if (hospitals[i].name == name)
            return static_cast<int>(i);
    return kNone;
}

std::size_t HrcInstance::preference_length() const
{
    std::size_t m = 0;
    for (const auto &h : hospitals)
        m += h.prefs.size();
    return m;
}

InstanceIndex::InstanceIndex(const HrcInstance &instance)
    : rank_(instance.hospitals.size()), acceptable_(instance.doctors.size()),
      pair_rank_(instance.couples.size())
{
    for (std::size_t h = 0; h < instance.hospitals.size(); ++h) {
        const auto &prefs = instance.hospitals[h].prefs;
        rank_[h].reserve(prefs.size());
        for (std::size_t r = 0; r < prefs.size(); ++r)
            rank_[h].emplace(prefs[r], static_cast<int>(r));
    }
    for (std::size_t d = 0; d < instance.doctors.size(); ++d)
        if (instance.doctors[d].couple == kNone)
            acceptable_[d] = instance.doctors[d].prefs;
    // stamp[slot][h] == c + 1 once h is in member slot's acceptable set of couple c
    std::array<std::vector<std::size_t>, 2> stamp;
    stamp[0].assign(instance.hospitals.size(), 0);
    stamp[1].assign(instance.hospitals.size(), 0);
    for (std::size_t c = 0; c < instance.couples.size(); ++c) {
        const auto &couple = instance.couples[c];
        pair_rank_[c].reserve(couple.prefs.size());
        for (std::size_t r = 0; r < couple.prefs.size(); ++r) {
            pair_rank_[c].emplace(pair_key(couple.prefs[r]), static_cast<int>(r));
            for (int slot = 0; slot < 2; ++slot) {
                int h = couple.prefs[r][slot];
                if (h == kNone || h >= static_cast<int>(instance.hospitals.size()) || stamp[slot][h] == c + 1)
                    continue;
                stamp[slot][h] = c + 1;
                acceptable_[couple.members[slot]].push_back(h);
            }
        }
    }
}

int InstanceIndex::rank(int h, int d) const
{
    auto it = rank_[h].find(d);
    return it == rank_[h].end() ? kNone : it->second;
}

bool InstanceIndex::accepts(int d, int h) const
{
    const auto &acc = acceptable_[d];
    return std::find(acc.begin(), acc.end(), h) != acc.end();
}

int InstanceIndex::pair_rank(int couple, HospitalPair p) const
{
    auto it = pair_rank_[couple].find(pair_key(p));
    return it == pair_rank_[couple].end() ? kNone : it->second;
}

HospitalPair HrcMatching::pair_of(const HrcInstance &instance, int couple) const
{
    const auto &m = instance.couples[couple].members;
    return {assignment[m[0]], assignment[m[1]]};
}

std::vector<std::string> validate_instance(const HrcInstance &instance)
{
    std::vector<std::string> out;
    std::unordered_map<std::string, int> doctor_seen;
    for (std::size_t d = 0; d < instance.doctors.size(); ++d) {
        const auto &doc = instance.doctors[d];
        auto [it, fresh] = doctor_seen.emplace(doc.name, static_cast<int>(d));
        if (!fresh) {
            bool a = instance.doctors[it->second].couple == kNone;
            bool b = doc.couple == kNone;
            if (a != b)
                out.push_back("doctor " + doc.name + " declared as both single and couple member");
            else
                out.push_back("duplicate doctor " + doc.name);
        }
    }
    std::unordered_set<std::string> hospital_seen;
    for (const auto &h : instance.hospitals) {
        if (!hospital_seen.insert(h.name).second)
            out.push_back("duplicate hospital " + h.name);
        if (doctor_seen.count(h.name))
            out.push_back("identifier " + h.name + " names both a doctor and a hospital");
        if (h.capacity < 1)
            out.push_back("hospital " + h.name + " has capacity " + std::to_string(h.capacity) + " < 1");
    }

    int nh = static_cast<int>(instance.hospitals.size());
    int nd = static_cast<int>(instance.doctors.size());
    auto bad_h = [&](int h) { return h < 0 || h >= nh; };
    for (const auto &doc : instance.doctors) {
        if (doc.couple != kNone)
            continue;
        std::set<int> seen;
        for (int h : doc.prefs) {
            if (bad_h(h))
                out.push_back("single " + doc.name + " lists an unknown hospital");
            else if (!seen.insert(h).second)
                out.push_back("single " + doc.name + " lists " + instance.hospitals[h].name + " twice");
        }
    }
    for (const auto &couple : instance.couples) {
        std::string who = instance.doctors[couple.members[0]].name + "," + instance.doctors[couple.members[1]].name;
        std::set<HospitalPair> seen;
        for (auto p : couple.prefs) {
            if (p.first == kNone && p.second == kNone)
                out.push_back("couple " + who + " lists the pair (-,-)");
            else if ((p.first != kNone && bad_h(p.first)) || (p.second != kNone && bad_h(p.second)))
                out.push_back("couple " + who + " lists an unknown hospital");
            else if (!seen.insert(p).second)
                out.push_back("couple " + who + " lists a pair twice");
        }
    }
    for (const auto &h : instance.hospitals) {
        std::set<int> seen;
        for (int d : h.prefs) {
            if (d < 0 || d >= nd)
                out.push_back("hospital " + h.name + " lists an unknown doctor");
            else if (!seen.insert(d).second)
                out.push_back("hospital " + h.name + " lists " + instance.doctors[d].name + " twice");
        }
    }
    if (!out.empty())
        return out;

    InstanceIndex index(instance);
    for (int d = 0; d < nd; ++d)
        for (int h : index.acceptable(d))
            if (index.rank(h, d) == kNone)
                out.push_back("mutual acceptability: doctor " + instance.doctors[d].name + " lists " + instance.hospitals[h].name +
                              " which does not rank it");
    for (int h = 0; h < nh; ++h)
        for (int d : instance.hospitals[h].prefs)
            if (!index.accepts(d, h))
                out.push_back("mutual acceptability: hospital " + instance.hospitals[h].name + " ranks " + instance.doctors[d].name +
                              " who does not list it");
    return out;
}

int MultigraphInstance::add_node(std::string name, int cap)
{
    node_names.push_back(std::move(name));
    capacity.push_back(cap);
    ranking.emplace_back();
    return static_cast<int>(node_names.size()) - 1;
}

int MultigraphInstance::add_edge(std::string name, int u, int v)
{
    edge_names.push_back(std::move(name));
    edges.push_back({u, v});
    return static_cast<int>(edges.size()) - 1;
}

std::vector<std::string> validate_multigraph(const MultigraphInstance &g)
{
    std::vector<std::string> out;
    std::unordered_set<std::string> names;
    for (std::size_t v = 0; v < g.node_names.size(); ++v) {
        if (!names.insert(g.node_names[v]).second)
            out.push_back("duplicate node " + g.node_names[v]);
        if (g.capacity[v] < 1)
            out.push_back("node " + g.node_names[v] + " has capacity < 1");
    }
    std::unordered_set<std::string> enames;
    for (const auto &e : g.edge_names)
        if (!enames.insert(e).second)
            out.push_back("duplicate edge " + e);
    int n = static_cast<int>(g.node_names.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        for (int x : g.edges[e])
            if (x < 0 || x >= n)
                out.push_back("edge " + g.edge_names[e] + " has an unknown endpoint");
    if (!out.empty())
        return out;
    std::vector<std::vector<int>> incident(n);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        incident[g.edges[e][0]].push_back(static_cast<int>(e));
        if (g.edges[e][1] != g.edges[e][0])
            incident[g.edges[e][1]].push_back(static_cast<int>(e));
    }
    for (int v = 0; v < n; ++v) {
        auto a = incident[v];
        auto b = g.ranking[v];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            out.push_back("ranking of node " + g.node_names[v] + " does not list exactly its incident edges");
    }
    return out;
}

int SmtiInstance::find_man(std::string_view name) const
{
    auto it = std::find(men.begin(), men.end(), name);
    return it == men.end() ? kNone : static_cast<int>(it - men.begin());
}

int SmtiInstance::find_woman(std::string_view name) const
{
    auto it = std::find(women.begin(), women.end(), name);
    return it == women.end() ? kNone : static_cast<int>(it - women.begin());
}

std::vector<std::string> validate_smti(const SmtiInstance &s)
{
    std::vector<std::string> out;
    int nm = static_cast<int>(s.men.size());
    int nw = static_cast<int>(s.women.size());
    std::unordered_set<std::string> names;
    for (const auto &m : s.men)
        if (!names.insert(m).second)
            out.push_back("duplicate identifier " + m);
    for (const auto &w : s.women)
        if (!names.insert(w).second)
            out.push_back("duplicate identifier " + w);
    for (int w = 0; w < nw; ++w)
        if (s.woman_tie[w] && s.woman_prefs[w].size() != 2)
            out.push_back("woman " + s.women[w] + " has a tie that is not of length 2");
    auto order = s.man_order;
    std::sort(order.begin(), order.end());
    bool perm = static_cast<int>(order.size()) == nm;
    for (int i = 0; perm && i < nm; ++i)
        perm = order[i] == i;
    if (!perm)
        out.push_back("manorder is not a permutation of the men");
    for (int m = 0; m < nm; ++m) {
        std::set<int> seen;
        for (int w : s.man_prefs[m]) {
            if (!seen.insert(w).second)
                out.push_back("man " + s.men[m] + " lists a woman twice");
            const auto &wp = s.woman_prefs[w];
            if (std::find(wp.begin(), wp.end(), m) == wp.end())
                out.push_back("man " + s.men[m] + " lists " + s.women[w] + " without being listed back");
        }
    }
    for (int w = 0; w < nw; ++w) {
        std::set<int> seen;
        for (int m : s.woman_prefs[w]) {
            if (!seen.insert(m).second)
                out.push_back("woman " + s.women[w] + " lists a man twice");
            const auto &mp = s.man_prefs[m];
            if (std::find(mp.begin(), mp.end(), w) == mp.end())
                out.push_back("woman " + s.women[w] + " lists " + s.men[m] + " without being listed back");
        }
    }
    return out;
}

}  // namespace hrc
