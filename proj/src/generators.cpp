#include "hrc/generators.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "hrc/io.hpp"

namespace hrc {

std::string write_generated(const Generated &g)
{
    std::string out;
    for (const auto &line : g.header)
        out += "# " + line + '\n';
    return out + write_hrc(g.instance);
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

    template <class T>
    void shuffle(std::vector<T> &v)
    {
        std::shuffle(v.begin(), v.end(), engine_);
    }

    template <class T>
    std::vector<T> sample(std::vector<T> pool, int k)
    {
        shuffle(pool);
        pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(std::max(k, 0))));
        return pool;
    }

    template <class T>
    const T &pick(const std::vector<T> &v)
    {
        return v[uniform(0, static_cast<int>(v.size()) - 1)];
    }

private:
    std::mt19937_64 engine_;
};

class Names {
public:
    explicit Names(const HrcInstance &inst)
    {
        for (std::size_t d = 0; d < inst.doctors.size(); ++d)
            doctors_.emplace(inst.doctors[d].name, static_cast<int>(d));
        for (std::size_t h = 0; h < inst.hospitals.size(); ++h)
            hospitals_.emplace(inst.hospitals[h].name, static_cast<int>(h));
    }

    int doctor(const std::string &name) const { return lookup(doctors_, name); }
    int hospital(const std::string &name) const { return lookup(hospitals_, name); }

private:
    static int lookup(const std::unordered_map<std::string, int> &m, const std::string &name)
    {
        auto it = m.find(name);
        if (it == m.end())
            throw InternalError("generated instance has no agent named " + name);
        return it->second;
    }

    std::unordered_map<std::string, int> doctors_;
    std::unordered_map<std::string, int> hospitals_;
};

void require_valid(const HrcInstance &inst)
{
    auto issues = validate_instance(inst);
    if (!issues.empty())
        throw InternalError("generated instance is invalid: " + issues.front());
}

void assign_pair(HrcMatching &m, const HrcInstance &inst, int couple, int h1, int h2)
{
    m.assignment[inst.couples[couple].members[0]] = h1;
    m.assignment[inst.couples[couple].members[1]] = h2;
}

}  // namespace

Generated gen_random(const GenParams &p)
{
    if (p.singles < 0 || p.couples < 0 || p.hospitals < 0)
        throw Error("counts must be nonnegative");
    if (p.min_capacity < 1 || p.max_capacity < p.min_capacity)
        throw Error("capacity range must satisfy 1 <= min <= max");
    if (p.min_list < 1 || p.max_list < p.min_list)
        throw Error("list-length range must satisfy 1 <= min <= max");
    if (p.types.empty() || p.classes.empty())
        throw Error("couple type and class mixes must be nonempty");
    if (std::find(p.classes.begin(), p.classes.end(), SepClass::None) != p.classes.end())
        throw Error("separability class none cannot be generated");
    if (p.singles + p.couples > 0 && p.hospitals < 1)
        throw Error("doctors need at least one hospital");
    bool needs_two = p.couples > 0 && std::any_of(p.types.begin(), p.types.end(), [](CoupleType t) {
                         return t == CoupleType::A || t == CoupleType::C;
                     });
    if ((needs_two || (p.dual_market && p.couples > 0)) && p.hospitals < 2)
        throw Error("type-a and type-c couples and dual markets need at least two hospitals");
    if (p.couples > 0 && p.hospitals < 3 &&
        std::find(p.types.begin(), p.types.end(), CoupleType::C) != p.types.end())
        throw Error("type-c couples need at least three hospitals");
    if (p.dual_market && p.couples > 0 &&
        std::any_of(p.types.begin(), p.types.end(), [](CoupleType t) { return t == CoupleType::B || t == CoupleType::C; }))
        throw Error("type-b and type-c couples share a hospital, which a dual market forbids");

    Rng rng(p.seed);
    Generated out;
    HrcInstance &inst = out.instance;
    int nh = p.hospitals;
    for (int h = 0; h < nh; ++h)
        inst.add_hospital("h" + std::to_string(h + 1), rng.uniform(p.min_capacity, p.max_capacity));

    std::vector<int> all(nh);
    std::iota(all.begin(), all.end(), 0);
    std::array<std::vector<int>, 2> side;
    if (p.dual_market) {
        auto perm = all;
        rng.shuffle(perm);
        int cut = (nh + 1) / 2;
        side[0].assign(perm.begin(), perm.begin() + cut);
        side[1].assign(perm.begin() + cut, perm.end());
        std::sort(side[0].begin(), side[0].end());
        std::sort(side[1].begin(), side[1].end());
    }
    auto length = [&] { return rng.uniform(p.min_list, p.max_list); };

    std::vector<std::vector<int>> applicants(nh);
    for (int i = 0; i < p.singles; ++i) {
        const auto &pool = p.dual_market ? (side[1].empty() ? side[0] : side[rng.uniform(0, 1)]) : all;
        auto prefs = rng.sample(pool, length());
        int d = inst.add_single("d" + std::to_string(i + 1), prefs);
        for (int h : prefs)
            applicants[h].push_back(d);
    }

    struct Order {
        int h, worse, better;
    };
    std::vector<Order> constraints;
    for (int i = 0; i < p.couples; ++i) {
        CoupleType type = rng.pick(p.types);
        std::array<std::vector<int>, 2> acc;
        int worse_slot = kNone, common = kNone;
        if (p.dual_market) {
            acc[0] = rng.sample(side[0], length());
            acc[1] = rng.sample(side[1], length());
        }
        else if (type == CoupleType::A) {
            auto perm = rng.sample(all, nh);
            int k0 = std::min(length(), nh - 1);
            int k1 = std::min(length(), nh - k0);
            acc[0].assign(perm.begin(), perm.begin() + k0);
            acc[1].assign(perm.begin() + k0, perm.begin() + k0 + k1);
        }
        else if (type == CoupleType::B) {
            common = rng.pick(all);
            worse_slot = rng.uniform(0, 1);
            std::vector<int> others;
            for (int h : all)
                if (h != common)
                    others.push_back(h);
            acc[worse_slot] = {common};
            acc[1 - worse_slot] = rng.sample(others, length() - 1);
            int at = rng.uniform(0, static_cast<int>(acc[1 - worse_slot].size()));
            acc[1 - worse_slot].insert(acc[1 - worse_slot].begin() + at, common);
        }
        else if (type == CoupleType::C) {
            common = rng.pick(all);
            std::vector<int> others;
            for (int h : all)
                if (h != common)
                    others.push_back(h);
            auto perm = rng.sample(others, static_cast<int>(others.size()));
            int k0 = std::clamp(length() - 1, 1, static_cast<int>(perm.size()) - 1);
            int k1 = std::clamp(length() - 1, 1, static_cast<int>(perm.size()) - k0);
            acc[0].assign(perm.begin(), perm.begin() + k0);
            acc[1].assign(perm.begin() + k0, perm.begin() + k0 + k1);
            acc[0].push_back(common);
            acc[1].push_back(common);
        }
        else {
            acc[0] = rng.sample(all, length());
            acc[1] = rng.sample(all, length());
        }

        SepClass cls = (type == CoupleType::B || type == CoupleType::C) ? SepClass::Connected : rng.pick(p.classes);
        std::array<bool, 2> alone{false, false};
        if (cls == SepClass::Separable)
            alone = {true, true};
        else if (cls == SepClass::HalfSeparable)
            alone[rng.uniform(0, 1)] = true;

        std::array<std::vector<int>, 2> opts;
        for (int s = 0; s < 2; ++s) {
            opts[s] = acc[s];
            if (alone[s])
                opts[s].push_back(kNone);
        }
        int major = rng.uniform(0, 1);
        std::vector<HospitalPair> joint;
        for (std::size_t a = 0; a < opts[major].size(); ++a)
            for (std::size_t b = 0; b < opts[1 - major].size(); ++b) {
                int first = major == 0 ? opts[0][a] : opts[0][b];
                int second = major == 0 ? opts[1][b] : opts[1][a];
                if (first != kNone || second != kNone)
                    joint.push_back({first, second});
            }
        std::string base = "c" + std::to_string(i + 1);
        int c = inst.add_couple(base + "a", base + "b", joint);
        const auto &mem = inst.couples[c].members;
        for (int s = 0; s < 2; ++s)
            for (int h : acc[s])
                applicants[h].push_back(mem[s]);
        if (type == CoupleType::B && !p.dual_market)
            constraints.push_back({common, mem[worse_slot], mem[1 - worse_slot]});
    }

    for (int h = 0; h < nh; ++h) {
        auto &list = applicants[h];
        rng.shuffle(list);
        inst.hospitals[h].prefs = list;
    }
    for (const auto &o : constraints) {
        auto &list = inst.hospitals[o.h].prefs;
        auto w = std::find(list.begin(), list.end(), o.worse);
        auto b = std::find(list.begin(), list.end(), o.better);
        if (w < b)
            std::iter_swap(w, b);
    }
    require_valid(inst);

    std::string types, classes;
    for (auto t : p.types)
        types += (types.empty() ? "" : ",") + to_string(t);
    for (auto c : p.classes)
        classes += (classes.empty() ? "" : ",") + to_string(c);
    out.header = {"generator random",
                  "seed " + std::to_string(p.seed),
                  "singles " + std::to_string(p.singles) + " couples " + std::to_string(p.couples) + " hospitals " +
                      std::to_string(p.hospitals),
                  "capacity " + std::to_string(p.min_capacity) + ".." + std::to_string(p.max_capacity) + " list " +
                      std::to_string(p.min_list) + ".." + std::to_string(p.max_list),
                  "types " + types + " classes " + classes + (p.dual_market ? " dual" : "")};
    return out;
}

CnfFormula gen_22e3sat(std::uint64_t seed, int n)
{
    if (n < 3 || n % 3 != 0)
        throw ShapeError("a (2,2)-E3-SAT formula needs a positive multiple of 3 variables");
    Rng rng(seed);
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v)
        for (int lit : {v, v, -v, -v})
            lits.push_back(lit);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        rng.shuffle(lits);
        CnfFormula f;
        f.num_vars = n;
        bool ok = true;
        for (std::size_t i = 0; ok && i < lits.size(); i += 3) {
            std::vector<int> clause(lits.begin() + i, lits.begin() + i + 3);
            std::set<int> vars;
            for (int l : clause)
                vars.insert(std::abs(l));
            ok = vars.size() == 3;
            f.clauses.push_back(clause);
        }
        if (ok)
            return f;
    }
    throw Error("could not place literals without repeating a variable in a clause");
}

void require_22e3sat(const CnfFormula &f)
{
    if (f.num_vars < 1)
        throw ShapeError("formula has no variables");
    std::vector<int> pos(f.num_vars + 1, 0), neg(f.num_vars + 1, 0);
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        if (f.clauses[j].size() != 3)
            throw ShapeError("clause " + std::to_string(j + 1) + " does not have exactly 3 literals");
        for (int l : f.clauses[j]) {
            if (l == 0 || std::abs(l) > f.num_vars)
                throw ShapeError("clause " + std::to_string(j + 1) + " has a literal out of range");
            ++(l > 0 ? pos : neg)[std::abs(l)];
        }
    }
    for (int v = 1; v <= f.num_vars; ++v)
        if (pos[v] != 2 || neg[v] != 2)
            throw ShapeError("variable " + std::to_string(v) + " does not occur exactly twice in each polarity");
}

std::optional<std::vector<bool>> satisfying_assignment(const CnfFormula &f)
{
    if (f.num_vars > 26)
        throw BudgetExceeded("exhaustive satisfiability search is limited to 26 variables");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
        auto value = [&](int lit) {
            bool v = (mask >> (std::abs(lit) - 1)) & 1;
            return lit > 0 ? v : !v;
        };
        bool sat = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int> &c) {
            return std::any_of(c.begin(), c.end(), value);
        });
        if (sat) {
            std::vector<bool> out(f.num_vars);
            for (int v = 0; v < f.num_vars; ++v)
                out[v] = (mask >> v) & 1;
            return out;
        }
    }
    return std::nullopt;
}

SmtiInstance gen_smti(std::uint64_t seed, int men, int women, double density)
{
    Rng rng(seed);
    SmtiInstance s;
    for (int i = 0; i < men; ++i)
        s.men.push_back("m" + std::to_string(i + 1));
    for (int i = 0; i < women; ++i)
        s.women.push_back("w" + std::to_string(i + 1));
    s.man_prefs.resize(men);
    s.woman_prefs.resize(women);
    s.woman_tie.assign(women, false);
    std::vector<std::pair<int, int>> pairs;
    for (int m = 0; m < men; ++m)
        for (int w = 0; w < women; ++w)
            pairs.emplace_back(m, w);
    rng.shuffle(pairs);
    for (auto [m, w] : pairs)
        if (rng.coin(density) && s.man_prefs[m].size() < 3 && s.woman_prefs[w].size() < 3) {
            s.man_prefs[m].push_back(w);
            s.woman_prefs[w].push_back(m);
        }
    for (auto &l : s.man_prefs)
        rng.shuffle(l);
    for (int w = 0; w < women; ++w) {
        rng.shuffle(s.woman_prefs[w]);
        if (s.woman_prefs[w].size() == 2 && rng.coin())
            s.woman_tie[w] = true;
    }
    s.man_order.resize(men);
    std::iota(s.man_order.begin(), s.man_order.end(), 0);
    return s;
}

void require_restricted_smti(const SmtiInstance &s)
{
    auto issues = validate_smti(s);
    if (!issues.empty())
        throw ShapeError(issues.front());
    for (std::size_t m = 0; m < s.men.size(); ++m)
        if (s.man_prefs[m].size() > 3)
            throw ShapeError("man " + s.men[m] + " lists more than 3 women");
    for (std::size_t w = 0; w < s.women.size(); ++w)
        if (!s.woman_tie[w] && s.woman_prefs[w].size() > 3)
            throw ShapeError("woman " + s.women[w] + " lists more than 3 men");
}

namespace {

std::vector<int> order_positions(const SmtiInstance &s)
{
    std::vector<int> pos(s.men.size());
    for (std::size_t i = 0; i < s.man_order.size(); ++i)
        pos[s.man_order[i]] = static_cast<int>(i);
    return pos;
}

// The tie woman's two men, earlier one in the man order first.
std::array<int, 2> tie_ends(const SmtiInstance &s, const std::vector<int> &pos, int w)
{
    int a = s.woman_prefs[w][0], b = s.woman_prefs[w][1];
    if (pos[b] < pos[a])
        std::swap(a, b);
    return {a, b};
}

}  // namespace

SmtiConstruction gen_from_smti(const SmtiInstance &s)
{
    require_restricted_smti(s);
    SmtiConstruction out;
    HrcInstance &inst = out.generated.instance;
    int nm = static_cast<int>(s.men.size()), nw = static_cast<int>(s.women.size());
    auto pos = order_positions(s);

    out.woman_hospitals.resize(nw);
    for (int w = 0; w < nw; ++w) {
        const std::string &n = s.women[w];
        if (s.woman_tie[w])
            for (int i = 1; i <= 3; ++i)
                out.woman_hospitals[w].push_back(inst.add_hospital("h" + std::to_string(i) + "_" + n, 1));
        else
            out.woman_hospitals[w].push_back(inst.add_hospital("h_" + n, 1));
    }
    struct ManHospitals {
        int f, g1, g2, g3;
    };
    std::vector<ManHospitals> mh(nm);
    for (int u = 0; u < nm; ++u) {
        const std::string &n = s.men[u];
        mh[u] = {inst.add_hospital("f_" + n, 1), inst.add_hospital("g1_" + n, 1), inst.add_hospital("g2_" + n, 1),
                 inst.add_hospital("g3_" + n, 1)};
    }

    out.man_doctor.resize(nm);
    for (int u = 0; u < nm; ++u) {
        std::vector<int> prefs;
        for (int w : s.man_prefs[u]) {
            const auto &hs = out.woman_hospitals[w];
            if (!s.woman_tie[w])
                prefs.push_back(hs[0]);
            else
                prefs.push_back(tie_ends(s, pos, w)[0] == u ? hs[0] : hs[2]);
        }
        prefs.push_back(mh[u].f);
        out.man_doctor[u] = inst.add_single("d_" + s.men[u], prefs);
    }
    std::vector<int> tie_couple(nw, kNone);
    for (int w = 0; w < nw; ++w) {
        if (!s.woman_tie[w])
            continue;
        const auto &hs = out.woman_hospitals[w];
        tie_couple[w] = inst.add_couple("cw1_" + s.women[w], "cw2_" + s.women[w],
                                        {{hs[1], hs[1]}, {hs[0], hs[1]}, {hs[1], hs[2]}, {hs[0], hs[2]}});
    }
    std::vector<std::array<int, 3>> dummies(nm);
    for (int u = 0; u < nm; ++u) {
        const std::string &n = s.men[u];
        const auto &h = mh[u];
        dummies[u] = {inst.add_couple("c1_" + n, "c2_" + n, {{h.f, h.g2}, {h.g1, h.g2}}),
                      inst.add_couple("c3_" + n, "c4_" + n, {{h.g2, h.g3}}),
                      inst.add_couple("c5_" + n, "c6_" + n, {{h.g3, h.g1}})};
    }

    auto member = [&](int c, int slot) { return inst.couples[c].members[slot]; };
    for (int w = 0; w < nw; ++w) {
        const auto &hs = out.woman_hospitals[w];
        if (!s.woman_tie[w]) {
            for (int u : s.woman_prefs[w])
                inst.hospitals[hs[0]].prefs.push_back(out.man_doctor[u]);
            continue;
        }
        auto ends = tie_ends(s, pos, w);
        int c = tie_couple[w];
        inst.hospitals[hs[0]].prefs = {member(c, 0), out.man_doctor[ends[0]]};
        inst.hospitals[hs[1]].prefs = {member(c, 0), member(c, 1)};
        inst.hospitals[hs[2]].prefs = {member(c, 1), out.man_doctor[ends[1]]};
    }
    for (int u = 0; u < nm; ++u) {
        const auto &h = mh[u];
        auto [c12, c34, c56] = dummies[u];
        inst.hospitals[h.g1].prefs = {member(c56, 1), member(c12, 0)};
        inst.hospitals[h.g2].prefs = {member(c12, 1), member(c34, 0)};
        inst.hospitals[h.g3].prefs = {member(c34, 1), member(c56, 0)};
        inst.hospitals[h.f].prefs = {out.man_doctor[u], member(c12, 0)};
    }
    require_valid(inst);

    std::string order;
    for (int u : s.man_order)
        order += ' ' + s.men[u];
    out.generated.header = {"generator smti-hrc", "men " + std::to_string(nm) + " women " + std::to_string(nw),
                            "man order" + order};
    return out;
}

HrcMatching smti_witness(const SmtiInstance &s, const SmtiConstruction &con, const SmtiMatching &matching)
{
    const HrcInstance &inst = con.generated.instance;
    Names names(inst);
    HrcMatching m(inst.doctors.size());
    auto pos = order_positions(s);
    int nw = static_cast<int>(s.women.size());
    std::vector<int> partner(nw, kNone);
    for (std::size_t u = 0; u < matching.size(); ++u) {
        int w = matching[u];
        if (w == kNone)
            throw Error("witness needs a complete matching; man " + s.men[u] + " is unmatched");
        partner[w] = static_cast<int>(u);
        const auto &hs = con.woman_hospitals[w];
        int h = hs[0];
        if (s.woman_tie[w] && tie_ends(s, pos, w)[0] != static_cast<int>(u))
            h = hs[2];
        m.assignment[con.man_doctor[u]] = h;
    }
    for (int w = 0; w < nw; ++w) {
        if (!s.woman_tie[w])
            continue;
        const auto &hs = con.woman_hospitals[w];
        int c = inst.doctors[names.doctor("cw1_" + s.women[w])].couple;
        bool first_taken = partner[w] != kNone && tie_ends(s, pos, w)[0] == partner[w];
        if (first_taken)
            assign_pair(m, inst, c, hs[1], hs[2]);
        else
            assign_pair(m, inst, c, hs[0], hs[1]);
    }
    for (const auto &u : s.men) {
        int c12 = inst.doctors[names.doctor("c1_" + u)].couple;
        int c56 = inst.doctors[names.doctor("c5_" + u)].couple;
        assign_pair(m, inst, c12, names.hospital("f_" + u), names.hospital("g2_" + u));
        assign_pair(m, inst, c56, names.hospital("g3_" + u), names.hospital("g1_" + u));
    }
    return m;
}

namespace {

struct SatNames {
    static std::string x(int i) { return "x" + std::to_string(i); }
    static std::string k(int i) { return "k" + std::to_string(i); }
    static std::string y(int i) { return "y" + std::to_string(i); }
    static std::string l(int i) { return "l" + std::to_string(i); }
    static std::string p(int j, int r) { return "p" + std::to_string(j) + "_" + std::to_string(r); }
    static std::string s(int j) { return "s" + std::to_string(j); }
    static std::string t(int j) { return "t" + std::to_string(j); }
    static std::string z(int j, int r) { return "z" + std::to_string(j) + "_" + std::to_string(r); }
    static std::string cl(int j, int s) { return "cl" + std::to_string(j) + "_" + std::to_string(s); }
    static std::string u(int i, int s) { return "u" + std::to_string(i) + "_" + std::to_string(s); }
    static std::string e(int i, int s) { return "e" + std::to_string(i) + "_" + std::to_string(s); }
};

}  // namespace

SatConstruction gen_dual_market_from_sat(const CnfFormula &f, bool enforcers, bool master_lists)
{
    require_22e3sat(f);
    using N = SatNames;
    SatConstruction out;
    HrcInstance &inst = out.generated.instance;
    int n = f.num_vars, m = static_cast<int>(f.clauses.size());
    out.variables = n;
    out.clauses = m;
    out.enforcers = enforcers;

    // occ[i][0|1] = clause positions (j, s) of the positive / negative literal of variable i, in order.
    std::vector<std::array<std::vector<std::pair<int, int>>, 2>> occ(n);
    // The x doctor index attached to each clause position.
    std::vector<std::array<int, 4>> x_of(m + 1);
    for (int j = 1; j <= m; ++j)
        for (int s = 1; s <= 3; ++s) {
            int lit = f.clauses[j - 1][s - 1];
            int i = std::abs(lit) - 1;
            auto &list = occ[i][lit > 0 ? 0 : 1];
            list.emplace_back(j, s);
            int r = static_cast<int>(list.size());
            x_of[j][s] = lit > 0 ? 4 * i + r - 1 : 4 * i + r + 1;
        }
    auto c_of = [&](int idx) {
        int i = idx / 4, r = idx % 4;
        return r < 2 ? occ[i][0][r] : occ[i][1][r - 2];
    };

    std::vector<int> side;
    auto hospital = [&](const std::string &name, int s) {
        side.push_back(s);
        return inst.add_hospital(name, 1);
    };
    std::vector<int> y(4 * n), l(4 * n);
    for (int i = 0; i < 4 * n; ++i)
        y[i] = hospital(N::y(i), 0);
    for (int i = 0; i < 4 * n; ++i)
        l[i] = hospital(N::l(i), 1);
    std::vector<std::array<int, 4>> cl(m + 1);
    std::vector<std::array<int, 6>> z(m + 1);
    for (int j = 1; j <= m; ++j)
        for (int s = 1; s <= 3; ++s)
            cl[j][s] = hospital(N::cl(j, s), 0);
    for (int j = 1; j <= m; ++j)
        for (int r = 1; r <= 5; ++r)
            z[j][r] = hospital(N::z(j, r), r == 1 ? 0 : 1);
    std::vector<std::array<int, 5>> eh(enforcers ? 4 * n : 0);
    for (int i = 0; enforcers && i < 4 * n; ++i)
        for (int s = 1; s <= 4; ++s)
            eh[i][s] = hospital(N::e(i, s), s % 2 == 1 ? 0 : 1);
    out.first_side = side;

    auto cref = [&](int idx) {
        auto [j, s] = c_of(idx);
        return cl[j][s];
    };
    std::vector<int> xc(4 * n);
    for (int i = 0; i < n; ++i) {
        int b = 4 * i;
        std::array<std::vector<HospitalPair>, 4> lists{
            std::vector<HospitalPair>{{y[b], l[b]}, {cref(b), l[b + 1]}, {y[b + 1], l[b + 1]}},
            std::vector<HospitalPair>{{y[b + 1], l[b + 1]}, {cref(b + 1), l[b + 2]}, {y[b + 2], l[b + 2]}},
            std::vector<HospitalPair>{{y[b + 3], l[b + 3]}, {cref(b + 2), l[b + 2]}, {y[b + 2], l[b + 2]}},
            std::vector<HospitalPair>{{y[b], l[b]}, {cref(b + 3), l[b + 3]}, {y[b + 3], l[b + 3]}}};
        for (int r = 0; r < 4; ++r)
            xc[b + r] = inst.add_couple(N::x(b + r), N::k(b + r), lists[r]);
    }
    std::vector<std::array<int, 4>> pc(m + 1);
    std::vector<int> sd(m + 1), td(m + 1);
    for (int j = 1; j <= m; ++j) {
        for (int s = 1; s <= 3; ++s)
            pc[j][s] = inst.add_couple(N::p(j, s), N::p(j, s + 3), {{z[j][1], z[j][2]}, {cl[j][s], z[j][s + 2]}});
    }
    for (int j = 1; j <= m; ++j)
        sd[j] = inst.add_single(N::s(j), {cl[j][1], cl[j][2], cl[j][3]});
    for (int j = 1; j <= m; ++j)
        td[j] = inst.add_single(N::t(j), {z[j][3], z[j][4], z[j][5]});
    out.core_doctors.resize(inst.doctors.size());
    std::iota(out.core_doctors.begin(), out.core_doctors.end(), 0);

    std::vector<std::array<int, 3>> ec(enforcers ? 4 * n : 0);
    for (int i = 0; enforcers && i < 4 * n; ++i) {
        const auto &e = eh[i];
        ec[i][0] = inst.add_couple(N::u(i, 1), N::u(i, 2), {{e[1], e[2]}});
        ec[i][1] = inst.add_couple(N::u(i, 3), N::u(i, 4), {{e[1], e[4]}, {e[3], e[2]}});
        ec[i][2] = inst.add_single(N::u(i, 5), {y[i], e[1]});
    }

    auto mem = [&](int c, int slot) { return inst.couples[c].members[slot]; };
    auto xd = [&](int idx) { return mem(xc[idx], 0); };
    auto kd = [&](int idx) { return mem(xc[idx], 1); };
    auto pd = [&](int j, int r) { return r <= 3 ? mem(pc[j][r], 0) : mem(pc[j][r - 3], 1); };
    for (int i = 0; i < n; ++i) {
        int b = 4 * i;
        inst.hospitals[y[b]].prefs = {xd(b), xd(b + 3)};
        inst.hospitals[y[b + 1]].prefs = {xd(b + 1), xd(b)};
        inst.hospitals[y[b + 2]].prefs = {xd(b + 1), xd(b + 2)};
        inst.hospitals[y[b + 3]].prefs = {xd(b + 2), xd(b + 3)};
        inst.hospitals[l[b]].prefs = {kd(b + 3), kd(b)};
        inst.hospitals[l[b + 1]].prefs = {kd(b), kd(b + 1)};
        inst.hospitals[l[b + 2]].prefs = {kd(b + 2), kd(b + 1)};
        inst.hospitals[l[b + 3]].prefs = {kd(b + 3), kd(b + 2)};
    }
    for (int j = 1; j <= m; ++j) {
        inst.hospitals[z[j][1]].prefs = {pd(j, 1), pd(j, 2), pd(j, 3)};
        inst.hospitals[z[j][2]].prefs = {pd(j, 6), pd(j, 5), pd(j, 4)};
        for (int s = 1; s <= 3; ++s) {
            inst.hospitals[z[j][s + 2]].prefs = {pd(j, s + 3), td[j]};
            inst.hospitals[cl[j][s]].prefs = {pd(j, s), xd(x_of[j][s]), sd[j]};
        }
    }
    for (int i = 0; enforcers && i < 4 * n; ++i) {
        const auto &e = eh[i];
        int u5 = ec[i][2];
        inst.hospitals[y[i]].prefs.push_back(u5);
        inst.hospitals[e[1]].prefs = {u5, mem(ec[i][0], 0), mem(ec[i][1], 0)};
        inst.hospitals[e[2]].prefs = {mem(ec[i][1], 1), mem(ec[i][0], 1)};
        inst.hospitals[e[3]].prefs = {mem(ec[i][1], 0)};
        inst.hospitals[e[4]].prefs = {mem(ec[i][1], 1)};
    }
    require_valid(inst);

    // Master lists.
    for (int i = 0; i < n; ++i) {
        int b = 4 * i;
        for (HospitalPair pr : std::vector<HospitalPair>{{y[b], l[b]},
                                                         {cref(b), l[b + 1]},
                                                         {y[b + 1], l[b + 1]},
                                                         {cref(b + 1), l[b + 2]},
                                                         {cref(b + 3), l[b + 3]},
                                                         {y[b + 3], l[b + 3]},
                                                         {cref(b + 2), l[b + 2]},
                                                         {y[b + 2], l[b + 2]}})
            out.master_pairs.push_back(pr);
    }
    for (int i = 0; enforcers && i < 4 * n; ++i) {
        const auto &e = eh[i];
        for (HospitalPair pr : std::vector<HospitalPair>{{e[1], e[2]}, {e[1], e[4]}, {e[3], e[2]}})
            out.master_pairs.push_back(pr);
    }
    for (int j = 1; j <= m; ++j)
        for (HospitalPair pr : std::vector<HospitalPair>{{z[j][1], z[j][2]}, {cl[j][1], z[j][3]}, {cl[j][2], z[j][4]},
                                                         {cl[j][3], z[j][5]}})
            out.master_pairs.push_back(pr);
    for (int j = 1; j <= m; ++j)
        for (int h : {cl[j][1], cl[j][2], cl[j][3], z[j][3], z[j][4], z[j][5]})
            out.master_hospitals.push_back(h);
    for (int i = 0; enforcers && i < 4 * n; ++i) {
        out.master_hospitals.push_back(y[i]);
        out.master_hospitals.push_back(eh[i][1]);
    }
    for (int j = 1; j <= m; ++j)
        for (int r : {1, 2, 3, 6, 5, 4})
            out.master_doctors.push_back(pd(j, r));
    for (int i = 0; i < n; ++i) {
        int b = 4 * i;
        for (int d : {xd(b + 1), xd(b), xd(b + 2), xd(b + 3), kd(b + 3), kd(b), kd(b + 2), kd(b + 1)})
            out.master_doctors.push_back(d);
    }
    for (int j = 1; j <= m; ++j)
        out.master_doctors.push_back(sd[j]);
    for (int j = 1; j <= m; ++j)
        out.master_doctors.push_back(td[j]);
    for (int i = 0; enforcers && i < 4 * n; ++i)
        for (int d : {ec[i][2], mem(ec[i][0], 0), mem(ec[i][1], 0), mem(ec[i][1], 1), mem(ec[i][0], 1)})
            out.master_doctors.push_back(d);

    auto &header = out.generated.header;
    header = {"generator sat-dual", "variables " + std::to_string(n) + " clauses " + std::to_string(m),
              std::string("enforcers ") + (enforcers ? "yes" : "no")};
    if (master_lists) {
        auto hn = [&](int h) { return inst.hospitals[h].name; };
        std::string pairs = "master pairs:", hs = "master hospitals:", ds = "master doctors:";
        for (auto pr : out.master_pairs)
            pairs += ' ' + hn(pr.first) + ',' + hn(pr.second);
        for (int h : out.master_hospitals)
            hs += ' ' + hn(h);
        for (int d : out.master_doctors)
            ds += ' ' + inst.doctors[d].name;
        header.push_back(pairs);
        header.push_back(hs);
        header.push_back(ds);
    }
    return out;
}

HrcMatching sat_witness(const CnfFormula &f, const SatConstruction &con, const std::vector<bool> &value)
{
    using N = SatNames;
    const HrcInstance &inst = con.generated.instance;
    Names names(inst);
    HrcMatching m(inst.doctors.size());
    int n = f.num_vars, mc = static_cast<int>(f.clauses.size());
    if (static_cast<int>(value.size()) != n)
        throw Error("assignment length differs from the variable count");
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < 4; ++r) {
            int idx = 4 * i + r;
            int to = value[i] ? idx : 4 * i + (r + 1) % 4;
            m.assignment[names.doctor(N::x(idx))] = names.hospital(N::y(to));
            m.assignment[names.doctor(N::k(idx))] = names.hospital(N::l(to));
        }
    for (int j = 1; j <= mc; ++j) {
        int s = 0;
        for (int q = 1; q <= 3 && !s; ++q) {
            int lit = f.clauses[j - 1][q - 1];
            if (value[std::abs(lit) - 1] == (lit > 0))
                s = q;
        }
        if (!s)
            throw Error("assignment does not satisfy clause " + std::to_string(j));
        m.assignment[names.doctor(N::s(j))] = names.hospital(N::cl(j, s));
        m.assignment[names.doctor(N::p(j, s))] = names.hospital(N::z(j, 1));
        m.assignment[names.doctor(N::p(j, s + 3))] = names.hospital(N::z(j, 2));
        for (int b = 1; b <= 3; ++b) {
            if (b == s)
                continue;
            m.assignment[names.doctor(N::p(j, b))] = names.hospital(N::cl(j, b));
            m.assignment[names.doctor(N::p(j, b + 3))] = names.hospital(N::z(j, b + 2));
        }
        m.assignment[names.doctor(N::t(j))] = names.hospital(N::z(j, s + 2));
    }
    for (int i = 0; con.enforcers && i < 4 * n; ++i) {
        m.assignment[names.doctor(N::u(i, 5))] = names.hospital(N::e(i, 1));
        m.assignment[names.doctor(N::u(i, 3))] = names.hospital(N::e(i, 3));
        m.assignment[names.doctor(N::u(i, 4))] = names.hospital(N::e(i, 2));
    }
    return m;
}

namespace {

template <class T>
bool is_sublist(const std::vector<T> &list, const std::vector<T> &master)
{
    auto it = master.begin();
    for (const T &x : list) {
        it = std::find(it, master.end(), x);
        if (it == master.end())
            return false;
        ++it;
    }
    return true;
}

}  // namespace

std::vector<std::string> lint_sat_construction(const SatConstruction &con)
{
    const HrcInstance &inst = con.generated.instance;
    std::vector<std::string> out = validate_instance(inst);
    for (const auto &h : inst.hospitals) {
        if (h.capacity != 1)
            out.push_back("hospital " + h.name + " has capacity other than 1");
        if (h.prefs.size() > 3)
            out.push_back("hospital " + h.name + " lists more than 3 doctors");
        if (!is_sublist(h.prefs, con.master_doctors))
            out.push_back("hospital " + h.name + " does not follow the doctor master list");
    }
    for (std::size_t d = 0; d < inst.doctors.size(); ++d) {
        if (!inst.is_single(static_cast<int>(d)))
            continue;
        const auto &doc = inst.doctors[d];
        if (doc.prefs.size() > 3)
            out.push_back("single " + doc.name + " lists more than 3 hospitals");
        if (!is_sublist(doc.prefs, con.master_hospitals))
            out.push_back("single " + doc.name + " does not follow the hospital master list");
        for (int h : doc.prefs)
            if (con.first_side[h] != con.first_side[doc.prefs.front()])
                out.push_back("single " + doc.name + " lists hospitals on both sides");
    }
    for (const auto &c : inst.couples) {
        const std::string &name = inst.doctors[c.members[0]].name;
        if (c.prefs.size() > 3)
            out.push_back("couple " + name + " lists more than 3 pairs");
        if (!is_sublist(c.prefs, con.master_pairs))
            out.push_back("couple " + name + " does not follow the pair master list");
        for (auto p : c.prefs)
            if (p.first == kNone || p.second == kNone || con.first_side[p.first] != 0 || con.first_side[p.second] != 1)
                out.push_back("couple " + name + " lists a pair across the wrong sides");
    }
    if (!detect_dual_market(inst).is_dual)
        out.push_back("instance is not a dual market");
    return out;
}

MinBpConstruction gen_minbp_from_smti(const SmtiInstance &s, int c_exponent, std::optional<long long> b_override,
                                      std::uint64_t seed)
{
    require_restricted_smti(s);
    if (c_exponent < 1)
        throw Error("the exponent C must be positive");
    if (b_override && *b_override < 1)
        throw Error("B must be positive");
    MinBpConstruction out;
    int nm = static_cast<int>(s.men.size()), nw = static_cast<int>(s.women.size());
    long long edges = 0;
    for (const auto &l : s.man_prefs)
        edges += static_cast<long long>(l.size());
    out.tie_women = static_cast<int>(std::count(s.woman_tie.begin(), s.woman_tie.end(), true));
    long long power = 1;
    bool saturated = false;
    for (int i = 0; i < c_exponent && !saturated; ++i) {
        if (edges != 0 && power > LLONG_MAX / edges)
            saturated = true;
        else
            power *= edges;
    }
    if (!saturated && out.tie_women != 0 && power > (LLONG_MAX - 1) / out.tie_women)
        saturated = true;
    out.b_formula = saturated ? LLONG_MAX : out.tie_women * power + 1;
    out.b = b_override ? *b_override : out.b_formula;
    if (out.b > 100000)
        throw Error("B = " + (saturated ? std::string("overflow") : std::to_string(out.b)) +
                    " is too large to build; pass an override");
    int B = static_cast<int>(out.b);

    Rng rng(seed);
    HrcInstance &inst = out.generated.instance;
    auto &header = out.generated.header;
    header = {"generator minbp", "C " + std::to_string(c_exponent) + " seed " + std::to_string(seed),
              "B " + std::to_string(B) + (b_override ? " (override; formula gives " +
                                                           (saturated ? std::string("overflow") : std::to_string(out.b_formula)) + ")"
                                                     : std::string(" (formula)")),
              "tie women " + std::to_string(out.tie_women) + " edges " + std::to_string(edges)};

    std::vector<int> hu(nm), hw(nw), hw1(nw), hw2(nw);
    for (int u = 0; u < nm; ++u)
        hu[u] = inst.add_hospital("hu_" + s.men[u], 1);
    for (int w = 0; w < nw; ++w) {
        hw[w] = inst.add_hospital("hw_" + s.women[w], 1);
        hw1[w] = inst.add_hospital("hx_" + s.women[w], 1);
        hw2[w] = inst.add_hospital("hy_" + s.women[w], 1);
    }
    // Strict order of each woman's men, ties broken by the coin.
    std::vector<std::vector<int>> wlist = s.woman_prefs;
    for (int w = 0; w < nw; ++w)
        if (s.woman_tie[w]) {
            if (rng.coin())
                std::swap(wlist[w][0], wlist[w][1]);
            header.push_back("tie " + s.women[w] + ": " + s.men[wlist[w][0]] + " before " + s.men[wlist[w][1]]);
        }

    auto edge_name = [&](int u, int w) { return s.men[u] + "_" + s.women[w]; };
    auto copies = [&](int w) { return s.woman_tie[w] ? 1 : B; };
    auto suffix = [&](int w, int k) { return s.woman_tie[w] ? std::string() : "_" + std::to_string(k); };
    // edge_couples[u][w] = first couple index of the edge's copies
    std::vector<std::unordered_map<int, int>> edge_couple(nm);
    for (int u = 0; u < nm; ++u)
        for (int w : s.man_prefs[u]) {
            edge_couple[u][w] = static_cast<int>(inst.couples.size());
            for (int k = 1; k <= copies(w); ++k)
                inst.add_couple("cu_" + edge_name(u, w) + suffix(w, k), "cw_" + edge_name(u, w) + suffix(w, k),
                                {{hu[u], hw[w]}});
        }
    std::vector<int> tri(nw);
    for (int w = 0; w < nw; ++w) {
        tri[w] = static_cast<int>(inst.couples.size());
        const std::string &n = s.women[w];
        for (int k = 1; k <= B; ++k) {
            std::string ks = "_" + std::to_string(k);
            inst.add_couple("t1_" + n + ks, "t2_" + n + ks, {{hw[w], hw1[w]}});
            inst.add_couple("t3_" + n + ks, "t4_" + n + ks, {{hw1[w], hw2[w]}});
            inst.add_couple("t5_" + n + ks, "t6_" + n + ks, {{hw2[w], hw[w]}});
        }
    }
    auto mem = [&](int c, int slot) { return inst.couples[c].members[slot]; };
    for (int u = 0; u < nm; ++u)
        for (int w : s.man_prefs[u])
            for (int k = 0; k < copies(w); ++k)
                inst.hospitals[hu[u]].prefs.push_back(mem(edge_couple[u][w] + k, 0));
    for (int w = 0; w < nw; ++w) {
        auto &hl = inst.hospitals[hw[w]].prefs;
        for (int u : wlist[w])
            for (int k = 0; k < copies(w); ++k)
                hl.push_back(mem(edge_couple[u][w] + k, 1));
        for (int k = 0; k < B; ++k)
            hl.push_back(mem(tri[w] + 3 * k, 0));
        for (int k = 0; k < B; ++k)
            hl.push_back(mem(tri[w] + 3 * k + 2, 1));
        for (int k = 0; k < B; ++k)
            inst.hospitals[hw1[w]].prefs.push_back(mem(tri[w] + 3 * k + 1, 0));
        for (int k = 0; k < B; ++k)
            inst.hospitals[hw1[w]].prefs.push_back(mem(tri[w] + 3 * k, 1));
        for (int k = 0; k < B; ++k)
            inst.hospitals[hw2[w]].prefs.push_back(mem(tri[w] + 3 * k + 2, 0));
        for (int k = 0; k < B; ++k)
            inst.hospitals[hw2[w]].prefs.push_back(mem(tri[w] + 3 * k + 1, 1));
    }
    require_valid(inst);
    return out;
}

HrcMatching minbp_witness(const SmtiInstance &s, const MinBpConstruction &con, const SmtiMatching &matching)
{
    const HrcInstance &inst = con.generated.instance;
    Names names(inst);
    HrcMatching m(inst.doctors.size());
    for (std::size_t u = 0; u < matching.size(); ++u) {
        int w = matching[u];
        if (w == kNone)
            throw Error("witness needs a complete matching; man " + s.men[u] + " is unmatched");
        std::string e = s.men[u] + "_" + s.women[w] + (s.woman_tie[w] ? "" : "_1");
        m.assignment[names.doctor("cu_" + e)] = names.hospital("hu_" + s.men[u]);
        m.assignment[names.doctor("cw_" + e)] = names.hospital("hw_" + s.women[w]);
    }
    for (const auto &w : s.women) {
        m.assignment[names.doctor("t3_" + w + "_1")] = names.hospital("hx_" + w);
        m.assignment[names.doctor("t4_" + w + "_1")] = names.hospital("hy_" + w);
    }
    return m;
}

}  // namespace hrc
