#include "hrc/sf.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hrc/io.hpp"
#include "hrc/model.hpp"
#include "sf_kernel.hpp"

namespace hrc {

int SfInstance::add_node(std::string name, int cap)
{
    node_names.push_back(std::move(name));
    capacity.push_back(cap);
    ranking.emplace_back();
    return static_cast<int>(capacity.size()) - 1;
}

int SfInstance::add_edge(int u, int v)
{
    edges.push_back({u, v});
    return static_cast<int>(edges.size()) - 1;
}

bool HalfMatching::integral() const
{
    return std::none_of(halves.begin(), halves.end(), [](std::uint8_t h) { return h == 1; });
}

std::vector<std::string> validate_sf(const SfInstance &g)
{
    std::vector<std::string> out;
    int n = static_cast<int>(g.node_count());
    if (g.ranking.size() != g.capacity.size())
        return {"ranking count differs from node count"};
    for (int v = 0; v < n; ++v)
        if (g.capacity[v] < 0)
            out.push_back("node " + std::to_string(v) + " has negative capacity");
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> incident(n);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        if (u < 0 || v < 0 || u >= n || v >= n) {
            out.push_back("edge " + std::to_string(e) + " has an unknown endpoint");
            continue;
        }
        if (u == v)
            out.push_back("edge " + std::to_string(e) + " is a loop");
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            out.push_back("edge " + std::to_string(e) + " is parallel to another edge");
        incident[u].push_back(static_cast<int>(e));
        if (u != v)
            incident[v].push_back(static_cast<int>(e));
    }
    for (int v = 0; v < n; ++v) {
        auto a = incident[v];
        auto b = g.ranking[v];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            out.push_back("ranking of node " + std::to_string(v) + " does not list exactly its incident edges");
    }
    return out;
}

std::vector<std::array<int, 2>> edge_ranks(const SfInstance &g)
{
    std::vector<std::array<int, 2>> r(g.edges.size(), {kNone, kNone});
    for (std::size_t v = 0; v < g.node_count(); ++v)
        for (std::size_t i = 0; i < g.ranking[v].size(); ++i) {
            int e = g.ranking[v][i];
            r[e][g.edges[e][0] == static_cast<int>(v) ? 0 : 1] = static_cast<int>(i);
        }
    return r;
}

namespace {

detail::FixturesGraph compact(const SfInstance &g)
{
    detail::FixturesGraph f;
    f.capacity = g.capacity;
    f.edges = g.edges;
    f.start.reserve(g.node_count() + 1);
    f.start.push_back(0);
    for (const auto &list : g.ranking) {
        f.lists.insert(f.lists.end(), list.begin(), list.end());
        f.start.push_back(static_cast<int>(f.lists.size()));
    }
    return f;
}

void require_valid(const SfInstance &g)
{
    auto issues = validate_sf(g);
    if (!issues.empty())
        throw ValidationError("invalid fixtures instance: " + issues.front());
}

// Every edge is doubled (copy 1 above copy 2 at both ends, capacities doubled) and each copy
// is routed through two stubs joined by a six-node connector cycle, so that a stub reaches
// its original node exactly when its partner stub does. Stable integral matchings of the
// result are exactly the stable half-integral matchings of the input.
struct Doubled {
    detail::FixturesGraph graph;
    std::vector<std::array<std::array<int, 2>, 2>> stub_edge;  // [edge][copy][endpoint side]
};

Doubled build_doubled(const SfInstance &g)
{
    Doubled d;
    auto &f = d.graph;
    int n = static_cast<int>(g.node_count());
    int m = static_cast<int>(g.edge_count());
    int nodes = n + 12 * m;
    f.capacity.resize(nodes, 1);
    for (int v = 0; v < n; ++v)
        f.capacity[v] = 2 * g.capacity[v];
    f.edges.reserve(16 * static_cast<std::size_t>(m));
    f.start.resize(nodes + 1);
    f.lists.resize(32 * static_cast<std::size_t>(m));
    d.stub_edge.resize(m);

    int pos = 0;
    for (int v = 0; v < n; ++v) {
        f.start[v] = pos;
        pos += 2 * static_cast<int>(g.ranking[v].size());
    }
    for (int e = 0; e < m; ++e)
        for (int k = 0; k < 2; ++k) {
            int base = n + 12 * e + 6 * k;
            const int sizes[6] = {3, 3, 2, 2, 2, 2};
            for (int i = 0; i < 6; ++i) {
                f.start[base + i] = pos;
                pos += sizes[i];
            }
        }
    f.start[nodes] = pos;

    auto add = [&](int u, int v) {
        f.edges.push_back({u, v});
        return static_cast<int>(f.edges.size()) - 1;
    };
    for (int e = 0; e < m; ++e) {
        auto [u, v] = g.edges[e];
        for (int k = 0; k < 2; ++k) {
            int base = n + 12 * e + 6 * k;
            int su = base, sv = base + 1, a1 = base + 2, b1 = base + 3, a2 = base + 4, b2 = base + 5;
            int eu = add(u, su), ev = add(v, sv);
            int g1 = add(su, a1), g2 = add(a1, b1), g3 = add(b1, sv);
            int g4 = add(sv, a2), g5 = add(a2, b2), g6 = add(b2, su);
            d.stub_edge[e][k] = {eu, ev};
            auto put = [&](int x, std::initializer_list<int> list) {
                std::copy(list.begin(), list.end(), f.lists.begin() + f.start[x]);
            };
            put(su, {g1, eu, g6});
            put(sv, {g4, ev, g3});
            put(a1, {g2, g1});
            put(b1, {g3, g2});
            put(a2, {g5, g4});
            put(b2, {g6, g5});
        }
    }
    for (int v = 0; v < n; ++v) {
        int at = f.start[v];
        for (int e : g.ranking[v]) {
            int side = g.edges[e][0] == v ? 0 : 1;
            f.lists[at++] = d.stub_edge[e][0][side];
            f.lists[at++] = d.stub_edge[e][1][side];
        }
    }
    return d;
}

}  // namespace

std::optional<HalfMatching> stable_fixtures(const SfInstance &g)
{
    require_valid(g);
    auto in = detail::solve_fixtures(compact(g));
    if (!in)
        return std::nullopt;
    HalfMatching out(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out.halves[e] = (*in)[e] ? 2 : 0;
    return out;
}

HalfMatching solve_half_integral(const SfInstance &g)
{
    require_valid(g);
    Doubled d = build_doubled(g);
    auto in = detail::solve_fixtures(d.graph);
    if (!in)
        throw InternalError("doubled fixtures instance has no stable matching");
    HalfMatching out(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        int count = 0;
        for (int k = 0; k < 2; ++k) {
            bool at_u = (*in)[d.stub_edge[e][k][0]];
            bool at_v = (*in)[d.stub_edge[e][k][1]];
            if (at_u != at_v)
                throw InternalError("connector gadget split an edge copy");
            if (k == 1 && at_u && count == 0)
                throw InternalError("second edge copy used without the first");
            count += at_u;
        }
        out.halves[e] = static_cast<std::uint8_t>(count);
    }
    round_even_cycles(g, out);
    return out;
}

std::optional<HalfMatching> decide_integral(const SfInstance &g)
{
    HalfMatching m = solve_half_integral(g);
    if (!m.integral())
        return std::nullopt;
    return m;
}

std::vector<FractionalCycle> fractional_components(const SfInstance &g, const HalfMatching &m)
{
    int n = static_cast<int>(g.node_count());
    std::vector<std::array<int, 2>> half(n, {-1, -1});
    std::vector<int> count(n, 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (m.halves[e] != 1)
            continue;
        for (int x : g.edges[e]) {
            if (count[x] < 2)
                half[x][count[x]] = static_cast<int>(e);
            ++count[x];
        }
    }
    for (int x = 0; x < n; ++x)
        if (count[x] != 0 && count[x] != 2)
            throw Error("node " + std::to_string(x) + " has " + std::to_string(count[x]) + " half edges");

    std::vector<FractionalCycle> out;
    std::vector<char> seen(g.edge_count(), 0);
    for (std::size_t e0 = 0; e0 < g.edge_count(); ++e0) {
        if (m.halves[e0] != 1 || seen[e0])
            continue;
        FractionalCycle cyc;
        int e = static_cast<int>(e0);
        int x = g.edges[e][0];
        do {
            seen[e] = 1;
            cyc.nodes.push_back(x);
            cyc.edges.push_back(e);
            x = g.other(e, x);
            e = half[x][0] == e ? half[x][1] : half[x][0];
        } while (e != static_cast<int>(e0));
        out.push_back(std::move(cyc));
    }
    return out;
}

void round_even_cycles(const SfInstance &g, HalfMatching &m)
{
    for (const auto &cyc : fractional_components(g, m)) {
        if (cyc.odd())
            continue;
        for (std::size_t i = 0; i < cyc.edges.size(); ++i)
            m.halves[cyc.edges[i]] = i % 2 == 0 ? 2 : 0;
    }
}

bool is_bipartite(const SfInstance &g)
{
    int n = static_cast<int>(g.node_count());
    std::vector<int> color(n, -1), stack;
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0)
            continue;
        color[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int e : g.ranking[x]) {
                int y = g.other(e, x);
                if (color[y] < 0) {
                    color[y] = 1 - color[x];
                    stack.push_back(y);
                }
                else if (color[y] == color[x])
                    return false;
            }
        }
    }
    return true;
}

namespace {

std::string node_name(const SfInstance &g, int v)
{
    return v < static_cast<int>(g.node_names.size()) && !g.node_names[v].empty() ? g.node_names[v]
                                                                                  : "v" + std::to_string(v);
}

}  // namespace

std::string write_sf(const SfInstance &g, const HalfMatching *m)
{
    std::ostringstream out;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        out << "sfnode " << node_name(g, static_cast<int>(v)) << ' ' << g.capacity[v] << '\n';
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out << "sfedge e" << e << ' ' << node_name(g, g.edges[e][0]) << ' ' << node_name(g, g.edges[e][1]) << '\n';
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        out << "sfpref " << node_name(g, static_cast<int>(v)) << " :";
        for (int e : g.ranking[v])
            out << " e" << e;
        out << '\n';
    }
    if (m) {
        static const char *label[] = {"0", "1/2", "1"};
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            out << "w e" << e << ' ' << label[m->halves[e]] << '\n';
    }
    return out.str();
}

SfDump parse_sf(std::string_view text)
{
    SfDump dump;
    auto &g = dump.instance;
    std::unordered_map<std::string, int> nodes, edges;
    std::vector<std::vector<Token>> prefs, weights;
    auto fail = [](const Token &t, const std::string &msg) { throw ParseError(t.line, t.column, msg); };
    auto find = [&](const std::unordered_map<std::string, int> &map, const Token &t) {
        auto it = map.find(t.text);
        if (it == map.end())
            fail(t, "undeclared identifier '" + t.text + "'");
        return it->second;
    };
    for (const auto &row : tokenize(text)) {
        const auto &kw = row[0].text;
        if (kw == "sfnode") {
            if (row.size() != 3)
                fail(row[0], "expected 'sfnode <id> <capacity>'");
            int cap = 0;
            auto [p, ec] = std::from_chars(row[2].text.data(), row[2].text.data() + row[2].text.size(), cap);
            if (ec != std::errc() || p != row[2].text.data() + row[2].text.size())
                fail(row[2], "expected an integer");
            if (!nodes.emplace(row[1].text, g.add_node(row[1].text, cap)).second)
                fail(row[1], "duplicate node");
        }
        else if (kw == "sfedge") {
            if (row.size() != 4)
                fail(row[0], "expected 'sfedge <id> <node> <node>'");
            if (!edges.emplace(row[1].text, g.add_edge(find(nodes, row[2]), find(nodes, row[3]))).second)
                fail(row[1], "duplicate edge");
        }
        else if (kw == "sfpref") {
            if (row.size() < 3 || row[2].text != ":")
                fail(row[0], "expected 'sfpref <node> : <edge>...'");
            prefs.push_back(row);
        }
        else if (kw == "w") {
            if (row.size() != 3)
                fail(row[0], "expected 'w <edge> 0|1/2|1'");
            weights.push_back(row);
        }
        else {
            fail(row[0], "unknown record '" + kw + "'");
        }
    }
    for (const auto &row : prefs) {
        int v = find(nodes, row[1]);
        for (std::size_t i = 3; i < row.size(); ++i)
            g.ranking[v].push_back(find(edges, row[i]));
    }
    require_valid(g);
    if (!weights.empty()) {
        dump.matching = HalfMatching(g.edge_count());
        for (const auto &row : weights) {
            int e = find(edges, row[1]);
            const auto &w = row[2].text;
            if (w == "0")
                dump.matching->halves[e] = 0;
            else if (w == "1/2")
                dump.matching->halves[e] = 1;
            else if (w == "1")
                dump.matching->halves[e] = 2;
            else
                fail(row[2], "weight must be 0, 1/2 or 1");
        }
    }
    return dump;
}

}  // namespace hrc
