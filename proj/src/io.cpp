#include "hrc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace hrc {

std::vector<std::vector<Token>> tokenize(std::string_view text)
{
    std::vector<std::vector<Token>> lines;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++line;
        std::string_view row = text.substr(pos, end - pos);
        std::vector<Token> tokens;
        std::size_t i = 0;
        while (i < row.size()) {
            char ch = row[i];
            if (ch == '#')
                break;
            if (ch == ' ' || ch == '\t' || ch == '\r') {
                ++i;
                continue;
            }
            if (ch == ':' || ch == '(' || ch == ')') {
                tokens.push_back({std::string(1, ch), line, static_cast<int>(i) + 1});
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < row.size() && row[j] != ' ' && row[j] != '\t' && row[j] != '\r' && row[j] != '#' &&
                   row[j] != ':' && row[j] != '(' && row[j] != ')')
                ++j;
            tokens.push_back({std::string(row.substr(i, j - i)), line, static_cast<int>(i) + 1});
            i = j;
        }
        if (!tokens.empty())
            lines.push_back(std::move(tokens));
        pos = end + 1;
    }
    return lines;
}

namespace {

[[noreturn]] void fail(const Token &t, const std::string &message)
{
    throw ParseError(t.line, t.column, message);
}

int parse_int(const Token &t)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        fail(t, "expected an integer, got '" + t.text + "'");
    return value;
}

void expect_colon(const std::vector<Token> &row, std::size_t at)
{
    if (row.size() <= at)
        fail(row.back(), "expected ':' after '" + row.back().text + "'");
    if (row[at].text != ":")
        fail(row[at], "expected ':', got '" + row[at].text + "'");
}

void expect_identifier(const Token &t)
{
    if (t.text == ":" || t.text == "(" || t.text == ")" || t.text == "-" ||
        t.text.find(',') != std::string::npos)
        fail(t, "expected an identifier, got '" + t.text + "'");
}

using NameMap = std::unordered_map<std::string, int>;

int lookup(const NameMap &map, const Token &t, const char *what)
{
    auto it = map.find(t.text);
    if (it == map.end())
        fail(t, std::string("undeclared ") + what + " '" + t.text + "'");
    return it->second;
}

}  // namespace

HrcInstance parse_hrc_structure(std::string_view text)
{
    struct PairTok {
        Token tok;
        std::string a, b;
    };
    struct DoctorRec {
        std::vector<Token> list;
        std::vector<PairTok> pairs;
    };

    HrcInstance inst;
    NameMap hospitals, doctors;
    std::vector<std::pair<Token, std::vector<Token>>> hprefs;
    std::vector<DoctorRec> singles;  // indexed by doctor, only singles used
    std::vector<std::vector<PairTok>> couple_pairs;

    for (const auto &row : tokenize(text)) {
        const std::string &kw = row[0].text;
        if (kw == "hospital") {
            if (row.size() != 3)
                fail(row[0], "expected 'hospital <id> <capacity>'");
            expect_identifier(row[1]);
            int h = inst.add_hospital(row[1].text, parse_int(row[2]));
            hospitals.emplace(row[1].text, h);
        }
        else if (kw == "single") {
            if (row.size() < 2)
                fail(row[0], "expected 'single <id> : <hospital>...'");
            expect_identifier(row[1]);
            expect_colon(row, 2);
            int d = inst.add_single(row[1].text);
            doctors.emplace(row[1].text, d);
            singles.resize(inst.doctors.size());
            singles[d].list.assign(row.begin() + 3, row.end());
        }
        else if (kw == "couple") {
            if (row.size() < 3)
                fail(row[0], "expected 'couple <id> <id> : <pair>...'");
            expect_identifier(row[1]);
            expect_identifier(row[2]);
            expect_colon(row, 3);
            std::vector<PairTok> pairs;
            for (std::size_t i = 4; i < row.size(); ++i) {
                const auto &t = row[i];
                auto comma = t.text.find(',');
                if (comma == std::string::npos || t.text.find(',', comma + 1) != std::string::npos ||
                    comma == 0 || comma + 1 == t.text.size())
                    fail(t, "expected a pair '<hospital-or-->,<hospital-or-->', got '" + t.text + "'");
                PairTok p{t, t.text.substr(0, comma), t.text.substr(comma + 1)};
                if (p.a == "-" && p.b == "-")
                    fail(t, "(-,-) pair forbidden");
                pairs.push_back(std::move(p));
            }
            int c = inst.add_couple(row[1].text, row[2].text);
            doctors.emplace(row[1].text, inst.couples[c].members[0]);
            doctors.emplace(row[2].text, inst.couples[c].members[1]);
            couple_pairs.push_back(std::move(pairs));
        }
        else if (kw == "hpref") {
            if (row.size() < 2)
                fail(row[0], "expected 'hpref <hospital> : <doctor>...'");
            expect_colon(row, 2);
            hprefs.emplace_back(row[1], std::vector<Token>(row.begin() + 3, row.end()));
        }
        else {
            fail(row[0], "unknown record '" + kw + "'");
        }
    }

    singles.resize(inst.doctors.size());
    for (std::size_t d = 0; d < inst.doctors.size(); ++d)
        for (const auto &t : singles[d].list) {
            expect_identifier(t);
            inst.doctors[d].prefs.push_back(lookup(hospitals, t, "hospital"));
        }
    for (std::size_t c = 0; c < inst.couples.size(); ++c)
        for (const auto &p : couple_pairs[c]) {
            auto resolve = [&](const std::string &name) {
                if (name == "-")
                    return kNone;
                Token t = p.tok;
                t.text = name;
                return lookup(hospitals, t, "hospital");
            };
            inst.couples[c].prefs.push_back({resolve(p.a), resolve(p.b)});
        }
    std::vector<bool> has_pref(inst.hospitals.size(), false);
    for (const auto &[head, list] : hprefs) {
        int h = lookup(hospitals, head, "hospital");
        if (has_pref[h])
            fail(head, "second hpref record for '" + head.text + "'");
        has_pref[h] = true;
        for (const auto &t : list) {
            expect_identifier(t);
            inst.hospitals[h].prefs.push_back(lookup(doctors, t, "doctor"));
        }
    }
    return inst;
}

HrcInstance parse_hrc(std::string_view text)
{
    HrcInstance inst = parse_hrc_structure(text);
    auto issues = validate_instance(inst);
    if (!issues.empty())
        throw ValidationError(issues.front());
    return inst;
}

std::string write_hrc(const HrcInstance &inst)
{
    std::ostringstream out;
    auto hname = [&](int h) { return h == kNone ? std::string("-") : inst.hospitals[h].name; };
    for (const auto &h : inst.hospitals)
        out << "hospital " << h.name << ' ' << h.capacity << '\n';
    for (const auto &d : inst.doctors) {
        if (d.couple == kNone) {
            out << "single " << d.name << " :";
            for (int h : d.prefs)
                out << ' ' << hname(h);
            out << '\n';
        }
        else if (d.slot == 0) {
            const auto &c = inst.couples[d.couple];
            out << "couple " << d.name << ' ' << inst.doctors[c.members[1]].name << " :";
            for (auto p : c.prefs)
                out << ' ' << hname(p.first) << ',' << hname(p.second);
            out << '\n';
        }
    }
    for (const auto &h : inst.hospitals) {
        if (h.prefs.empty())
            continue;
        out << "hpref " << h.name << " :";
        for (int d : h.prefs)
            out << ' ' << inst.doctors[d].name;
        out << '\n';
    }
    return out.str();
}

MultigraphInstance parse_multigraph(std::string_view text)
{
    MultigraphInstance g;
    NameMap nodes, edges;
    struct EdgeRec {
        Token name, u, v;
    };
    std::vector<EdgeRec> edge_recs;
    std::vector<std::pair<Token, std::vector<Token>>> prefs;
    for (const auto &row : tokenize(text)) {
        const std::string &kw = row[0].text;
        if (kw == "node") {
            if (row.size() != 3)
                fail(row[0], "expected 'node <id> <capacity>'");
            expect_identifier(row[1]);
            if (nodes.count(row[1].text))
                fail(row[1], "duplicate node '" + row[1].text + "'");
            nodes.emplace(row[1].text, g.add_node(row[1].text, parse_int(row[2])));
        }
        else if (kw == "edge") {
            if (row.size() != 4)
                fail(row[0], "expected 'edge <id> <node> <node>'");
            expect_identifier(row[1]);
            edge_recs.push_back({row[1], row[2], row[3]});
        }
        else if (kw == "npref") {
            if (row.size() < 2)
                fail(row[0], "expected 'npref <node> : <edge>...'");
            expect_colon(row, 2);
            prefs.emplace_back(row[1], std::vector<Token>(row.begin() + 3, row.end()));
        }
        else {
            fail(row[0], "unknown record '" + kw + "'");
        }
    }
    for (const auto &e : edge_recs) {
        if (edges.count(e.name.text))
            fail(e.name, "duplicate edge '" + e.name.text + "'");
        int id = g.add_edge(e.name.text, lookup(nodes, e.u, "node"), lookup(nodes, e.v, "node"));
        edges.emplace(e.name.text, id);
    }
    std::vector<bool> seen(g.node_names.size(), false);
    for (const auto &[head, list] : prefs) {
        int v = lookup(nodes, head, "node");
        if (seen[v])
            fail(head, "second npref record for '" + head.text + "'");
        seen[v] = true;
        for (const auto &t : list)
            g.ranking[v].push_back(lookup(edges, t, "edge"));
    }
    auto issues = validate_multigraph(g);
    if (!issues.empty())
        throw ValidationError(issues.front());
    return g;
}

std::string write_multigraph(const MultigraphInstance &g)
{
    std::ostringstream out;
    for (std::size_t v = 0; v < g.node_names.size(); ++v)
        out << "node " << g.node_names[v] << ' ' << g.capacity[v] << '\n';
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        out << "edge " << g.edge_names[e] << ' ' << g.node_names[g.edges[e][0]] << ' '
            << g.node_names[g.edges[e][1]] << '\n';
    for (std::size_t v = 0; v < g.node_names.size(); ++v) {
        out << "npref " << g.node_names[v] << " :";
        for (int e : g.ranking[v])
            out << ' ' << g.edge_names[e];
        out << '\n';
    }
    return out.str();
}

SmtiInstance parse_smti(std::string_view text)
{
    SmtiInstance s;
    NameMap men, women;
    struct Rec {
        Token head;
        std::vector<Token> list;
        bool tie = false;
    };
    std::vector<Rec> man_recs, woman_recs;
    std::vector<Token> order;
    bool have_order = false;
    for (const auto &row : tokenize(text)) {
        const std::string &kw = row[0].text;
        if (kw == "man" || kw == "woman") {
            if (row.size() < 2)
                fail(row[0], "expected '" + kw + " <id> : <id>...'");
            expect_identifier(row[1]);
            expect_colon(row, 2);
            Rec r{row[1], {}, false};
            std::size_t i = 3;
            if (kw == "woman" && i < row.size() && row[i].text == "(") {
                r.tie = true;
                ++i;
                while (i < row.size() && row[i].text != ")")
                    r.list.push_back(row[i++]);
                if (i >= row.size())
                    fail(row.back(), "unterminated tie");
                if (i + 1 != row.size())
                    fail(row[i + 1], "unexpected token after tie");
            }
            else {
                for (; i < row.size(); ++i) {
                    expect_identifier(row[i]);
                    r.list.push_back(row[i]);
                }
            }
            if (kw == "man") {
                if (men.count(r.head.text))
                    fail(r.head, "duplicate man '" + r.head.text + "'");
                men.emplace(r.head.text, static_cast<int>(s.men.size()));
                s.men.push_back(r.head.text);
                man_recs.push_back(std::move(r));
            }
            else {
                if (women.count(r.head.text))
                    fail(r.head, "duplicate woman '" + r.head.text + "'");
                women.emplace(r.head.text, static_cast<int>(s.women.size()));
                s.women.push_back(r.head.text);
                woman_recs.push_back(std::move(r));
            }
        }
        else if (kw == "manorder") {
            expect_colon(row, 1);
            if (have_order)
                fail(row[0], "second manorder record");
            have_order = true;
            order.assign(row.begin() + 2, row.end());
        }
        else {
            fail(row[0], "unknown record '" + kw + "'");
        }
    }
    for (const auto &r : man_recs) {
        s.man_prefs.emplace_back();
        for (const auto &t : r.list)
            s.man_prefs.back().push_back(lookup(women, t, "woman"));
    }
    for (const auto &r : woman_recs) {
        s.woman_prefs.emplace_back();
        s.woman_tie.push_back(r.tie);
        for (const auto &t : r.list)
            s.woman_prefs.back().push_back(lookup(men, t, "man"));
    }
    if (have_order) {
        for (const auto &t : order)
            s.man_order.push_back(lookup(men, t, "man"));
    }
    else {
        s.man_order.resize(s.men.size());
        std::iota(s.man_order.begin(), s.man_order.end(), 0);
    }
    auto issues = validate_smti(s);
    if (!issues.empty())
        throw ValidationError(issues.front());
    return s;
}

std::string write_smti(const SmtiInstance &s)
{
    std::ostringstream out;
    for (std::size_t m = 0; m < s.men.size(); ++m) {
        out << "man " << s.men[m] << " :";
        for (int w : s.man_prefs[m])
            out << ' ' << s.women[w];
        out << '\n';
    }
    for (std::size_t w = 0; w < s.women.size(); ++w) {
        out << "woman " << s.women[w] << " :";
        if (s.woman_tie[w])
            out << " (";
        for (int m : s.woman_prefs[w])
            out << ' ' << s.men[m];
        if (s.woman_tie[w])
            out << " )";
        out << '\n';
    }
    out << "manorder :";
    for (int m : s.man_order)
        out << ' ' << s.men[m];
    out << '\n';
    return out.str();
}

CnfFormula parse_dimacs(std::string_view text)
{
    CnfFormula f;
    bool header = false;
    int declared_clauses = 0;
    std::vector<int> clause;
    for (const auto &row : tokenize(text)) {
        if (row[0].text == "c")
            continue;
        if (row[0].text == "p") {
            if (header || row.size() != 4 || row[1].text != "cnf")
                fail(row[0], "expected a single 'p cnf <vars> <clauses>' header");
            f.num_vars = parse_int(row[2]);
            declared_clauses = parse_int(row[3]);
            header = true;
            continue;
        }
        if (!header)
            fail(row[0], "clause before the 'p cnf' header");
        for (const auto &t : row) {
            int lit = parse_int(t);
            if (lit == 0) {
                f.clauses.push_back(std::move(clause));
                clause.clear();
            }
            else {
                if (std::abs(lit) > f.num_vars)
                    fail(t, "literal out of range");
                clause.push_back(lit);
            }
        }
    }
    if (!header)
        throw ParseError(1, 1, "missing 'p cnf' header");
    if (!clause.empty())
        f.clauses.push_back(std::move(clause));
    if (static_cast<int>(f.clauses.size()) != declared_clauses)
        throw ParseError(1, 1, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                   std::to_string(f.clauses.size()));
    return f;
}

std::string write_dimacs(const CnfFormula &f)
{
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto &c : f.clauses) {
        for (int lit : c)
            out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

MatchingFile parse_matching(const HrcInstance &inst, std::string_view text)
{
    MatchingFile mf;
    mf.matching = HrcMatching(inst.doctors.size());
    mf.capacity.resize(inst.hospitals.size());
    for (std::size_t h = 0; h < inst.hospitals.size(); ++h)
        mf.capacity[h] = inst.hospitals[h].capacity;
    NameMap doctors, hospitals;
    for (std::size_t d = 0; d < inst.doctors.size(); ++d)
        doctors.emplace(inst.doctors[d].name, static_cast<int>(d));
    for (std::size_t h = 0; h < inst.hospitals.size(); ++h)
        hospitals.emplace(inst.hospitals[h].name, static_cast<int>(h));
    std::vector<bool> seen(inst.doctors.size(), false);
    for (const auto &row : tokenize(text)) {
        const std::string &kw = row[0].text;
        if (kw == "match") {
            if (row.size() != 3)
                fail(row[0], "expected 'match <doctor> <hospital-or-->'");
            int d = lookup(doctors, row[1], "doctor");
            if (seen[d])
                fail(row[1], "doctor '" + row[1].text + "' matched twice");
            seen[d] = true;
            mf.matching.assignment[d] = row[2].text == "-" ? kNone : lookup(hospitals, row[2], "hospital");
        }
        else if (kw == "capacity") {
            if (row.size() != 3)
                fail(row[0], "expected 'capacity <hospital> <capacity>'");
            mf.capacity[lookup(hospitals, row[1], "hospital")] = parse_int(row[2]);
        }
        else if (kw != "status" && kw != "mode") {
            fail(row[0], "unknown record '" + kw + "'");
        }
    }
    return mf;
}

std::string write_matching(const HrcInstance &inst, const HrcMatching &matching, const std::vector<int> *capacity)
{
    std::ostringstream out;
    if (capacity) {
        std::vector<int> hs(inst.hospitals.size());
        std::iota(hs.begin(), hs.end(), 0);
        std::sort(hs.begin(), hs.end(),
                  [&](int a, int b) { return inst.hospitals[a].name < inst.hospitals[b].name; });
        for (int h : hs)
            if ((*capacity)[h] != inst.hospitals[h].capacity)
                out << "capacity " << inst.hospitals[h].name << ' ' << (*capacity)[h] << '\n';
    }
    std::vector<int> ds(inst.doctors.size());
    std::iota(ds.begin(), ds.end(), 0);
    std::sort(ds.begin(), ds.end(), [&](int a, int b) { return inst.doctors[a].name < inst.doctors[b].name; });
    for (int d : ds) {
        int h = matching.assignment[d];
        out << "match " << inst.doctors[d].name << ' ' << (h == kNone ? std::string("-") : inst.hospitals[h].name)
            << '\n';
    }
    return out.str();
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hrc
