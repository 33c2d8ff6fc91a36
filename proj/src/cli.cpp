#include "hrc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "hrc/classify.hpp"
#include "hrc/generators.hpp"
#include "hrc/io.hpp"
#include "hrc/oracle.hpp"
#include "hrc/reductions.hpp"
#include "hrc/stability.hpp"

namespace hrc::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string digest(const std::string &text)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    bool enabled = false;
    std::string subcommand;
    std::string input_digest;
    std::string mode = "-";
    std::string status = "-";
    std::optional<HrcInstance> instance;
    Clock::time_point start = Clock::now();

    void print(std::ostream &err) const
    {
        if (!enabled)
            return;
        err << "report subcommand " << subcommand << " digest " << (input_digest.empty() ? "-" : input_digest)
            << " mode " << mode << " status " << status;
        if (instance) {
            InstanceIndex index(*instance);
            auto profiles = classify_all(*instance, index);
            std::map<CoupleType, int> types;
            for (const auto &p : profiles)
                ++types[p.sub_responsive && p.sub_complete ? p.type : CoupleType::Other];
            err << " doctors " << instance->doctors.size() << " couples " << instance->couples.size() << " type-a "
                << types[CoupleType::A] << " type-b " << types[CoupleType::B] << " type-c " << types[CoupleType::C]
                << " other " << types[CoupleType::Other] << " hospitals " << instance->hospitals.size() << " m "
                << instance->preference_length();
        }
        double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        err << " time-ms " << ms << '\n';
    }
};

std::string hospital_list(const HrcInstance &inst, const std::vector<int> &hs)
{
    std::string s;
    for (int h : hs)
        s += (s.empty() ? "" : ",") + inst.hospitals[h].name;
    return s.empty() ? "-" : s;
}

SolveMode parse_mode(const std::string &m)
{
    if (m == "near")
        return SolveMode::Near;
    if (m == "exact")
        return SolveMode::Exact;
    return SolveMode::Auto;
}

std::vector<int> parse_edge_list(const MultigraphInstance &g, const std::string &text)
{
    std::map<std::string, int> ids;
    for (std::size_t e = 0; e < g.edge_names.size(); ++e)
        ids.emplace(g.edge_names[e], static_cast<int>(e));
    std::vector<int> out;
    for (const auto &row : tokenize(text)) {
        if (row[0].text == "status")
            continue;
        if (row[0].text != "edge" || row.size() != 2)
            throw ParseError(row[0].line, row[0].column, "expected 'edge <eid>'");
        auto it = ids.find(row[1].text);
        if (it == ids.end())
            throw ParseError(row[1].line, row[1].column, "unknown edge '" + row[1].text + "'");
        out.push_back(it->second);
    }
    return out;
}

std::string edge_lines(const MultigraphInstance &g, std::vector<int> edges)
{
    std::sort(edges.begin(), edges.end(), [&](int a, int b) { return g.edge_names[a] < g.edge_names[b]; });
    std::string s;
    for (int e : edges)
        s += "edge " + g.edge_names[e] + '\n';
    return s;
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot write " + path);
    f << text;
}

struct Options {
    std::string kind = "hrc";
    std::string file, second;
    std::string mode = "auto";
    std::string dump_sf;
    bool seedless = false;
    bool enumerate = false, minbp = false, rural = false;
    std::size_t limit = SIZE_MAX;
    long long budget_nodes = 20'000'000;
    bool typed = false;
    std::string output;
    // gen
    std::uint64_t seed = 1;
    GenParams gen;
    std::string types = "any", classes = "separable,half-separable,connected";
    bool enforcers = false, master_lists = false;
    int c_exp = 1;
    long long b_override = 0;
};

int cmd_validate(const Options &o, std::ostream &out, Report &rep)
{
    std::string text = read_file(o.file);
    rep.input_digest = digest(text);
    std::vector<std::string> issues;
    if (o.kind == "hrc")
        issues = validate_instance(parse_hrc_structure(text));
    else if (o.kind == "multigraph")
        parse_multigraph(text);
    else if (o.kind == "smti")
        issues = validate_smti(parse_smti(text));
    else
        parse_dimacs(text);
    for (const auto &i : issues)
        out << "violation " << i << '\n';
    rep.status = issues.empty() ? "valid" : "invalid";
    if (issues.empty())
        out << "valid\n";
    return issues.empty() ? kOk : kFound;
}

int cmd_classify(const Options &o, std::ostream &out, Report &rep)
{
    std::string text = read_file(o.file);
    rep.input_digest = digest(text);
    HrcInstance inst = parse_hrc(text);
    rep.instance = inst;
    InstanceIndex index(inst);
    for (std::size_t c = 0; c < inst.couples.size(); ++c) {
        auto p = classify_couple(inst, index, static_cast<int>(c));
        const auto &mem = inst.couples[c].members;
        out << "couple " << inst.doctors[mem[0]].name << ' ' << inst.doctors[mem[1]].name << " responsive "
            << (p.sub_responsive ? "yes" : "no") << " complete " << (p.sub_complete ? "yes" : "no") << " class "
            << to_string(p.sep_class);
        if (p.sep_class == SepClass::HalfSeparable)
            out << ' ' << inst.doctors[mem[p.alone_slot]].name;
        out << " type " << to_string(p.type);
        if (p.common_hospital != kNone)
            out << ' ' << inst.hospitals[p.common_hospital].name;
        if (p.sub_responsive)
            out << " orders " << hospital_list(inst, p.order[0]) << ' ' << hospital_list(inst, p.order[1]);
        out << '\n';
    }
    DualMarket dm = detect_dual_market(inst);
    if (dm.is_dual) {
        std::vector<int> s0, s1;
        for (std::size_t h = 0; h < inst.hospitals.size(); ++h)
            (dm.side[h] == 0 ? s0 : s1).push_back(static_cast<int>(h));
        out << "dual yes " << hospital_list(inst, s0) << ' ' << hospital_list(inst, s1) << '\n';
    }
    else {
        out << "dual no\n";
    }
    rep.status = "ok";
    return kOk;
}

int cmd_solve_multigraph(const std::string &text, std::ostream &out, Report &rep)
{
    MultigraphInstance g = parse_multigraph(text);
    rep.mode = "exact";
    auto edges = solve_multigraph(g);
    if (!edges) {
        rep.status = "none";
        out << "status none\n";
        return kFound;
    }
    if (!multigraph_blocking_edges(g, *edges).empty())
        throw InternalError("multigraph result has a blocking edge");
    rep.status = "stable";
    out << "status stable\n" << edge_lines(g, *edges);
    return kOk;
}

int cmd_solve(const Options &o, std::ostream &out, Report &rep)
{
    std::string text = read_file(o.file);
    rep.input_digest = digest(text);
    if (o.kind == "multigraph")
        return cmd_solve_multigraph(text, out, rep);
    HrcInstance inst = parse_hrc(text);
    rep.instance = inst;
    SolveResult res = solve(inst, parse_mode(o.mode));
    rep.mode = to_string(res.mode_used);
    if (!o.dump_sf.empty())
        write_text(o.dump_sf, write_sf(res.reduction.sf, &res.sf_matching));
    std::string body;
    if (!res.stable) {
        rep.status = "none";
        out << "status none\n";
        return kFound;
    }
    InstanceIndex index(inst);
    for (std::size_t h = 0; h < inst.hospitals.size(); ++h)
        if (std::abs(res.capacity[h] - inst.hospitals[h].capacity) > 1)
            throw InternalError("capacity of " + inst.hospitals[h].name + " moved by more than 1");
    try {
        if (!hrc_blocking_pairs(inst, index, res.matching, res.capacity).empty())
            throw InternalError("result has a blocking pair");
    }
    catch (const InfeasibleMatching &e) {
        throw InternalError("result is infeasible: " + e.issues().front());
    }
    rep.status = "stable";
    out << "status stable\n" << write_matching(inst, res.matching, &res.capacity);
    return kOk;
}

int cmd_check(const Options &o, std::ostream &out, std::ostream &err, Report &rep)
{
    std::string text = read_file(o.file);
    rep.input_digest = digest(text);
    std::string mtext = read_file(o.second);
    try {
        if (o.kind == "multigraph") {
            MultigraphInstance g = parse_multigraph(text);
            auto blocking = multigraph_blocking_edges(g, parse_edge_list(g, mtext));
            for (int e : blocking)
                out << "block edge " << g.edge_names[e] << '\n';
            rep.status = blocking.empty() ? "stable" : "unstable";
            return blocking.empty() ? kOk : kFound;
        }
        HrcInstance inst = parse_hrc(text);
        MatchingFile mf = parse_matching(inst, mtext);
        InstanceIndex index(inst);
        auto blocking = hrc_blocking_pairs(inst, index, mf.matching, mf.capacity);
        for (const auto &b : blocking)
            out << format_blocking(inst, b) << '\n';
        rep.status = blocking.empty() ? "stable" : "unstable";
        return blocking.empty() ? kOk : kFound;
    }
    catch (const InfeasibleMatching &e) {
        for (const auto &i : e.issues())
            err << "infeasible: " << i << '\n';
        rep.status = "infeasible";
        return kFound;
    }
}

int cmd_oracle(const Options &o, std::ostream &out, Report &rep)
{
    std::string text = read_file(o.file);
    rep.input_digest = digest(text);
    HrcInstance inst = parse_hrc(text);
    rep.instance = inst;
    OracleBudget budget;
    budget.max_nodes = o.budget_nodes;
    bool any = o.enumerate || o.minbp || o.rural;
    int code = kOk;
    if (o.enumerate || !any) {
        auto all = enumerate_stable(inst, o.limit, budget);
        out << "stable " << all.size() << '\n';
        for (std::size_t i = 0; i < all.size(); ++i)
            out << "matching " << i + 1 << '\n' << write_matching(inst, all[i]);
        if (all.empty())
            code = kFound;
    }
    if (o.minbp) {
        MinBp r = min_bp(inst, budget);
        out << "min-bp " << r.value << '\n' << write_matching(inst, r.witness);
    }
    if (o.rural) {
        RuralReport r = verify_rural_hospitals(inst, budget);
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        out << "rural matchings " << r.matchings << " singles " << yn(r.same_singles) << " counts "
            << yn(r.same_counts) << " undersubscribed " << yn(r.same_undersubscribed) << '\n';
        if (!r.holds())
            code = kFound;
    }
    rep.status = code == kOk ? "ok" : "found";
    return code;
}

std::vector<CoupleType> parse_types(const std::string &s)
{
    std::vector<CoupleType> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) {
        if (t == "a")
            out.push_back(CoupleType::A);
        else if (t == "b")
            out.push_back(CoupleType::B);
        else if (t == "c")
            out.push_back(CoupleType::C);
        else if (t == "any")
            out.push_back(CoupleType::Other);
        else
            throw Error("unknown couple type '" + t + "' (use a, b, c or any)");
    }
    return out;
}

std::vector<SepClass> parse_classes(const std::string &s)
{
    std::vector<SepClass> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) {
        if (t == "separable")
            out.push_back(SepClass::Separable);
        else if (t == "half-separable")
            out.push_back(SepClass::HalfSeparable);
        else if (t == "connected")
            out.push_back(SepClass::Connected);
        else
            throw Error("unknown class '" + t + "' (use separable, half-separable or connected)");
    }
    return out;
}

void emit(const Options &o, std::ostream &out, const std::string &text)
{
    if (o.output.empty())
        out << text;
    else
        write_text(o.output, text);
}

int cmd_gen(const std::string &which, Options o, std::ostream &out, Report &rep)
{
    rep.subcommand = "gen " + which;
    if (which == "random") {
        o.gen.seed = o.seed;
        o.gen.types = parse_types(o.types);
        o.gen.classes = parse_classes(o.classes);
        Generated g = gen_random(o.gen);
        emit(o, out, write_generated(g));
    }
    else if (which == "smti-hrc") {
        std::string text = read_file(o.file);
        rep.input_digest = digest(text);
        emit(o, out, write_generated(gen_from_smti(parse_smti(text)).generated));
    }
    else if (which == "sat-dual") {
        std::string text = read_file(o.file);
        rep.input_digest = digest(text);
        SatConstruction con = gen_dual_market_from_sat(parse_dimacs(text), o.enforcers, o.master_lists);
        auto lints = lint_sat_construction(con);
        if (!lints.empty())
            throw InternalError("construction failed its lint: " + lints.front());
        emit(o, out, write_generated(con.generated));
    }
    else {
        std::string text = read_file(o.file);
        rep.input_digest = digest(text);
        std::optional<long long> b;
        if (o.b_override > 0)
            b = o.b_override;
        emit(o, out, write_generated(gen_minbp_from_smti(parse_smti(text), o.c_exp, b, o.seed).generated));
    }
    rep.status = "ok";
    return kOk;
}

int cmd_dump_sf(const Options &o, std::ostream &out, Report &rep)
{
    std::string text = read_file(o.file);
    rep.input_digest = digest(text);
    HrcInstance inst = parse_hrc(text);
    rep.instance = inst;
    InstanceIndex index(inst);
    auto profiles = classify_all(inst, index);
    Reduction r = o.typed ? reduce_typed(inst, index, profiles) : reduce_general(inst, index, profiles);
    HalfMatching m = solve_half_integral(r.sf);
    rep.mode = o.typed ? "exact" : "near";
    rep.status = "ok";
    out << write_sf(r.sf, &m);
    return kOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Hospitals/residents with couples: classification, stable solving, checking and generators", "hrc"};
    app.require_subcommand(1);
    bool report_flag = false;
    app.add_flag("--report", report_flag, "Print a run report to stderr");
    Options o;
    const std::vector<std::string> kinds{"hrc", "multigraph", "smti", "cnf"};

    auto *validate = app.add_subcommand("validate", "Parse an instance and list invariant violations");
    validate->add_option("file", o.file, "Instance file")->required();
    validate->add_option("--kind", o.kind, "Input format")->check(CLI::IsMember(kinds));

    auto *classify = app.add_subcommand("classify", "Classify every couple and test for a dual market");
    classify->add_option("file", o.file, "Instance file")->required();

    auto *solve_cmd = app.add_subcommand("solve", "Find a stable matching");
    solve_cmd->add_option("file", o.file, "Instance file")->required();
    solve_cmd->add_option("--mode", o.mode, "near, exact or auto")->check(CLI::IsMember({"near", "exact", "auto"}));
    solve_cmd->add_option("--kind", o.kind, "hrc or multigraph")->check(CLI::IsMember({"hrc", "multigraph"}));
    solve_cmd->add_option("--dump-sf", o.dump_sf, "Write the reduced fixtures instance and its solution here");
    solve_cmd->add_flag("--seedless", o.seedless, "Deterministic output (always the case; kept for scripts)");

    auto *check = app.add_subcommand("check", "List the blocking pairs of a matching");
    check->add_option("file", o.file, "Instance file")->required();
    check->add_option("matching", o.second, "Matching file")->required();
    check->add_option("--kind", o.kind, "hrc or multigraph")->check(CLI::IsMember({"hrc", "multigraph"}));

    auto *oracle = app.add_subcommand("oracle", "Brute-force stable matchings, minimum blocking pairs, rural checks");
    oracle->add_option("file", o.file, "Instance file")->required();
    oracle->add_flag("--enumerate", o.enumerate, "List every stable matching");
    oracle->add_flag("--min-bp", o.minbp, "Minimum number of blocking pairs over all matchings");
    oracle->add_flag("--rural", o.rural, "Check the rural-hospitals properties");
    oracle->add_option("--limit", o.limit, "Stop after this many stable matchings");
    oracle->add_option("--budget-nodes", o.budget_nodes, "Search node budget");

    auto *gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    auto *gen_random_cmd = gen->add_subcommand("random", "Random sub-responsive, sub-complete instance");
    gen_random_cmd->add_option("--seed", o.seed, "Random seed");
    gen_random_cmd->add_option("--singles", o.gen.singles, "Single doctors");
    gen_random_cmd->add_option("--couples", o.gen.couples, "Couples");
    gen_random_cmd->add_option("--hospitals", o.gen.hospitals, "Hospitals");
    gen_random_cmd->add_option("--cap-min", o.gen.min_capacity, "Smallest capacity");
    gen_random_cmd->add_option("--cap-max", o.gen.max_capacity, "Largest capacity");
    gen_random_cmd->add_option("--list-min", o.gen.min_list, "Shortest individual list");
    gen_random_cmd->add_option("--list-max", o.gen.max_list, "Longest individual list");
    gen_random_cmd->add_option("--types", o.types, "Comma list of couple types: a, b, c, any");
    gen_random_cmd->add_option("--classes", o.classes, "Comma list: separable, half-separable, connected");
    gen_random_cmd->add_flag("--dual", o.gen.dual_market, "Plant a dual market");
    gen_random_cmd->add_option("-o,--output", o.output, "Output file");
    auto *gen_smti = gen->add_subcommand("smti-hrc", "Construction from a restricted SMTI instance");
    gen_smti->add_option("file", o.file, "SMTI file")->required();
    gen_smti->add_option("-o,--output", o.output, "Output file");
    auto *gen_sat = gen->add_subcommand("sat-dual", "Dual-market construction from a (2,2)-E3-SAT formula");
    gen_sat->add_option("file", o.file, "DIMACS file")->required();
    gen_sat->add_flag("--enforcers", o.enforcers, "Add enforcer gadgets");
    gen_sat->add_flag("--master-lists", o.master_lists, "Record the master lists in the header");
    gen_sat->add_option("-o,--output", o.output, "Output file");
    auto *gen_minbp = gen->add_subcommand("minbp", "Minimum blocking pairs construction from a restricted SMTI instance");
    gen_minbp->add_option("file", o.file, "SMTI file")->required();
    gen_minbp->add_option("--c-exp", o.c_exp, "Exponent C")->required();
    gen_minbp->add_option("--b-override", o.b_override, "Replication factor B to use instead of the formula");
    gen_minbp->add_option("--seed", o.seed, "Seed for tie breaking");
    gen_minbp->add_option("-o,--output", o.output, "Output file");

    auto *dump = app.add_subcommand("dump-sf", "Print the reduced fixtures instance and its half-integral solution");
    dump->add_option("file", o.file, "Instance file")->required();
    dump->add_flag("--typed", o.typed, "Use the split-hospital reduction");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Report rep;
    rep.enabled = report_flag;
    int code = kOk;
    try {
        if (validate->parsed()) {
            rep.subcommand = "validate";
            code = cmd_validate(o, out, rep);
        }
        else if (classify->parsed()) {
            rep.subcommand = "classify";
            code = cmd_classify(o, out, rep);
        }
        else if (solve_cmd->parsed()) {
            rep.subcommand = "solve";
            code = cmd_solve(o, out, rep);
        }
        else if (check->parsed()) {
            rep.subcommand = "check";
            code = cmd_check(o, out, err, rep);
        }
        else if (oracle->parsed()) {
            rep.subcommand = "oracle";
            code = cmd_oracle(o, out, rep);
        }
        else if (gen->parsed()) {
            for (auto *sub : {gen_random_cmd, gen_smti, gen_sat, gen_minbp})
                if (sub->parsed())
                    code = cmd_gen(sub->get_name(), o, out, rep);
        }
        else if (dump->parsed()) {
            rep.subcommand = "dump-sf";
            code = cmd_dump_sf(o, out, rep);
        }
    }
    catch (const InternalError &e) {
        err << "internal error: " << e.what() << '\n';
        rep.status = "internal-error";
        code = kInternal;
    }
    catch (const ParseError &e) {
        std::string msg = e.what();
        msg = msg.substr(msg.find(": ") + 2);
        err << o.file << ':' << e.line() << ':' << e.column() << ": " << msg << '\n';
        rep.status = "error";
        code = kUsage;
    }
    catch (const ClassificationError &e) {
        err << "classification: " << e.what() << '\n';
        rep.status = "rejected";
        code = kUsage;
    }
    catch (const BudgetExceeded &e) {
        err << "budget: " << e.what() << '\n';
        rep.status = "budget";
        code = kUsage;
    }
    catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        rep.status = "error";
        code = kUsage;
    }
    rep.print(err);
    return code;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    std::vector<const char *> argv{"hrc"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hrc::cli
