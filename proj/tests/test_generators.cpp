#include <doctest.h>

#include <random>

#include "hrc/generators.hpp"
#include "hrc/io.hpp"
#include "hrc/oracle.hpp"
#include "hrc/reductions.hpp"
#include "hrc/stability.hpp"
#include "support.hpp"

using namespace hrc;

namespace {

bool complete_on(const HrcMatching &m, const std::vector<int> &doctors)
{
    for (int d : doctors)
        if (m.assignment[d] == kNone)
            return false;
    return true;
}

std::size_t longest_list(const HrcInstance &inst)
{
    std::size_t best = 0;
    for (const auto &d : inst.doctors)
        best = std::max(best, d.prefs.size());
    for (const auto &c : inst.couples)
        best = std::max(best, c.prefs.size());
    for (const auto &h : inst.hospitals)
        best = std::max(best, h.prefs.size());
    return best;
}

}  // namespace

TEST_CASE("random generator is deterministic and valid")
{
    GenParams p;
    p.seed = 5;
    p.singles = 5;
    p.couples = 4;
    p.hospitals = 4;
    std::string a = write_generated(gen_random(p));
    CHECK(a == write_generated(gen_random(p)));
    p.seed = 6;
    CHECK(a != write_generated(gen_random(p)));
    CHECK(a.rfind("# generator random", 0) == 0);
    CHECK(validate_instance(parse_hrc(a)).empty());
}

TEST_CASE("random generator honours the requested couple shapes")
{
    std::mt19937_64 rng(101);
    for (auto type : {CoupleType::A, CoupleType::B, CoupleType::C}) {
        for (int t = 0; t < 60; ++t) {
            GenParams p;
            p.seed = rng();
            p.singles = static_cast<int>(rng() % 4);
            p.couples = 1 + static_cast<int>(rng() % 4);
            p.hospitals = 3 + static_cast<int>(rng() % 3);
            p.types = {type};
            HrcInstance inst = gen_random(p).instance;
            CHECK(validate_instance(inst).empty());
            InstanceIndex index(inst);
            for (const auto &prof : classify_all(inst, index)) {
                CHECK(prof.sub_responsive);
                CHECK(prof.sub_complete);
                CHECK(prof.type == type);
            }
        }
    }
    for (auto cls : {SepClass::Separable, SepClass::HalfSeparable, SepClass::Connected}) {
        GenParams p;
        p.seed = rng();
        p.couples = 6;
        p.hospitals = 4;
        p.classes = {cls};
        HrcInstance inst = gen_random(p).instance;
        InstanceIndex index(inst);
        for (const auto &prof : classify_all(inst, index))
            CHECK(prof.sep_class == cls);
    }
}

TEST_CASE("impossible mixes are rejected")
{
    GenParams p;
    p.hospitals = 0;
    p.singles = 2;
    CHECK_THROWS_AS(gen_random(p), Error);
    GenParams q;
    q.hospitals = 1;
    q.couples = 1;
    q.types = {CoupleType::A};
    CHECK_THROWS_AS(gen_random(q), Error);
}

TEST_CASE("(2,2)-E3-SAT formulas have the right shape")
{
    for (int n : {3, 6, 9}) {
        CnfFormula f = gen_22e3sat(static_cast<std::uint64_t>(n), n);
        CHECK(f.num_vars == n);
        CHECK(static_cast<int>(f.clauses.size()) == 4 * n / 3);
        CHECK_NOTHROW(require_22e3sat(f));
        auto a = satisfying_assignment(f);
        if (a)
            for (const auto &c : f.clauses)
                CHECK(std::any_of(c.begin(), c.end(), [&](int l) { return (*a)[std::abs(l) - 1] == (l > 0); }));
    }
    CnfFormula bad = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    CHECK_THROWS_AS(require_22e3sat(bad), ShapeError);
}

TEST_CASE("restricted SMTI shape")
{
    for (int t = 0; t < 20; ++t) {
        SmtiInstance s = gen_smti(static_cast<std::uint64_t>(t), 4, 4);
        CHECK_NOTHROW(require_restricted_smti(s));
    }
    SmtiInstance wide = parse_smti("man a : w x y z\nwoman w : a\nwoman x : a\nwoman y : a\nwoman z : a\n");
    CHECK_THROWS_AS(require_restricted_smti(wide), ShapeError);
}

TEST_CASE("smti construction: one man, one woman")
{
    SmtiInstance s = parse_smti("man u : w\nwoman w : u\n");
    SmtiConstruction con = gen_from_smti(s);
    const HrcInstance &inst = con.generated.instance;
    CHECK(validate_instance(inst).empty());
    HrcMatching m = smti_witness(s, con, {0});
    CHECK(hrc_blocking_pairs(inst, m).empty());
    CHECK(solve(inst, SolveMode::Near).stable);
}

TEST_CASE("smti construction: structure and witness on random cores")
{
    int witnessed = 0;
    for (int t = 0; t < 60; ++t) {
        SmtiInstance s = gen_smti(static_cast<std::uint64_t>(t) + 200, 3, 3, 0.7);
        SmtiConstruction con = gen_from_smti(s);
        const HrcInstance &inst = con.generated.instance;
        INFO(write_smti(s));
        CHECK(validate_instance(inst).empty());
        CHECK(longest_list(inst) <= 4);
        for (const auto &h : inst.hospitals)
            CHECK(h.capacity == 1);
        InstanceIndex index(inst);
        for (const auto &prof : classify_all(inst, index)) {
            CHECK(prof.sub_responsive);
            CHECK(prof.sub_complete);
        }
        for (const auto &sm : support::smti_complete_stable(s)) {
            HrcMatching m = smti_witness(s, con, sm);
            CHECK(hrc_blocking_pairs(inst, m).empty());
            ++witnessed;
        }
    }
    CHECK(witnessed > 0);
}

TEST_CASE("smti construction has a stable matching iff the core has a complete stable matching")
{
    int yes = 0, no = 0;
    for (int t = 0; t < 25; ++t) {
        SmtiInstance s = gen_smti(static_cast<std::uint64_t>(t) + 500, 2, 2, 0.8);
        SmtiConstruction con = gen_from_smti(s);
        bool core = !support::smti_complete_stable(s).empty();
        bool stable = !enumerate_stable(con.generated.instance, 1).empty();
        INFO(write_smti(s));
        CHECK(core == stable);
        (core ? yes : no) += 1;
    }
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("sat construction: lints, dual market and complete stable witness")
{
    int done = 0;
    for (std::uint64_t seed = 1; done < 6 && seed < 200; ++seed) {
        CnfFormula f = gen_22e3sat(seed, 3 + 3 * static_cast<int>(seed % 2));
        auto a = satisfying_assignment(f);
        if (!a)
            continue;
        ++done;
        for (bool enforcers : {false, true}) {
            SatConstruction con = gen_dual_market_from_sat(f, enforcers, true);
            const HrcInstance &inst = con.generated.instance;
            CHECK(lint_sat_construction(con).empty());
            CHECK(longest_list(inst) <= 3);
            DualMarket dm = detect_dual_market(inst);
            REQUIRE(dm.is_dual);
            for (const auto &c : inst.couples)
                for (auto p : c.prefs)
                    CHECK(dm.side[p.first] != dm.side[p.second]);
            HrcMatching m = sat_witness(f, con, *a);
            CHECK(hrc_blocking_pairs(inst, m).empty());
            CHECK(complete_on(m, con.core_doctors));
        }
    }
    CHECK(done == 6);
}

TEST_CASE("sat construction rejects formulas of the wrong shape")
{
    CHECK_THROWS_AS(gen_dual_market_from_sat(parse_dimacs("p cnf 3 1\n1 2 3 0\n"), false, false), ShapeError);
}

TEST_CASE("master lists are recorded in the header")
{
    CnfFormula f = gen_22e3sat(3, 3);
    std::string with = write_generated(gen_dual_market_from_sat(f, false, true).generated);
    std::string without = write_generated(gen_dual_market_from_sat(f, false, false).generated);
    CHECK(with.find("# master doctors:") != std::string::npos);
    CHECK(without.find("# master") == std::string::npos);
}

TEST_CASE("min-bp construction: shape")
{
    SmtiInstance s = parse_smti("man a : x y\nman b : x\nwoman x : ( a b )\nwoman y : a\n");
    MinBpConstruction con = gen_minbp_from_smti(s, 1, 3);
    const HrcInstance &inst = con.generated.instance;
    CHECK(con.b == 3);
    CHECK(con.tie_women == 1);
    CHECK(con.b_formula == 1 * 3 + 1);
    CHECK(validate_instance(inst).empty());
    for (const auto &d : inst.doctors)
        CHECK(d.couple != kNone);
    for (const auto &h : inst.hospitals)
        CHECK(h.capacity == 1);
    InstanceIndex index(inst);
    for (std::size_t c = 0; c < inst.couples.size(); ++c) {
        CHECK(inst.couples[c].prefs.size() == 1);
        CHECK(classify_couple(inst, index, static_cast<int>(c)).type == CoupleType::A);
    }
    std::string text = write_generated(con.generated);
    CHECK(text.find("override") != std::string::npos);
    CHECK(text.find("# tie x:") != std::string::npos);
    CHECK_THROWS_AS(gen_minbp_from_smti(s, 40, std::nullopt), Error);
}

TEST_CASE("min-bp construction: witness and oracle gap")
{
    SmtiInstance yes = parse_smti("man a : x y\nman b : x\nwoman x : ( a b )\nwoman y : a\n");
    REQUIRE_FALSE(support::smti_complete_stable(yes).empty());
    MinBpConstruction cy = gen_minbp_from_smti(yes, 1, 3);
    HrcMatching w = minbp_witness(yes, cy, support::smti_complete_stable(yes).front());
    CHECK(static_cast<int>(hrc_blocking_pairs(cy.generated.instance, w).size()) <= cy.tie_women);
    CHECK(min_bp(cy.generated.instance).value <= cy.tie_women);

    SmtiInstance no = parse_smti("man a : x\nman b : x\nwoman x : a b\nwoman y :\n");
    REQUIRE(support::smti_complete_stable(no).empty());
    MinBpConstruction cn = gen_minbp_from_smti(no, 1, 3);
    CHECK(min_bp(cn.generated.instance).value >= 3);
}
