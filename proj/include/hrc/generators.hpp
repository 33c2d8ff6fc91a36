#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrc/classify.hpp"
#include "hrc/model.hpp"

namespace hrc {

// An instance plus header lines (written as '#' comments) recording how it was produced.
struct Generated {
    HrcInstance instance;
    std::vector<std::string> header;
};

std::string write_generated(const Generated &generated);

struct GenParams {
    std::uint64_t seed = 1;
    int singles = 6;
    int couples = 3;
    int hospitals = 4;
    int min_capacity = 1;
    int max_capacity = 2;
    int min_list = 1;  // individual list length, per single and per couple member
    int max_list = 3;
    // Couple shapes drawn uniformly; CoupleType::Other means unrestricted acceptable sets.
    std::vector<CoupleType> types{CoupleType::Other};
    // Separability classes drawn uniformly for couples that are not type-b or type-c.
    std::vector<SepClass> classes{SepClass::Separable, SepClass::HalfSeparable, SepClass::Connected};
    bool dual_market = false;
};

// Every couple is sub-responsive and sub-complete: its joint list is the product of two sampled
// individual orders, sorted by the ranks of one slot and then the other, with '-' last.
// Throws Error when the requested mix cannot be built.
Generated gen_random(const GenParams &params);

// Random (2,2)-E3-SAT formula over n variables (n a multiple of 3), no variable twice in a clause.
CnfFormula gen_22e3sat(std::uint64_t seed, int variables);
// Throws ShapeError unless every clause has 3 literals and every literal occurs exactly twice.
void require_22e3sat(const CnfFormula &formula);
// Exhaustive search; index i holds the value of variable i + 1.
std::optional<std::vector<bool>> satisfying_assignment(const CnfFormula &formula);

// Random SMTI instance of the restricted shape: men strict with at most 3 women, women strict
// with at most 3 men or a tie of exactly 2.
SmtiInstance gen_smti(std::uint64_t seed, int men, int women, double density = 0.5);
// Throws ShapeError unless the restricted shape holds.
void require_restricted_smti(const SmtiInstance &smti);

// man -> woman, kNone when unmatched.
using SmtiMatching = std::vector<int>;

struct SmtiConstruction {
    Generated generated;
    std::vector<int> man_doctor;  // per man, the single doctor standing for him
    // Per woman: the hospital(s) standing for her; {h_w} for strict women, {h1, h2, h3} for tie women.
    std::vector<std::vector<int>> woman_hospitals;
};

// Hospitals/residents instance with sub-responsive, sub-complete couples that has a stable
// matching iff the SMTI instance has a complete stable matching.
SmtiConstruction gen_from_smti(const SmtiInstance &smti);
// The stable matching built from a complete stable SMTI matching.
HrcMatching smti_witness(const SmtiInstance &smti, const SmtiConstruction &construction, const SmtiMatching &matching);

struct SatConstruction {
    Generated generated;
    int variables = 0;
    int clauses = 0;
    bool enforcers = false;
    std::vector<int> first_side;  // per hospital, 0 for the side holding first couple slots
    // Master lists, best first: hospital pairs for couples, hospitals for singles, doctors for hospitals.
    std::vector<HospitalPair> master_pairs;
    std::vector<int> master_hospitals;
    std::vector<int> master_doctors;
    // Doctors belonging to the formula gadgets (everyone outside the enforcer gadgets).
    std::vector<int> core_doctors;
};

// Dual-market instance from a (2,2)-E3-SAT formula; with enforcers every stable matching is complete
// on the core, and the formula is satisfiable iff a stable matching exists.
SatConstruction gen_dual_market_from_sat(const CnfFormula &formula, bool enforcers, bool master_lists);
HrcMatching sat_witness(const CnfFormula &formula, const SatConstruction &construction,
                        const std::vector<bool> &assignment);

// Structural checks of the dual-market construction; returns the violations found.
std::vector<std::string> lint_sat_construction(const SatConstruction &construction);

struct MinBpConstruction {
    Generated generated;
    long long b = 0;     // replication factor in use
    long long b_formula = 0;  // n_t * m^C + 1, saturated at LLONG_MAX
    int tie_women = 0;
};

// Instance whose minimum number of blocking pairs is at most n_t when the SMTI instance has a
// complete stable matching and at least B otherwise. Ties are broken by a seeded coin.
MinBpConstruction gen_minbp_from_smti(const SmtiInstance &smti, int c_exponent, std::optional<long long> b_override,
                                      std::uint64_t seed = 1);
HrcMatching minbp_witness(const SmtiInstance &smti, const MinBpConstruction &construction,
                          const SmtiMatching &matching);

}  // namespace hrc
