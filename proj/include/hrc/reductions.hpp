#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hrc/classify.hpp"
#include "hrc/model.hpp"
#include "hrc/sf.hpp"

namespace hrc {

struct ReductionMap {
    std::vector<int> doctor_node;                   // per doctor
    std::vector<std::array<int, 2>> hospital_nodes;  // per hospital; second is kNone unless split
    std::vector<int> node_hospital;                 // per SF node, kNone if not a hospital copy
    std::vector<int> node_doctor;                   // per SF node, kNone if not a doctor
    std::vector<std::array<int, 2>> couple_slots;   // per couple, member slots in role order
};

struct Reduction {
    SfInstance sf;
    ReductionMap map;
};

// Near-feasible reduction: singles, hospitals, couple members, partner edges for
// half-separable couples and connector cycles for connected couples.
// Requires every couple sub-responsive and sub-complete.
Reduction reduce_general(const HrcInstance &instance, const InstanceIndex &index,
                         const std::vector<CoupleProfile> &profiles);

// Exact reduction: each hospital split into a (q-1)-copy and a 1-copy.
// Requires every couple of type-a, type-b or type-c.
Reduction reduce_typed(const HrcInstance &instance, const InstanceIndex &index,
                       const std::vector<CoupleProfile> &profiles);

struct NearFeasible {
    HrcMatching matching;
    std::vector<int> capacity;  // adjusted capacities q'
};

// Each doctor takes its best hospital among positive-weight edges; hospitals saturated in
// the fractional solution get capacity |M(h)|.
NearFeasible round_to_near_feasible(const HrcInstance &instance, const Reduction &reduction,
                                    const HalfMatching &fractional);

// Doctors matched to a hospital copy go to that hospital; everyone else is unassigned.
HrcMatching extract_hrc_matching(const HrcInstance &instance, const Reduction &reduction,
                                 const HalfMatching &integral);

enum class SolveMode { Near, Exact, Auto };

struct SolveResult {
    bool stable = false;   // false only in exact mode, when no stable matching exists
    SolveMode mode_used = SolveMode::Near;
    HrcMatching matching;
    std::vector<int> capacity;  // capacities the matching is stable under
    Reduction reduction;
    HalfMatching sf_matching;
};

// Auto picks exact when every couple is type-a/b/c, else near.
SolveResult solve(const HrcInstance &instance, SolveMode mode);
std::string to_string(SolveMode mode);

// Each node becomes a hospital and each edge a connected couple with the single pair (u, v).
HrcInstance multigraph_to_hrc(const MultigraphInstance &instance);

// A stable b-matching as a list of edge ids, or nullopt when none exists.
std::optional<std::vector<int>> solve_multigraph(const MultigraphInstance &instance);

}  // namespace hrc
