#pragma once

#include <string>
#include <vector>

#include "hrc/model.hpp"
#include "hrc/sf.hpp"

namespace hrc {

// A blocking pair: a single with a hospital (pair.first), or a couple with a hospital pair.
// label is the first applicable clause: "1" for singles, "2a" "2b" "3a" "3b" "3c" "3d" for couples.
struct BlockingRecord {
    int doctor = kNone;
    int couple = kNone;
    HospitalPair pair;
    std::string label;

    friend bool operator==(const BlockingRecord &, const BlockingRecord &) = default;
};

// Throws InfeasibleMatching listing every feasibility violation under the given capacities.
void check_feasible(const HrcInstance &instance, const InstanceIndex &index, const HrcMatching &matching,
                    const std::vector<int> &capacity);

std::vector<BlockingRecord> hrc_blocking_pairs(const HrcInstance &instance, const InstanceIndex &index,
                                               const HrcMatching &matching, const std::vector<int> &capacity);
std::vector<BlockingRecord> hrc_blocking_pairs(const HrcInstance &instance, const HrcMatching &matching);

std::vector<int> instance_capacities(const HrcInstance &instance);
std::string format_blocking(const HrcInstance &instance, const BlockingRecord &record);

// Edges of weight below 1 that are not dominated at either endpoint. Throws InfeasibleMatching
// when a load exceeds its capacity.
std::vector<int> sf_stability_check(const SfInstance &instance, const HalfMatching &matching);

// Edges outside the b-matching that block it; a loop occupies two positions at its node.
std::vector<int> multigraph_blocking_edges(const MultigraphInstance &instance, const std::vector<int> &matching);

}  // namespace hrc
