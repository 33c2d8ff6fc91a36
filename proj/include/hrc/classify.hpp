#pragma once

#include <array>
#include <string>
#include <vector>

#include "hrc/model.hpp"

namespace hrc {

enum class SepClass { None, Separable, HalfSeparable, Connected };
enum class CoupleType { A, B, C, Other };

struct CoupleProfile {
    bool sub_responsive = false;
    bool sub_complete = false;
    // Witness individual orders over each member's acceptable hospitals; empty unless sub-responsive.
    std::array<std::vector<int>, 2> order;
    SepClass sep_class = SepClass::None;
    int alone_slot = kNone;  // half-separable: the member that may be assigned alone
    CoupleType type = CoupleType::Other;
    int common_hospital = kNone;  // type-b and type-c

    // Rank of h in the member's witness order, kNone if absent.
    int rank(int slot, int h) const;
};

CoupleProfile classify_couple(const HrcInstance &instance, const InstanceIndex &index, int couple);
std::vector<CoupleProfile> classify_all(const HrcInstance &instance, const InstanceIndex &index);

std::string to_string(SepClass c);
std::string to_string(CoupleType t);

// Slots in normalized role order: for type-b/c couples the member ranked lower by the
// common hospital comes first; otherwise the declared order.
std::array<int, 2> normalized_slots(const HrcInstance &instance, const InstanceIndex &index, int couple,
                                    const CoupleProfile &profile);

struct DualMarket {
    bool is_dual = false;
    std::vector<int> side;  // per hospital: 0 for H1, 1 for H2
};

DualMarket detect_dual_market(const HrcInstance &instance);

}  // namespace hrc
