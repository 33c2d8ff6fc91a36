#pragma once

#include <cstddef>
#include <vector>

#include "hrc/model.hpp"

namespace hrc {

struct OracleBudget {
    long long max_nodes = 20'000'000;
    double max_seconds = 120.0;
};

struct OracleStats {
    long long nodes = 0;
    long long leaves = 0;
    double seconds = 0.0;
};

// Every stable matching under the instance capacities, up to limit, by backtracking over
// per-unit choices (a single's list plus unassigned, a couple's joint list plus (-,-)).
// Throws BudgetExceeded when the search outgrows the budget.
std::vector<HrcMatching> enumerate_stable(const HrcInstance &instance, std::size_t limit = SIZE_MAX,
                                          const OracleBudget &budget = {}, OracleStats *stats = nullptr);

struct MinBp {
    int value = 0;
    HrcMatching witness;
};

// Minimum number of blocking pairs over all feasible matchings.
MinBp min_bp(const HrcInstance &instance, const OracleBudget &budget = {}, OracleStats *stats = nullptr);

struct RuralReport {
    std::size_t matchings = 0;
    bool same_singles = true;          // the same single doctors are matched
    bool same_counts = true;           // every hospital fills the same number of posts
    bool same_undersubscribed = true;  // an undersubscribed hospital has the same assignees throughout
    bool holds() const { return same_singles && same_counts && same_undersubscribed; }
};

RuralReport verify_rural_hospitals(const HrcInstance &instance, const OracleBudget &budget = {});
RuralReport rural_report(const HrcInstance &instance, const std::vector<HrcMatching> &stable);

}  // namespace hrc
