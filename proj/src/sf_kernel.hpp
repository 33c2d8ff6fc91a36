#pragma once

#include <array>
#include <optional>
#include <vector>

namespace hrc::detail {

// Compact form of a fixtures instance: lists[start[x]..start[x+1]) are x's edges, best first.
struct FixturesGraph {
    std::vector<int> capacity;
    std::vector<std::array<int, 2>> edges;
    std::vector<int> start;
    std::vector<int> lists;
};

// Per-edge membership of a stable integral b-matching, or nullopt when none exists.
std::optional<std::vector<char>> solve_fixtures(const FixturesGraph &graph);

}  // namespace hrc::detail
