#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hrc {

// Stable Fixtures instance: simple graph, node capacities, strict edge rankings.
struct SfInstance {
    std::vector<std::string> node_names;
    std::vector<int> capacity;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<int>> ranking;  // per node, incident edge ids best first

    int add_node(std::string name, int cap);
    int add_edge(int u, int v);
    std::size_t node_count() const { return capacity.size(); }
    std::size_t edge_count() const { return edges.size(); }
    int other(int e, int x) const { return edges[e][0] == x ? edges[e][1] : edges[e][0]; }
};

// Edge weights in half units: 0, 1 (= 1/2) or 2 (= 1).
struct HalfMatching {
    std::vector<std::uint8_t> halves;

    HalfMatching() = default;
    explicit HalfMatching(std::size_t edges) : halves(edges, 0) {}
    bool integral() const;
    friend bool operator==(const HalfMatching &, const HalfMatching &) = default;
};

std::vector<std::string> validate_sf(const SfInstance &instance);

// Rank of edge e at each endpoint, in edge order.
std::vector<std::array<int, 2>> edge_ranks(const SfInstance &instance);

// A stable integral b-matching, or nullopt if none exists (proposal phase plus rotation elimination).
std::optional<HalfMatching> stable_fixtures(const SfInstance &instance);

// A stable half-integral b-matching; always exists. Even 1/2-cycles are rounded.
HalfMatching solve_half_integral(const SfInstance &instance);

// Integral stable b-matching taken from solve_half_integral when its output is integral.
std::optional<HalfMatching> decide_integral(const SfInstance &instance);

struct FractionalCycle {
    std::vector<int> nodes;
    std::vector<int> edges;  // edges[i] joins nodes[i] and nodes[i+1 mod k]
    bool odd() const { return edges.size() % 2 == 1; }
};

// Components of the 1/2-edges; throws if some node has a number of 1/2-edges other than 0 or 2.
std::vector<FractionalCycle> fractional_components(const SfInstance &instance, const HalfMatching &matching);

// Rounds every even 1/2-cycle alternately; stability is preserved.
void round_even_cycles(const SfInstance &instance, HalfMatching &matching);

bool is_bipartite(const SfInstance &instance);

// sfnode / sfedge / sfpref records, plus "w" records when a matching is given.
std::string write_sf(const SfInstance &instance, const HalfMatching *matching = nullptr);

struct SfDump {
    SfInstance instance;
    std::optional<HalfMatching> matching;
};

SfDump parse_sf(std::string_view text);

}  // namespace hrc
