#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hrc {

inline constexpr int kNone = -1;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string &message);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Instance breaks a structural invariant (duplicate ids, mutual acceptability, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A couple falls outside the class an operation requires.
class ClassificationError : public Error {
public:
    ClassificationError(int couple, const std::string &message);
    int couple() const { return couple_; }

private:
    int couple_;
};

class InfeasibleMatching : public Error {
public:
    explicit InfeasibleMatching(std::vector<std::string> issues);
    const std::vector<std::string> &issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// Generator input of the wrong shape (e.g. not a (2,2)-E3 formula).
class ShapeError : public Error {
public:
    using Error::Error;
};

// A result failed its own consistency check; always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

// Joint assignment of a couple; kNone marks an unassigned member.
struct HospitalPair {
    int first = kNone;
    int second = kNone;

    int operator[](int slot) const { return slot == 0 ? first : second; }
    friend auto operator<=>(const HospitalPair &, const HospitalPair &) = default;
};

struct Hospital {
    std::string name;
    int capacity = 1;
    std::vector<int> prefs;  // doctor indices, best first
};

struct Doctor {
    std::string name;
    int couple = kNone;  // index into HrcInstance::couples, or kNone for a single
    int slot = 0;        // 0 for the first member, 1 for the second
    std::vector<int> prefs;  // hospitals, singles only
};

struct Couple {
    std::array<int, 2> members{kNone, kNone};
    std::vector<HospitalPair> prefs;
};

struct HrcInstance {
    std::vector<Doctor> doctors;
    std::vector<Couple> couples;
    std::vector<Hospital> hospitals;

    int add_hospital(std::string name, int capacity);
    int add_single(std::string name, std::vector<int> prefs = {});
    int add_couple(std::string first, std::string second, std::vector<HospitalPair> prefs = {});

    bool is_single(int d) const { return doctors[d].couple == kNone; }
    int find_doctor(std::string_view name) const;
    int find_hospital(std::string_view name) const;
    std::size_t preference_length() const;  // total length of hospital lists
};

// Derived lookups: hospital ranks and acceptable sets.
class InstanceIndex {
public:
    explicit InstanceIndex(const HrcInstance &instance);

    // Rank of doctor d in h's list, kNone if absent.
    int rank(int h, int d) const;
    // Acceptable hospitals of d; for couple members the projection of the joint list.
    const std::vector<int> &acceptable(int d) const { return acceptable_[d]; }
    bool accepts(int d, int h) const;
    // Position of pair p in the couple's list, kNone if absent.
    int pair_rank(int couple, HospitalPair p) const;

private:
    std::vector<std::unordered_map<int, int>> rank_;
    std::vector<std::vector<int>> acceptable_;
    std::vector<std::unordered_map<long long, int>> pair_rank_;
};

// Assignment of every doctor to a hospital or kNone.
struct HrcMatching {
    std::vector<int> assignment;

    HrcMatching() = default;
    explicit HrcMatching(std::size_t doctors) : assignment(doctors, kNone) {}
    HospitalPair pair_of(const HrcInstance &instance, int couple) const;
    friend bool operator==(const HrcMatching &, const HrcMatching &) = default;
};

std::vector<std::string> validate_instance(const HrcInstance &instance);

struct MultigraphInstance {
    std::vector<std::string> node_names;
    std::vector<int> capacity;
    std::vector<std::string> edge_names;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<int>> ranking;  // per node, incident edge ids best first; a loop appears once

    int add_node(std::string name, int cap);
    int add_edge(std::string name, int u, int v);
    bool is_loop(int e) const { return edges[e][0] == edges[e][1]; }
};

std::vector<std::string> validate_multigraph(const MultigraphInstance &instance);

struct SmtiInstance {
    std::vector<std::string> men;
    std::vector<std::string> women;
    std::vector<std::vector<int>> man_prefs;    // women, best first
    std::vector<std::vector<int>> woman_prefs;  // men; a tie woman holds exactly her two tied men
    std::vector<bool> woman_tie;
    std::vector<int> man_order;  // global order used to orient ties

    int find_man(std::string_view name) const;
    int find_woman(std::string_view name) const;
};

std::vector<std::string> validate_smti(const SmtiInstance &instance);

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;  // DIMACS literals
};

}  // namespace hrc
