#include "hrc/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>

#include "hrc/classify.hpp"
#include "hrc/stability.hpp"

namespace hrc {

namespace {

struct Unit {
    int doctor = kNone;  // single
    int couple = kNone;
    std::size_t domain = 0;
};

class Search {
public:
    Search(const HrcInstance &inst, const OracleBudget &budget)
        : inst_(inst), index_(inst), budget_(budget), capacity_(instance_capacities(inst)),
          load_(inst.hospitals.size(), 0), current_(inst.doctors.size()), start_(Clock::now())
    {
        for (std::size_t d = 0; d < inst.doctors.size(); ++d)
            if (inst.is_single(static_cast<int>(d)))
                units_.push_back({static_cast<int>(d), kNone, inst.doctors[d].prefs.size() + 1});
        for (std::size_t c = 0; c < inst.couples.size(); ++c)
            units_.push_back({kNone, static_cast<int>(c), inst.couples[c].prefs.size() + 1});
        std::stable_sort(units_.begin(), units_.end(),
                         [](const Unit &a, const Unit &b) { return a.domain < b.domain; });
    }

    template <class Leaf>
    void run(Leaf &&leaf)
    {
        descend(0, leaf);
        stats_.seconds = elapsed();
    }

    const OracleStats &stats() const { return stats_; }
    const InstanceIndex &index() const { return index_; }
    const std::vector<int> &capacity() const { return capacity_; }

    struct Stop {};

private:
    using Clock = std::chrono::steady_clock;

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    void tick()
    {
        ++stats_.nodes;
        if (stats_.nodes > budget_.max_nodes)
            throw BudgetExceeded("oracle node budget of " + std::to_string(budget_.max_nodes) + " exceeded");
        if ((stats_.nodes & 0xffff) == 0 && elapsed() > budget_.max_seconds)
            throw BudgetExceeded("oracle time budget exceeded");
    }

    bool place(int d, int h)
    {
        if (h == kNone)
            return true;
        if (load_[h] >= capacity_[h])
            return false;
        ++load_[h];
        current_.assignment[d] = h;
        return true;
    }

    void unplace(int d)
    {
        int h = current_.assignment[d];
        if (h != kNone)
            --load_[h];
        current_.assignment[d] = kNone;
    }

    template <class Leaf>
    void descend(std::size_t i, Leaf &leaf)
    {
        tick();
        if (i == units_.size()) {
            ++stats_.leaves;
            leaf(current_);
            return;
        }
        const Unit &u = units_[i];
        if (u.doctor != kNone) {
            for (int h : inst_.doctors[u.doctor].prefs) {
                if (place(u.doctor, h)) {
                    descend(i + 1, leaf);
                    unplace(u.doctor);
                }
            }
            descend(i + 1, leaf);
            return;
        }
        const auto &mem = inst_.couples[u.couple].members;
        for (HospitalPair p : inst_.couples[u.couple].prefs) {
            if (place(mem[0], p.first)) {
                if (place(mem[1], p.second)) {
                    descend(i + 1, leaf);
                    unplace(mem[1]);
                }
                unplace(mem[0]);
            }
        }
        descend(i + 1, leaf);
    }

    const HrcInstance &inst_;
    InstanceIndex index_;
    OracleBudget budget_;
    std::vector<int> capacity_;
    std::vector<int> load_;
    HrcMatching current_;
    std::vector<Unit> units_;
    OracleStats stats_;
    Clock::time_point start_;
};

}  // namespace

std::vector<HrcMatching> enumerate_stable(const HrcInstance &inst, std::size_t limit, const OracleBudget &budget,
                                          OracleStats *stats)
{
    Search search(inst, budget);
    std::vector<HrcMatching> out;
    if (limit == 0)
        return out;
    try {
        search.run([&](const HrcMatching &m) {
            if (hrc_blocking_pairs(inst, search.index(), m, search.capacity()).empty()) {
                out.push_back(m);
                if (out.size() >= limit)
                    throw Search::Stop{};
            }
        });
    }
    catch (const Search::Stop &) {
    }
    if (stats)
        *stats = search.stats();
    return out;
}

MinBp min_bp(const HrcInstance &inst, const OracleBudget &budget, OracleStats *stats)
{
    Search search(inst, budget);
    MinBp best;
    best.value = -1;
    try {
        search.run([&](const HrcMatching &m) {
            int v = static_cast<int>(hrc_blocking_pairs(inst, search.index(), m, search.capacity()).size());
            if (best.value < 0 || v < best.value) {
                best.value = v;
                best.witness = m;
                if (v == 0)
                    throw Search::Stop{};
            }
        });
    }
    catch (const Search::Stop &) {
    }
    if (stats)
        *stats = search.stats();
    return best;
}

RuralReport rural_report(const HrcInstance &inst, const std::vector<HrcMatching> &stable)
{
    RuralReport r;
    r.matchings = stable.size();
    if (stable.empty())
        return r;
    std::size_t nh = inst.hospitals.size();
    auto assignees = [&](const HrcMatching &m) {
        std::vector<std::vector<int>> out(nh);
        for (std::size_t d = 0; d < m.assignment.size(); ++d)
            if (m.assignment[d] != kNone)
                out[m.assignment[d]].push_back(static_cast<int>(d));
        return out;
    };
    auto singles = [&](const HrcMatching &m) {
        std::vector<int> out;
        for (std::size_t d = 0; d < m.assignment.size(); ++d)
            if (inst.is_single(static_cast<int>(d)) && m.assignment[d] != kNone)
                out.push_back(static_cast<int>(d));
        return out;
    };
    auto base_sets = assignees(stable.front());
    auto base_singles = singles(stable.front());
    std::vector<char> under(nh, 0);
    for (const auto &m : stable) {
        auto sets = assignees(m);
        for (std::size_t h = 0; h < nh; ++h)
            if (static_cast<int>(sets[h].size()) < inst.hospitals[h].capacity)
                under[h] = 1;
    }
    for (const auto &m : stable) {
        auto sets = assignees(m);
        if (singles(m) != base_singles)
            r.same_singles = false;
        for (std::size_t h = 0; h < nh; ++h) {
            if (sets[h].size() != base_sets[h].size())
                r.same_counts = false;
            if (under[h] && sets[h] != base_sets[h])
                r.same_undersubscribed = false;
        }
    }
    return r;
}

RuralReport verify_rural_hospitals(const HrcInstance &inst, const OracleBudget &budget)
{
    InstanceIndex index(inst);
    auto profiles = classify_all(inst, index);
    for (std::size_t c = 0; c < profiles.size(); ++c) {
        const auto &p = profiles[c];
        if (!p.sub_responsive || !p.sub_complete || p.type == CoupleType::Other)
            throw ClassificationError(static_cast<int>(c), "couple " + inst.doctors[inst.couples[c].members[0]].name +
                                                               " is not of type a, b or c");
    }
    return rural_report(inst, enumerate_stable(inst, SIZE_MAX, budget));
}

}  // namespace hrc
