#include "sf_kernel.hpp"

#include "hrc/model.hpp"

namespace hrc::detail {

namespace {

// Proposal/rejection table over list entries. Entry k belongs to owner(k); twin[k] is the
// entry of the same edge in the other endpoint's list. proposed[k] means the owner of k
// proposed along it, so the proposal is held by the other endpoint.
class Table {
public:
    explicit Table(const FixturesGraph &g);

    std::optional<std::vector<char>> solve();

private:
    const FixturesGraph &g_;
    int n_;
    std::vector<int> owner_, other_, twin_;
    std::vector<char> proposed_, alive_;
    std::vector<int> nprop_, nheld_, next_, tail_, deg_, need_;
    std::vector<int> queue_;
    bool need_set_ = false;
    bool failed_ = false;

    void remove(int e);
    void truncate(int y);
    int last_alive(int y);
    int spare(int x);  // first unproposed alive entry of x, or -1
    void propose_all();
    bool held(int k) const { return proposed_[twin_[k]] != 0; }
};

Table::Table(const FixturesGraph &g)
    : g_(g), n_(static_cast<int>(g.capacity.size())), owner_(g.lists.size()), other_(g.lists.size()),
      twin_(g.lists.size()), proposed_(g.lists.size(), 0), alive_(g.edges.size(), 1), nprop_(n_, 0),
      nheld_(n_, 0), next_(n_), tail_(n_), deg_(n_), need_(n_, 0)
{
    std::vector<std::array<int, 2>> entry_of(g.edges.size(), {-1, -1});
    for (int x = 0; x < n_; ++x) {
        next_[x] = g.start[x];
        tail_[x] = g.start[x + 1] - 1;
        deg_[x] = g.start[x + 1] - g.start[x];
        for (int k = g.start[x]; k < g.start[x + 1]; ++k) {
            int e = g.lists[k];
            owner_[k] = x;
            other_[k] = g.edges[e][0] == x ? g.edges[e][1] : g.edges[e][0];
            entry_of[e][g.edges[e][0] == x ? 0 : 1] = k;
        }
    }
    for (const auto &pair : entry_of) {
        if (pair[0] < 0 || pair[1] < 0)
            throw InternalError("fixtures graph lists are inconsistent with its edges");
        twin_[pair[0]] = pair[1];
        twin_[pair[1]] = pair[0];
    }
}

void Table::remove(int e)
{
    if (!alive_[e])
        return;
    alive_[e] = 0;
    for (int side = 0; side < 2; ++side) {
        int x = g_.edges[e][side];
        if (--deg_[x] < need_[x] && need_set_)
            failed_ = true;
    }
}

void Table::truncate(int y)
{
    int k = tail_[y];
    while (k >= g_.start[y]) {
        int e = g_.lists[k];
        if (alive_[e]) {
            if (held(k))
                break;
            if (proposed_[k]) {
                proposed_[k] = 0;
                --nprop_[y];
                --nheld_[other_[k]];
                queue_.push_back(y);
            }
            remove(e);
        }
        --k;
    }
    tail_[y] = k;
}

int Table::last_alive(int y)
{
    while (tail_[y] >= g_.start[y] && !alive_[g_.lists[tail_[y]]])
        --tail_[y];
    return tail_[y] >= g_.start[y] ? tail_[y] : -1;
}

int Table::spare(int x)
{
    int end = g_.start[x + 1];
    while (next_[x] < end && !alive_[g_.lists[next_[x]]])
        ++next_[x];
    return next_[x] < end ? next_[x] : -1;
}

void Table::propose_all()
{
    while (!queue_.empty()) {
        int x = queue_.back();
        queue_.pop_back();
        while (nprop_[x] < g_.capacity[x]) {
            int k = spare(x);
            if (k < 0)
                break;
            ++next_[x];
            int y = other_[k];
            proposed_[k] = 1;
            ++nprop_[x];
            ++nheld_[y];
            if (nheld_[y] > g_.capacity[y]) {
                int t = last_alive(y);
                int e = g_.lists[t];
                int z = other_[t];
                proposed_[twin_[t]] = 0;
                --nprop_[z];
                --nheld_[y];
                remove(e);
                queue_.push_back(z);
            }
            if (nheld_[y] == g_.capacity[y])
                truncate(y);
        }
    }
}

std::optional<std::vector<char>> Table::solve()
{
    for (int x = 0; x < n_; ++x)
        if (g_.capacity[x] == 0)
            truncate(x);
    for (int x = n_ - 1; x >= 0; --x)
        queue_.push_back(x);
    propose_all();

    need_ = nprop_;
    need_set_ = true;
    for (int x = 0; x < n_; ++x)
        if (deg_[x] < need_[x])
            return std::nullopt;

    std::vector<int> stack, pos(n_, -1), cut;
    int scan = 0;
    while (!failed_) {
        if (stack.empty()) {
            while (scan < n_ && spare(scan) < 0)
                ++scan;
            if (scan == n_)
                break;
            pos[scan] = 0;
            stack.push_back(scan);
        }
        int x = stack.back();
        int k = spare(x);
        if (k < 0) {
            pos[x] = -1;
            stack.pop_back();
            continue;
        }
        int t = last_alive(other_[k]);
        int z = other_[t];
        if (pos[z] < 0) {
            pos[z] = static_cast<int>(stack.size());
            stack.push_back(z);
            continue;
        }

        // Candidate rotation stack[pos[z]..]; links computed earlier may have gone stale.
        int first = pos[z];
        int size = static_cast<int>(stack.size());
        int stale = -1;
        cut.clear();
        for (int i = first; i < size; ++i) {
            int xi = stack[i];
            int want = i + 1 < size ? stack[i + 1] : z;
            int ki = spare(xi);
            int ti = ki < 0 ? -1 : last_alive(other_[ki]);
            if (ti < 0 || other_[ti] != want || !held(ti)) {
                stale = i;
                break;
            }
            cut.push_back(ti);
        }
        int keep = stale >= 0 ? stale + 1 : first;
        while (static_cast<int>(stack.size()) > keep) {
            pos[stack.back()] = -1;
            stack.pop_back();
        }
        if (stale >= 0)
            continue;

        // Each y_{i+1} drops its worst held proposer x_{i+1}; x_i then proposes to y_{i+1}.
        for (int ti : cut) {
            int z2 = other_[ti];
            proposed_[twin_[ti]] = 0;
            --nprop_[z2];
            --nheld_[owner_[ti]];
            remove(g_.lists[ti]);
            queue_.push_back(z2);
        }
        propose_all();
    }
    if (failed_)
        return std::nullopt;

    std::vector<char> in(g_.edges.size(), 0);
    for (std::size_t e = 0; e < g_.edges.size(); ++e)
        in[e] = alive_[e];
    for (int x = 0; x < n_; ++x)
        for (int k = g_.start[x]; k < g_.start[x + 1]; ++k)
            if (alive_[g_.lists[k]] && !proposed_[k])
                throw InternalError("fixtures table did not settle into a matching");
    return in;
}

}  // namespace

std::optional<std::vector<char>> solve_fixtures(const FixturesGraph &graph)
{
    Table table(graph);
    return table.solve();
}

}  // namespace hrc::detail
