#include "rigver/graphgen.hpp"

namespace rigver {

namespace {
void dfs_count(const ResolutionGraph& g, int at, int to, Int& count) {
    if (at == to) {
        ++count;
        return;
    }
    for (int j = at - 1; j >= 1; --j)
        if (g.has_arrow(at, j)) dfs_count(g, j, to, count);
}
}  // namespace

Int enumerate_paths(const ResolutionGraph& g, int from, int to) {
    if (from == to) return 1;
    if (from < to) return 0;
    Int count(0);
    dfs_count(g, from, to, count);
    return count;
}

std::vector<ResolutionGraph> all_graphs(int k, int levels) {
    // Optional arrow slots: all (i, j) with i > j except the mandatory
    // chain arrows (i, i-1).
    std::vector<std::pair<int, int>> slots;
    for (int i = 3; i <= k; ++i)
        for (int j = 1; j <= i - 2; ++j) slots.emplace_back(i, j);
    std::vector<ResolutionGraph> out;
    size_t combos = size_t(1) << slots.size();
    for (size_t mask = 0; mask < combos; ++mask) {
        ResolutionGraph g;
        g.K = k;
        g.L = k >= 2 ? std::max(2, (k + 1) / 2) : 0;
        for (int i = 2; i <= k; ++i) {
            g.arrows.insert({i, i - 1});
            g.delta.push_back(1 + (i * 7 + int(mask)) % levels);
        }
        for (size_t b = 0; b < slots.size(); ++b)
            if (mask & (size_t(1) << b)) g.arrows.insert(slots[b]);
        g.validate();
        out.push_back(std::move(g));
    }
    return out;
}

ResolutionGraph random_graph(std::mt19937& rng, int k, int levels) {
    ResolutionGraph g;
    g.K = k;
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> dlt(1, levels);
    for (int i = 2; i <= k; ++i) {
        g.arrows.insert({i, i - 1});
        g.delta.push_back(dlt(rng));
        for (int j = 1; j <= i - 2; ++j)
            if (coin(rng) == 0) g.arrows.insert({i, j});
    }
    std::uniform_int_distribution<int> lpos(2, std::max(2, k));
    g.L = k >= 2 ? lpos(rng) : 0;
    g.validate();
    return g;
}

std::vector<Rat> random_multiplicities(std::mt19937& rng, int k) {
    std::uniform_int_distribution<int> num(0, 24);
    std::vector<Rat> nu(k);
    nu[0] = Rat(num(rng), Int(8));  // nu_1 in [0, 3]
    Rat cur = Rat(num(rng), Int(8));
    for (int i = 1; i < k; ++i) {
        nu[i] = cur;
        // keep the chain non-increasing
        std::uniform_int_distribution<int> drop(0, 3);
        cur -= Rat(drop(rng), Int(8));
        if (cur.sign() < 0) cur = Rat(0);
    }
    return nu;
}

}  // namespace rigver
