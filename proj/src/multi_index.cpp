#include "tensorclt/multi_index.hpp"

#include <algorithm>
#include <map>

namespace tensorclt {

PairPartition pair_partition(const MultiIndex& i, const MultiIndex& j) {
    require(i.order() == j.order(), errc::dim, "pair_partition: length mismatch");
    require(i.n == j.n, errc::dim, "pair_partition: ambient size mismatch");

    std::map<int, std::vector<std::pair<int, int>>> by_value;
    for (int u = 0; u < i.order(); ++u) by_value[i.entries[u]].push_back({0, u + 1});
    for (int v = 0; v < j.order(); ++v) by_value[j.entries[v]].push_back({1, v + 1});

    PairPartition part;
    for (auto& [value, cell] : by_value) {
        std::sort(cell.begin(), cell.end());
        part.cells.push_back(std::move(cell));
    }
    std::sort(part.cells.begin(), part.cells.end());
    return part;
}

bool pair_equivalent(const MultiIndex& i, const MultiIndex& j, const MultiIndex& p,
                     const MultiIndex& q) {
    require(i.order() == j.order() && j.order() == p.order() && p.order() == q.order(),
            errc::dim, "pair_equivalent: length mismatch");
    require(i.n == j.n && j.n == p.n && p.n == q.n, errc::dim,
            "pair_equivalent: ambient size mismatch");
    return pair_partition(i, j) == pair_partition(p, q);
}

}  // namespace tensorclt
