#include "tensorclt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tensorclt {

void SymmetricCoefficients::set(std::vector<int> subset, double value) {
    std::sort(subset.begin(), subset.end());
    require(static_cast<int>(subset.size()) == d, errc::dim,
            "coefficient key must have exactly d elements");
    for (std::size_t k = 0; k < subset.size(); ++k) {
        require(subset[k] >= 1 && subset[k] <= n, errc::range, "coefficient key entry out of [1, n]");
        require(k == 0 || subset[k] != subset[k - 1], errc::diagonal,
                "coefficient key entries must be distinct");
    }
    coefficients[std::move(subset)] = value;
}

double expand_symmetric(const SymmetricCoefficients& c, const MultiIndex& i) {
    require(i.order() == c.d, errc::dim, "expand_symmetric: index length must equal d");
    require(i.n == c.n || i.n <= c.n, errc::range, "expand_symmetric: index entries exceed n");
    if (!i.injective()) return 0.0;
    return c.get(i.image());
}

DenseTensor expand_dense(const SymmetricCoefficients& c) {
    DenseTensor t(c.d, c.n);
    if (c.d == 0) {
        t.values[0] = c.get({});
        return t;
    }
    for (std::size_t off = 0; off < t.size(); ++off) {
        std::vector<int> sorted = t.decode(off);
        bool inj = true;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 1; k < sorted.size(); ++k)
            if (sorted[k] == sorted[k - 1]) { inj = false; break; }
        if (inj) t.values[off] = c.get(sorted);
    }
    return t;
}

std::vector<std::vector<int>> injective_tuples(int n, int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(s);
    std::vector<char> used(n + 1, 0);
    // iterative backtracking over slots
    std::vector<int> next(s, 1);
    int depth = 0;
    if (s == 0) { out.push_back({}); return out; }
    while (depth >= 0) {
        if (next[depth] > n) {
            --depth;
            if (depth >= 0) {
                used[cur[depth]] = 0;
                ++next[depth];
            }
            continue;
        }
        int v = next[depth];
        if (used[v]) { ++next[depth]; continue; }
        cur[depth] = v;
        used[v] = 1;
        if (depth == s - 1) {
            out.push_back(cur);
            used[v] = 0;
            ++next[depth];
        } else {
            ++depth;
            next[depth] = 1;
        }
    }
    return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 1);
    std::vector<std::vector<int>> out;
    do out.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    return out;
}

bool is_permutation_of_n(const std::vector<int>& pi, int n) {
    if (static_cast<int>(pi.size()) != n) return false;
    std::vector<char> seen(n + 1, 0);
    for (int v : pi) {
        if (v < 1 || v > n) return false;
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

}  // namespace tensorclt
