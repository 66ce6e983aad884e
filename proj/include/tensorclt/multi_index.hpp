#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "tensorclt/errors.hpp"

namespace tensorclt {

/// A sequence in [n]^s with 1-based entries. Diagonal (non-injective)
/// indices are legal; injectivity is a query, not an invariant.
struct MultiIndex {
    std::vector<int> entries;  // values in 1..n
    int n = 0;

    MultiIndex() = default;
    MultiIndex(std::vector<int> e, int n_) : entries(std::move(e)), n(n_) { validate(); }

    int order() const { return static_cast<int>(entries.size()); }

    bool injective() const {
        for (std::size_t a = 0; a < entries.size(); ++a)
            for (std::size_t b = a + 1; b < entries.size(); ++b)
                if (entries[a] == entries[b]) return false;
        return true;
    }

    /// Im(i) as a sorted set of values.
    std::vector<int> image() const {
        std::set<int> im(entries.begin(), entries.end());
        return {im.begin(), im.end()};
    }

    /// True if this extends p (agrees with p on the first |p| slots).
    bool extends(const MultiIndex& p) const {
        if (p.order() > order()) return false;
        for (int r = 0; r < p.order(); ++r)
            if (entries[r] != p.entries[r]) return false;
        return true;
    }

private:
    void validate() const {
        for (int e : entries)
            require(e >= 1 && e <= n, errc::range, "index entry out of [1, n]");
    }
};

/// Partition of the tagged set {0,1} x [s] grouping positions that carry
/// the same value in a pair of multi-indices. Positions are (group, slot)
/// with slot 1-based; cells are sorted canonically.
struct PairPartition {
    std::vector<std::vector<std::pair<int, int>>> cells;

    bool operator==(const PairPartition& other) const { return cells == other.cells; }
};

PairPartition pair_partition(const MultiIndex& i, const MultiIndex& j);

/// (i,j) ~ (p,q): some permutation pi of [n] sends i to p and j to q.
/// Equivalent to pair_partition(i,j) == pair_partition(p,q).
bool pair_equivalent(const MultiIndex& i, const MultiIndex& j, const MultiIndex& p,
                     const MultiIndex& q);

}  // namespace tensorclt
