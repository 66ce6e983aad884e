#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace tensorclt;

TEST_CASE("expand_symmetric: symmetry, diagonal, absent keys") {
    SymmetricCoefficients c(2, 3);
    c.set({1, 2}, 1.0);
    CHECK(expand_symmetric(c, MultiIndex({2, 1}, 3)) == 1.0);
    CHECK(expand_symmetric(c, MultiIndex({1, 1}, 3)) == 0.0);
    CHECK(expand_symmetric(c, MultiIndex({1, 3}, 3)) == 0.0);
    CHECK_THROWS_AS(expand_symmetric(c, MultiIndex({1}, 3)), Error);
}

TEST_CASE("expand_symmetric is invariant under entry permutations") {
    Rng rng(7);
    SymmetricCoefficients c(3, 5);
    for (int t = 0; t < 6; ++t) {
        int a = 1 + static_cast<int>(rng.next_below(5));
        int b = 1 + static_cast<int>(rng.next_below(5));
        int e = 1 + static_cast<int>(rng.next_below(5));
        if (a == b || b == e || a == e) continue;
        c.set({a, b, e}, rng.next_double());
    }
    for (const auto& tuple : injective_tuples(5, 3)) {
        const double base = expand_symmetric(c, MultiIndex(tuple, 5));
        std::vector<int> perm = tuple;
        std::sort(perm.begin(), perm.end());
        do {
            CHECK(expand_symmetric(c, MultiIndex(perm, 5)) == base);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("pair_partition matches the value-sharing pattern") {
    auto part = pair_partition(MultiIndex({1, 2}, 3), MultiIndex({1, 3}, 3));
    const PairPartition expected{{{{0, 1}, {1, 1}}, {{0, 2}}, {{1, 2}}}};
    // canonical cell order is sorted
    PairPartition want;
    want.cells = {{{0, 1}, {1, 1}}, {{0, 2}}, {{1, 2}}};
    std::sort(want.cells.begin(), want.cells.end());
    CHECK(part == want);

    auto single = pair_partition(MultiIndex({1}, 2), MultiIndex({1}, 2));
    CHECK(single.cells.size() == 1);
    CHECK(single.cells[0] == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});

    auto disjoint = pair_partition(MultiIndex({1, 2}, 4), MultiIndex({3, 4}, 4));
    CHECK(disjoint.cells.size() == 4);
    for (const auto& cell : disjoint.cells) CHECK(cell.size() == 1);
}

TEST_CASE("pair_equivalent: relabelling and overlap patterns") {
    const int n = 3;
    CHECK(pair_equivalent(MultiIndex({1, 2}, n), MultiIndex({1, 3}, n), MultiIndex({2, 1}, n),
                          MultiIndex({2, 3}, n)));
    CHECK_FALSE(pair_equivalent(MultiIndex({1, 2}, n), MultiIndex({1, 3}, n),
                                MultiIndex({1, 2}, n), MultiIndex({3, 1}, n)));
    CHECK(pair_equivalent(MultiIndex({1}, 2), MultiIndex({1}, 2), MultiIndex({2}, 2),
                          MultiIndex({2}, 2)));
    CHECK_THROWS_AS(pair_equivalent(MultiIndex({1}, 2), MultiIndex({1, 2}, 2),
                                    MultiIndex({1}, 2), MultiIndex({1}, 2)),
                    Error);
}

TEST_CASE("pair_equivalent is reflexive and stable under every relabelling") {
    Rng rng(11);
    for (int n : {3, 4, 5, 6}) {
        for (int s : {1, 2, 3}) {
            std::vector<int> iv(s), jv(s);
            for (int k = 0; k < s; ++k) {
                iv[k] = 1 + static_cast<int>(rng.next_below(n));
                jv[k] = 1 + static_cast<int>(rng.next_below(n));
            }
            const MultiIndex i(iv, n), j(jv, n);
            CHECK(pair_equivalent(i, j, i, j));
            for (const auto& pi : all_permutations(n)) {
                std::vector<int> pv(s), qv(s);
                for (int k = 0; k < s; ++k) {
                    pv[k] = pi[iv[k] - 1];
                    qv[k] = pi[jv[k] - 1];
                }
                CHECK(pair_equivalent(i, j, MultiIndex(pv, n), MultiIndex(qv, n)));
            }
        }
    }
}

TEST_CASE("pair equivalence is symmetric and transitive across shapes") {
    // all pairs over [3]^2: group by partition and cross-check the relation
    const int n = 3, s = 2;
    std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                for (int d = 1; d <= n; ++d)
                    pairs.push_back({MultiIndex({a, b}, n), MultiIndex({c, d}, n)});
    for (std::size_t x = 0; x < pairs.size(); x += 7) {
        for (std::size_t y = 0; y < pairs.size(); y += 11) {
            const bool xy = pair_equivalent(pairs[x].first, pairs[x].second, pairs[y].first,
                                            pairs[y].second);
            const bool yx = pair_equivalent(pairs[y].first, pairs[y].second, pairs[x].first,
                                            pairs[x].second);
            CHECK(xy == yx);
            if (!xy) continue;
            for (std::size_t z = 0; z < pairs.size(); z += 13) {
                const bool yz = pair_equivalent(pairs[y].first, pairs[y].second, pairs[z].first,
                                                pairs[z].second);
                if (yz)
                    CHECK(pair_equivalent(pairs[x].first, pairs[x].second, pairs[z].first,
                                          pairs[z].second));
            }
        }
    }
}

TEST_CASE("MultiIndex queries") {
    const MultiIndex i({2, 1, 2}, 3);
    CHECK_FALSE(i.injective());
    CHECK(i.image() == std::vector<int>{1, 2});
    CHECK(i.extends(MultiIndex({2, 1}, 3)));
    CHECK_FALSE(i.extends(MultiIndex({1}, 3)));
    CHECK_THROWS_AS(MultiIndex({0, 1}, 3), Error);
    CHECK_THROWS_AS(MultiIndex({4}, 3), Error);
}

TEST_CASE("DenseTensor and DoubleTensor shape checks") {
    CHECK_THROWS_AS(DenseTensor(2, 3, std::vector<double>(8, 0.0)), Error);
    CHECK_THROWS_AS(DoubleTensor(1, 2, std::vector<double>(3, 0.0)), Error);
    DenseTensor t(2, 3);
    t.at({2, 3}) = 5.0;
    CHECK(t.values[1 * 3 + 2] == 5.0);
    CHECK(t.decode(t.offset({2, 3})) == std::vector<int>{2, 3});
}
