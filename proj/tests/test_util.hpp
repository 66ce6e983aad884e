#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tensorclt/decomposition.hpp"
#include "tensorclt/empirics.hpp"
#include "tensorclt/hoeffding.hpp"
#include "tensorclt/rng.hpp"
#include "tensorclt/tensor.hpp"

namespace tctest {

using namespace tensorclt;

inline DenseTensor random_dense(int s, int n, Rng& rng) {
    DenseTensor t(s, n);
    for (double& v : t.values) v = 2.0 * rng.next_double() - 1.0;
    return t;
}

inline DoubleTensor random_double(int s, int n, Rng& rng) {
    DoubleTensor t(s, n);
    for (double& v : t.values) v = 2.0 * rng.next_double() - 1.0;
    return t;
}

/// Random tensor satisfying the decomposition preconditions: invariant
/// under separate slot permutations, zero off the injective support.
inline DoubleTensor random_a5a6(int r, int n, Rng& rng) {
    DoubleTensor z(r, n);
    const std::size_t half = ipow(n, r);
    std::vector<int> di(r), dp(r);
    for (std::size_t i = 0; i < half; ++i) {
        std::size_t rem = i;
        bool inj_i = true;
        std::uint64_t seen = 0;
        for (int k = r - 1; k >= 0; --k) {
            di[k] = static_cast<int>(rem % n) + 1;
            rem /= n;
            std::uint64_t bit = 1ULL << (di[k] - 1);
            if (seen & bit) inj_i = false;
            seen |= bit;
        }
        if (!inj_i) continue;
        bool sorted_i = std::is_sorted(di.begin(), di.end());
        for (std::size_t p = 0; p < half; ++p) {
            rem = p;
            bool inj_p = true;
            seen = 0;
            for (int k = r - 1; k >= 0; --k) {
                dp[k] = static_cast<int>(rem % n) + 1;
                rem /= n;
                std::uint64_t bit = 1ULL << (dp[k] - 1);
                if (seen & bit) inj_p = false;
                seen |= bit;
            }
            if (!inj_p || !sorted_i || !std::is_sorted(dp.begin(), dp.end())) continue;
            // canonical representative: fill the whole orbit
            const double v = 2.0 * rng.next_double() - 1.0;
            std::vector<int> pi = di, pp = dp;
            std::sort(pi.begin(), pi.end());
            std::sort(pp.begin(), pp.end());
            do {
                do {
                    z.at(pi, pp) = v;
                } while (std::next_permutation(pp.begin(), pp.end()));
                std::sort(pp.begin(), pp.end());
            } while (std::next_permutation(pi.begin(), pi.end()));
        }
    }
    return z;
}

/// Normalized order-1 Hoeffding component with beta_1 = n-1.
inline DoubleTensor random_xi1(int n, Rng& rng) {
    DoubleTensor xi = hoeffding_double(random_double(1, n, rng));
    double beta = 0.0;
    for (double v : xi.values) beta += v * v;
    const double scale = std::sqrt((n - 1.0) / beta);
    for (double& v : xi.values) v *= scale;
    return xi;
}

/// Symmetric, vanishing-diagonal, slot-cancelling tensor by alternating
/// projection onto the two constraint subspaces.
inline DenseTensor random_population_component(int s, int n, Rng& rng, int iters = 400) {
    DenseTensor g = random_dense(s, n, rng);
    std::vector<int> digits(s);
    for (int it = 0; it < iters; ++it) {
        // project onto {symmetric, zero diagonal}
        DenseTensor sym(s, n);
        for (std::size_t off = 0; off < g.size(); ++off) {
            std::size_t rem = off;
            std::uint64_t seen = 0;
            bool inj = true;
            for (int k = s - 1; k >= 0; --k) {
                digits[k] = static_cast<int>(rem % n) + 1;
                rem /= n;
                std::uint64_t bit = 1ULL << (digits[k] - 1);
                if (seen & bit) inj = false;
                seen |= bit;
            }
            if (!inj) continue;
            std::vector<int> p = digits;
            std::sort(p.begin(), p.end());
            double acc = 0.0;
            int count = 0;
            do {
                acc += g.at(p);
                ++count;
            } while (std::next_permutation(p.begin(), p.end()));
            sym.values[off] = acc / count;
        }
        g = sym;
        // project onto {slot sums vanish}: subtract per-line means
        for (int axis = 0; axis < s; ++axis) {
            const std::size_t stride = ipow(n, s - 1 - axis);
            const std::size_t block = stride * n;
            for (std::size_t base = 0; base < g.size(); base += block)
                for (std::size_t off = 0; off < stride; ++off) {
                    double* line = g.values.data() + base + off;
                    double sum = 0.0;
                    for (int k = 0; k < n; ++k) sum += line[k * stride];
                    const double mean = sum / n;
                    for (int k = 0; k < n; ++k) line[k * stride] -= mean;
                }
        }
    }
    // final cleanup: exact symmetry + zero diagonal, then verify residuals
    DenseTensor out(s, n);
    for (std::size_t off = 0; off < g.size(); ++off) {
        std::size_t rem = off;
        std::uint64_t seen = 0;
        bool inj = true;
        for (int k = s - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % n) + 1;
            rem /= n;
            std::uint64_t bit = 1ULL << (digits[k] - 1);
            if (seen & bit) inj = false;
            seen |= bit;
        }
        if (!inj) continue;
        std::vector<int> p = digits;
        std::sort(p.begin(), p.end());
        double acc = 0.0;
        int count = 0;
        do {
            acc += g.at(p);
            ++count;
        } while (std::next_permutation(p.begin(), p.end()));
        out.values[off] = acc / count;
    }
    return out;
}

/// Inverse normal CDF by bisection on normal_cdf; used to build quantile
/// grids for the distance tests (normal_cdf itself is checked against the
/// 50-digit fixture table).
inline double probit(double p) {
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace tctest
