#include "tensorclt/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "tensorclt/hoeffding.hpp"

namespace tensorclt {

std::int64_t binom_i64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double binom(int n, int k) { return static_cast<double>(binom_i64(n, k)); }

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

std::vector<std::string> a1_warnings(const DeltaVector& dv) {
    std::vector<std::string> w;
    for (int t = 0; t <= dv.d; ++t)
        if (std::abs(dv.delta[t]) > 1.0 + 1e-12)
            w.push_back("delta_" + std::to_string(t) +
                        " outside [-1, 1]: second-moment normalization violated");
    return w;
}

namespace {

/// Partial sums over the trailing d-s slots: T_s(j) = sum_{j subseteq i} theta_i,
/// computed by repeatedly summing out the last axis of the dense expansion.
std::vector<std::vector<double>> partial_sum_ladder(const SymmetricCoefficients& c) {
    DenseTensor theta = expand_dense(c);
    std::vector<std::vector<double>> ladder(c.d + 1);
    ladder[c.d] = theta.values;
    for (int s = c.d - 1; s >= 0; --s) {
        const std::vector<double>& prev = ladder[s + 1];
        std::vector<double> cur(ipow(c.n, s), 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            double sum = 0.0;
            for (int x = 0; x < c.n; ++x) sum += prev[j * c.n + x];
            cur[j] = sum;
        }
        ladder[s] = std::move(cur);
    }
    return ladder;
}

}  // namespace

double seminorm(const SymmetricCoefficients& c, int s) {
    require(s >= 0 && s <= c.d, errc::range, "seminorm: s out of [0, d]");
    auto ladder = partial_sum_ladder(c);
    if (s == 0) return std::abs(ladder[0][0]);
    double sq = 0.0;
    for (double v : ladder[s]) sq += v * v;
    return std::sqrt(sq);
}

double set_seminorm(const SymmetricCoefficients& c, int s) {
    require(s >= 0 && s <= c.d, errc::range, "set_seminorm: s out of [0, d]");
    if (s == 0) {
        double total = 0.0;
        for (const auto& [key, v] : c.coefficients) total += v;
        return std::abs(total);
    }
    // G runs over s-subsets of [n]; accumulate sum_{G subseteq F} a_F per G.
    std::map<std::vector<int>, double> row;
    for (const auto& [F, v] : c.coefficients) {
        // enumerate s-subsets of F
        std::vector<int> pick(s);
        std::vector<int> idx(s);
        for (int k = 0; k < s; ++k) idx[k] = k;
        for (;;) {
            for (int k = 0; k < s; ++k) pick[k] = F[idx[k]];
            row[pick] += v;
            int k = s - 1;
            while (k >= 0 && idx[k] == c.d - s + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int m = k + 1; m < s; ++m) idx[m] = idx[m - 1] + 1;
        }
    }
    double sq = 0.0;
    for (const auto& [G, v] : row) sq += v * v;
    return std::sqrt(sq);
}

SeminormProfile make_profile(const SymmetricCoefficients& c) {
    SeminormProfile p;
    p.d = c.d;
    p.values.resize(c.d + 1);
    auto ladder = partial_sum_ladder(c);
    p.values[0] = std::abs(ladder[0][0]);
    for (int s = 1; s <= c.d; ++s) {
        double sq = 0.0;
        for (double v : ladder[s]) sq += v * v;
        p.values[s] = std::sqrt(sq);
    }
    double cubic = 0.0;
    for (double v : ladder[1]) cubic += std::abs(v) * v * v;
    p.row_cubic = cubic;
    return p;
}

double hs_seminorm(const SymmetricCoefficients& c, int s) {
    require(s >= 0 && s <= c.d, errc::range, "hs_seminorm: s out of [0, d]");
    auto ladder = partial_sum_ladder(c);
    DenseTensor partial(s, c.n, ladder[s]);
    DenseTensor h = hoeffding_single(partial);
    double sq = 0.0;
    for (double v : h.values) sq += v * v;
    return std::sqrt(sq);
}

std::int64_t gamma_const(int s, int r, GammaMethod method) {
    require(s >= 0 && r >= s, errc::range, "gamma: need 0 <= s <= r");
    require(r <= 20, errc::range, "gamma: exact integers maintained only up to r = 20");
    if (method == GammaMethod::closed) {
        std::int64_t b = binom_i64(r, s);
        return ((r - s) % 2 == 0) ? b : -b;
    }
    // bottom-up: gamma_{r,r} = 1, then gamma_{s-1,r} = -sum_{x=s}^r C(x,s-1) gamma_{x,r}
    std::vector<std::int64_t> g(r + 1, 0);
    g[r] = 1;
    for (int t = r - 1; t >= s; --t) {
        std::int64_t acc = 0;
        for (int x = t + 1; x <= r; ++x) acc += binom_i64(x, t) * g[x];
        g[t] = -acc;
    }
    return g[s];
}

SigmaVector sigma_from_delta(const DeltaVector& dv) {
    SigmaVector sv;
    sv.d = dv.d;
    sv.sigma.resize(dv.d + 1);
    for (int s = 0; s <= dv.d; ++s) {
        double acc = 0.0;
        for (int t = 0; t <= s; ++t) {
            double term = binom(s, t) * dv.delta[t];
            acc += ((s - t) % 2 == 0) ? term : -term;
        }
        sv.sigma[s] = acc;
    }
    return sv;
}

double variance_formula(const SeminormProfile& profile, const SigmaVector& sv) {
    require(profile.d == sv.d, errc::dim, "variance_formula: order mismatch");
    double acc = 0.0;
    for (int s = 0; s <= profile.d; ++s) {
        double b = binom(profile.d, s);
        acc += b * b * factorial(s) * sv.sigma[s] * profile.values[s] * profile.values[s];
    }
    return acc;
}

double variance_formula(const SymmetricCoefficients& c, const DeltaVector& dv) {
    require(dv.d == c.d, errc::dim, "variance_formula: delta order must equal d");
    return variance_formula(make_profile(c), sigma_from_delta(dv));
}

double variance_direct(const SymmetricCoefficients& c, const DeltaVector& dv,
                       std::size_t budget) {
    require(dv.d == c.d, errc::dim, "variance_direct: delta order must equal d");
    const std::size_t pairs = ipow(c.n, 2 * c.d);
    require(pairs <= budget, errc::scale, "variance_direct: n^(2d) exceeds enumeration budget");

    auto tuples = injective_tuples(c.n, c.d);
    std::vector<double> theta(tuples.size());
    std::vector<std::vector<int>> image(tuples.size());
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        theta[k] = expand_symmetric(c, MultiIndex(tuples[k], c.n));
        image[k] = tuples[k];
        std::sort(image[k].begin(), image[k].end());
    }
    double acc = 0.0;
    for (std::size_t a = 0; a < tuples.size(); ++a) {
        if (theta[a] == 0.0) continue;
        for (std::size_t b = 0; b < tuples.size(); ++b) {
            if (theta[b] == 0.0) continue;
            // |Im(i) cap Im(j)| by merging the sorted images
            int overlap = 0;
            for (std::size_t x = 0, y = 0; x < image[a].size() && y < image[b].size();) {
                if (image[a][x] == image[b][y]) { ++overlap; ++x; ++y; }
                else if (image[a][x] < image[b][y]) ++x;
                else ++y;
            }
            acc += theta[a] * theta[b] * dv.delta[overlap];
        }
    }
    return acc;
}

}  // namespace tensorclt
