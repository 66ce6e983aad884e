#include "tensorclt/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tensorclt/coefficients.hpp"
#include "tensorclt/models.hpp"
#include "tensorclt/parallel.hpp"

namespace tensorclt {

// ---------------------------------------------------------------------------
// Cody's rational minimax approximations for erf/erfc (Math. Comp. 23, 1969).
// Three regimes: |x| <= 0.46875 (erf series), 0.46875 < x <= 4, x > 4.
// ---------------------------------------------------------------------------

namespace {

constexpr double kErfA[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                             3209.37758913846947, 0.185777706184603153};
constexpr double kErfB[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                             2844.23683343917062};
constexpr double kErfC[9] = {0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                             298.635138197400131,  881.95222124176909,  1712.04761263407058,
                             2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
constexpr double kErfD[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                             1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                             3439.36767414372164, 1230.33935480374942};
constexpr double kErfP[6] = {0.305326634961232344, 0.360344899949804439, 0.125781726111229246,
                             0.0160837851487422766, 6.58749161529837803e-4,
                             0.0163153871373020978};
constexpr double kErfQ[5] = {2.56852019228982242, 1.87295284992346047, 0.527905102951428412,
                             0.0605183413124413191, 0.00233520497626869185};
constexpr double kInvSqrtPi = 0.56418958354775628695;

double erfc_mid(double y) {
    // 0.46875 <= y <= 4
    double xnum = kErfC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
        xnum = (xnum + kErfC[i]) * y;
        xden = (xden + kErfD[i]) * y;
    }
    double r = (xnum + kErfC[7]) / (xden + kErfD[7]);
    double ysq = std::floor(y * 16.0) / 16.0;
    double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * r;
}

double erfc_tail(double y) {
    // y > 4
    double ysq = 1.0 / (y * y);
    double xnum = kErfP[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
        xnum = (xnum + kErfP[i]) * ysq;
        xden = (xden + kErfQ[i]) * ysq;
    }
    double r = ysq * (xnum + kErfP[4]) / (xden + kErfQ[4]);
    r = (kInvSqrtPi - r) / y;
    double ysq16 = std::floor(y * 16.0) / 16.0;
    double del = (y - ysq16) * (y + ysq16);
    return std::exp(-ysq16 * ysq16) * std::exp(-del) * r;
}

}  // namespace

double erfc_cody(double x) {
    const double y = std::abs(x);
    if (y <= 0.46875) {
        // erfc = 1 - erf with the erf rational form
        double ysq = (y > 1.11e-16) ? y * y : 0.0;
        double xnum = kErfA[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + kErfA[i]) * ysq;
            xden = (xden + kErfB[i]) * ysq;
        }
        double erf = x * (xnum + kErfA[3]) / (xden + kErfB[3]);
        return 1.0 - erf;
    }
    double r = (y <= 4.0) ? erfc_mid(y) : (y < 26.543 ? erfc_tail(y) : 0.0);
    return (x < 0) ? 2.0 - r : r;
}

double normal_cdf(double x) { return 0.5 * erfc_cody(-x / std::sqrt(2.0)); }

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

namespace {
constexpr double kMergeTol = 1e-12;
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::vector<double> values) {
    require(!values.empty(), errc::empty, "distribution: no samples");
    std::sort(values.begin(), values.end());
    EmpiricalDistribution d;
    d.exact = false;
    const double w = 1.0 / static_cast<double>(values.size());
    for (double v : values) {
        if (!d.support.empty() && v - d.support.back() <= kMergeTol)
            d.prob.back() += w;
        else {
            d.support.push_back(v);
            d.prob.push_back(w);
        }
    }
    return d;
}

EmpiricalDistribution EmpiricalDistribution::from_weighted(
    std::vector<std::pair<double, double>> atoms, bool exact) {
    require(!atoms.empty(), errc::empty, "distribution: no atoms");
    std::sort(atoms.begin(), atoms.end());
    EmpiricalDistribution d;
    d.exact = exact;
    double total = 0.0;
    for (auto [v, p] : atoms) {
        require(p >= 0.0, errc::range, "distribution: negative probability");
        total += p;
        if (!d.support.empty() && v - d.support.back() <= kMergeTol)
            d.prob.back() += p;
        else {
            d.support.push_back(v);
            d.prob.push_back(p);
        }
    }
    require(std::abs(total - 1.0) <= 1e-12, errc::range,
            "distribution: probabilities must sum to 1");
    return d;
}

EmpiricalDistribution EmpiricalDistribution::from_counts(
    std::vector<std::pair<double, std::uint64_t>> atoms, std::uint64_t total) {
    require(!atoms.empty() && total > 0, errc::empty, "distribution: no outcomes");
    std::sort(atoms.begin(), atoms.end());
    std::vector<double> support;
    std::vector<std::uint64_t> counts;
    std::uint64_t check = 0;
    for (auto [v, c] : atoms) {
        check += c;
        if (!support.empty() && v - support.back() <= kMergeTol)
            counts.back() += c;
        else {
            support.push_back(v);
            counts.push_back(c);
        }
    }
    require(check == total, errc::range, "distribution: counts must sum to the total");
    EmpiricalDistribution d;
    d.exact = true;
    d.support = std::move(support);
    d.prob.resize(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        d.prob[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    return d;
}

double EmpiricalDistribution::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) m += support[k] * prob[k];
    return m;
}

double EmpiricalDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k)
        v += (support[k] - m) * (support[k] - m) * prob[k];
    return v;
}

double kolmogorov_distance(const EmpiricalDistribution& dist, double mu, double sigma2) {
    require(!dist.support.empty(), errc::empty, "kolmogorov_distance: empty distribution");
    require(sigma2 > 0.0, errc::range, "kolmogorov_distance: sigma2 must be positive");
    const double sigma = std::sqrt(sigma2);
    double cum = 0.0, worst = 0.0;
    for (std::size_t k = 0; k < dist.support.size(); ++k) {
        const double phi = normal_cdf((dist.support[k] - mu) / sigma);
        worst = std::max(worst, std::abs(cum - phi));      // left limit
        cum += dist.prob[k];
        worst = std::max(worst, std::abs(cum - phi));      // right value
    }
    return worst;
}

double levy_concentration(const EmpiricalDistribution& dist, double eps) {
    require(!dist.support.empty(), errc::empty, "levy_concentration: empty distribution");
    require(eps >= 0.0, errc::range, "levy_concentration: eps must be nonnegative");
    // sliding window [x_a, x_a + eps]
    double best = 0.0;
    std::size_t b = 0;
    double window = 0.0;
    for (std::size_t a = 0; a < dist.support.size(); ++a) {
        if (b < a) { b = a; window = 0.0; }
        while (b < dist.support.size() && dist.support[b] <= dist.support[a] + eps) {
            window += dist.prob[b];
            ++b;
        }
        best = std::max(best, window);
        window -= dist.prob[a];
    }
    return best;
}

// ---------------------------------------------------------------------------
// Exact enumerations
// ---------------------------------------------------------------------------

namespace {

double wstat_value(const std::vector<WeightedComponent>& components,
                   const std::vector<std::vector<std::vector<int>>>& tuples,
                   const std::vector<int>& pi) {
    double acc = 0.0;
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& comp = components[c];
        const int s = comp.xi.s, n = comp.xi.n;
        const std::size_t half = ipow(n, s);
        double part = 0.0;
        for (const auto& tuple : tuples[c]) {
            std::size_t i = 0, p = 0;
            for (int k = 0; k < s; ++k) {
                i = i * n + static_cast<std::size_t>(tuple[k] - 1);
                p = p * n + static_cast<std::size_t>(pi[tuple[k] - 1] - 1);
            }
            part += comp.xi.values[i * half + p];
        }
        acc += comp.weight * part;
    }
    return acc;
}

std::vector<std::vector<std::vector<int>>> component_tuples(
    const std::vector<WeightedComponent>& components, int n) {
    std::vector<std::vector<std::vector<int>>> tuples;
    tuples.reserve(components.size());
    for (const auto& comp : components) {
        require(comp.xi.n == n, errc::dim, "wstat: component ambient size mismatch");
        tuples.push_back(injective_tuples(n, comp.xi.s));
    }
    return tuples;
}

std::uint64_t factorial_u64(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace

EmpiricalDistribution exact_wstat_distribution(const std::vector<WeightedComponent>& components,
                                               int n) {
    require(n <= 8, errc::scale, "exact_wstat_distribution: n! enumeration capped at n = 8");
    if (components.empty())
        return EmpiricalDistribution::from_weighted({{0.0, 1.0}}, true);
    auto tuples = component_tuples(components, n);
    std::vector<std::pair<double, std::uint64_t>> atoms;
    atoms.reserve(factorial_u64(n));
    for (const auto& pi : all_permutations(n))
        atoms.push_back({wstat_value(components, tuples, pi), 1});
    return EmpiricalDistribution::from_counts(std::move(atoms), factorial_u64(n));
}

EmpiricalDistribution sample_wstat_distribution(const std::vector<WeightedComponent>& components,
                                                int n, std::uint64_t samples, std::uint64_t seed) {
    require(samples >= 1, errc::range, "sample_wstat_distribution: need samples >= 1");
    auto tuples = component_tuples(components, n);
    std::vector<double> values(samples);
    const std::size_t chunk = 1024;
    parallel_chunks(samples, chunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
        Rng rng(seed, c);
        for (std::size_t t = begin; t < end; ++t) {
            auto pi = sample_permutation(n, rng);
            values[t] = wstat_value(components, tuples, pi);
        }
    });
    return EmpiricalDistribution::from_samples(std::move(values));
}

EmpiricalDistribution exact_slice_distribution(const SymmetricCoefficients& c, int k) {
    const int n = c.n;
    require(k >= 0 && k <= n, errc::range, "exact_slice_distribution: k out of [0, n]");
    require(n <= 64, errc::scale, "exact_slice_distribution: n capped at 64 (mask subsets)");
    const std::int64_t count = binom_i64(n, k);
    require(count <= 200000, errc::scale, "exact_slice_distribution: C(n,k) exceeds 200000");

    std::vector<std::pair<std::uint64_t, double>> terms;  // (subset mask, a_F)
    terms.reserve(c.coefficients.size());
    for (const auto& [F, v] : c.coefficients) {
        std::uint64_t mask = 0;
        for (int e : F) mask |= 1ULL << (e - 1);
        terms.push_back({mask, v});
    }

    std::vector<std::pair<double, std::uint64_t>> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
        std::uint64_t slice_mask = 0;
        for (int i = 0; i < k; ++i) slice_mask |= 1ULL << combo[i];
        double value = 0.0;
        for (const auto& [mask, a] : terms)
            if ((mask & slice_mask) == mask) value += a;
        atoms.push_back({value, 1});
        if (k == 0) break;
        int i = k - 1;
        while (i >= 0 && combo[i] == n - k + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
    return EmpiricalDistribution::from_counts(std::move(atoms),
                                              static_cast<std::uint64_t>(count));
}

EmpiricalDistribution exact_mixture_ksum_distribution(double eps, int k) {
    require(eps > 0.0 && eps <= 0.5, errc::range, "mixture ksum: eps in (0, 1/2]");
    require(k >= 1 && k <= 62, errc::scale, "mixture ksum: k out of range");
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (1.0 - eps));
    std::vector<std::pair<double, double>> atoms;
    atoms.push_back({0.0, eps});
    const double p2k = std::pow(0.5, k);
    for (int j = 0; j <= k; ++j) {
        const double value = (2.0 * j - k) * scale;
        atoms.push_back({value, (1.0 - eps) * binom(k, j) * p2k});
    }
    return EmpiricalDistribution::from_weighted(std::move(atoms), true);
}

// ---------------------------------------------------------------------------
// Exchangeable-pair identity harness
// ---------------------------------------------------------------------------

IdentityReport verify_identities(const std::vector<DoubleTensor>& xi_components, int n,
                                 double rel_tol) {
    require(!xi_components.empty(), errc::empty, "verify_identities: no components");
    require(n >= 2 && n <= 6, errc::scale, "verify_identities: exhaustive enumeration needs n <= 6");
    for (const auto& xi : xi_components)
        require(xi.n == n, errc::dim, "verify_identities: ambient size mismatch");

    const DoubleTensor& xi1 = xi_components.front();
    require(xi1.s == 1, errc::dim, "verify_identities: first component must have order 1");
    double beta1 = 0.0, lambda = 0.0;
    for (double v : xi1.values) {
        beta1 += v * v;
        lambda += std::abs(v) * v * v;
    }
    require(std::abs(beta1 - (n - 1.0)) <= 1e-9 * (n - 1.0), errc::not_normalized,
            "verify_identities: beta_1 must equal n-1");

    const auto perms = all_permutations(n);
    const double nperm = static_cast<double>(perms.size());

    IdentityReport rep;
    auto push = [&](const std::string& name, double lhs, double rhs, bool ineq) {
        IdentityCheck c;
        c.name = name;
        c.lhs = lhs;
        c.rhs = rhs;
        c.is_inequality = ineq;
        c.ok = ineq ? (lhs <= rhs + rel_tol * (1.0 + std::abs(rhs)))
                    : (std::abs(lhs - rhs) <= rel_tol * (1.0 + std::abs(rhs)));
        rep.checks.push_back(c);
    };

    // ---- order-1 identities -------------------------------------------------
    std::vector<double> xi1_of(perms.size());
    for (std::size_t t = 0; t < perms.size(); ++t) {
        double acc = 0.0;
        for (int i = 1; i <= n; ++i)
            acc += xi1.values[(i - 1) * static_cast<std::size_t>(n) + (perms[t][i - 1] - 1)];
        xi1_of[t] = acc;
    }

    double e_mean = 0.0, e_sq = 0.0;
    for (double v : xi1_of) {
        e_mean += v;
        e_sq += v * v;
    }
    push("E[Xi1] = 0", e_mean / nperm, 0.0, false);
    push("E[Xi1^2] = 1", e_sq / nperm, 1.0, false);

    // per-pi conditional identity and global second/third difference moments
    double worst_cond = 0.0;
    double e_diff2 = 0.0, e_diff3 = 0.0;
    for (std::size_t t = 0; t < perms.size(); ++t) {
        const auto& pi = perms[t];
        double cond = 0.0;
        for (int a = 1; a <= n; ++a) {
            for (int b = 1; b <= n; ++b) {
                // Xi1' differs from Xi1 only at slots a and b
                const double xa = xi1.values[(a - 1) * static_cast<std::size_t>(n) + (pi[a - 1] - 1)];
                const double xb = xi1.values[(b - 1) * static_cast<std::size_t>(n) + (pi[b - 1] - 1)];
                const double ya = xi1.values[(a - 1) * static_cast<std::size_t>(n) + (pi[b - 1] - 1)];
                const double yb = xi1.values[(b - 1) * static_cast<std::size_t>(n) + (pi[a - 1] - 1)];
                const double diff = (xa + xb) - (ya + yb);  // Xi1 - Xi1'
                cond += diff;
                e_diff2 += diff * diff;
                e_diff3 += std::abs(diff) * diff * diff;
            }
        }
        cond /= static_cast<double>(n) * n;
        worst_cond = std::max(worst_cond, std::abs(cond - (2.0 / n) * xi1_of[t]));
    }
    push("E[Xi1 - Xi1' | pi1] = (2/n) Xi1 (worst deviation)", worst_cond, 0.0, true);
    const double outcomes = nperm * n * n;
    push("E[(Xi1 - Xi1')^2] = 4/n", e_diff2 / outcomes, 4.0 / n, false);
    push("E|Xi1 - Xi1'|^3 <= 64 Lambda / n^2", e_diff3 / outcomes,
         64.0 * lambda / (static_cast<double>(n) * n), true);

    // ---- higher-order envelopes --------------------------------------------
    for (std::size_t cidx = 1; cidx < xi_components.size(); ++cidx) {
        const DoubleTensor& xis = xi_components[cidx];
        const int s = xis.s;
        require(s >= 2, errc::dim, "verify_identities: later components must have order >= 2");
        double beta_s = 0.0;
        for (double v : xis.values) beta_s += v * v;
        const auto tuples = injective_tuples(n, s);
        const std::size_t half = ipow(n, s);

        std::vector<double> xis_of(perms.size());
        for (std::size_t t = 0; t < perms.size(); ++t) {
            const auto& pi = perms[t];
            double acc = 0.0;
            for (const auto& tuple : tuples) {
                std::size_t i = 0, p = 0;
                for (int k = 0; k < s; ++k) {
                    i = i * n + static_cast<std::size_t>(tuple[k] - 1);
                    p = p * n + static_cast<std::size_t>(pi[tuple[k] - 1] - 1);
                }
                acc += xis.values[i * half + p];
            }
            xis_of[t] = acc;
        }

        double e_s2 = 0.0;
        for (double v : xis_of) e_s2 += v * v;
        const double envelope =
            2.0 * std::exp(2.0 * s) * std::pow(factorial(2 * s), 2) * beta_s / ipow(n, s);
        push("E[Xi" + std::to_string(s) + "^2] envelope", e_s2 / nperm, envelope, true);

        double e_sdiff2 = 0.0;
        for (std::size_t t = 0; t < perms.size(); ++t) {
            const auto& pi = perms[t];
            for (int a = 1; a <= n; ++a) {
                for (int b = 1; b <= n; ++b) {
                    auto pi2 = compose_transposition(pi, a, b);
                    double acc = 0.0;
                    for (const auto& tuple : tuples) {
                        std::size_t i = 0, p = 0, q = 0;
                        for (int k = 0; k < s; ++k) {
                            i = i * n + static_cast<std::size_t>(tuple[k] - 1);
                            p = p * n + static_cast<std::size_t>(pi[tuple[k] - 1] - 1);
                            q = q * n + static_cast<std::size_t>(pi2[tuple[k] - 1] - 1);
                        }
                        acc += xis.values[i * half + p] - xis.values[i * half + q];
                    }
                    e_sdiff2 += acc * acc;
                }
            }
        }
        const double envelope_diff = 24.0 * std::pow(static_cast<double>(s), 4) *
                                     std::exp(2.0 * s) * std::pow(factorial(2 * s), 2) * beta_s /
                                     ipow(n, s + 1);
        push("E[(Xi" + std::to_string(s) + " - Xi" + std::to_string(s) + "')^2] envelope",
             e_sdiff2 / outcomes, envelope_diff, true);
    }
    return rep;
}

double dkw_radius(std::uint64_t samples, double alpha) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

}  // namespace tensorclt
