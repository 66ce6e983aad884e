#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tensorclt/decomposition.hpp"
#include "tensorclt/rng.hpp"
#include "tensorclt/tensor.hpp"

namespace tensorclt {

/// erfc via the Cody rational minimax approximations (coefficients pinned;
/// absolute error well under 1e-12 across the real line).
double erfc_cody(double x);

/// Standard normal CDF, Phi(x) = erfc(-x/sqrt(2)) / 2.
double normal_cdf(double x);

/// A real law: either an exact support/probability list or a sorted sample
/// cloud with equal weights. Support is ascending; equal values (within
/// 1e-12 absolute) are merged, which also pins the eps = 0 behaviour of the
/// concentration function.
struct EmpiricalDistribution {
    std::vector<double> support;
    std::vector<double> prob;
    bool exact = false;

    static EmpiricalDistribution from_samples(std::vector<double> values);
    static EmpiricalDistribution from_weighted(std::vector<std::pair<double, double>> atoms,
                                               bool exact);
    /// Integer counts over `total` outcomes; probabilities formed only once
    /// at the end so the mass bookkeeping stays exact.
    static EmpiricalDistribution from_counts(std::vector<std::pair<double, std::uint64_t>> atoms,
                                             std::uint64_t total);

    double mean() const;
    double variance() const;
};

/// sup_x |F(x) - Phi((x - mu)/sigma)| — exact for atomic laws, the standard
/// one-sided sup statistic for sample clouds.
double kolmogorov_distance(const EmpiricalDistribution& dist, double mu, double sigma2);

/// Levy concentration: sup_x P(x <= X <= x + eps), attained with the window
/// anchored at a support point.
double levy_concentration(const EmpiricalDistribution& dist, double eps);

/// Exact law of W = sum_s weight_s sum_{i injective} xi_s(i, pi o i) under
/// uniform pi; n <= 8.
EmpiricalDistribution exact_wstat_distribution(const std::vector<WeightedComponent>& components,
                                               int n);

/// Monte Carlo version for larger n.
EmpiricalDistribution sample_wstat_distribution(const std::vector<WeightedComponent>& components,
                                                int n, std::uint64_t samples, std::uint64_t seed);

/// Exact law of f(xi) = sum_F a_F prod_{i in F} x_i with xi uniform on the
/// k-slice of {0,1}^n; requires C(n,k) <= 200000.
EmpiricalDistribution exact_slice_distribution(const SymmetricCoefficients& c, int k);

/// Exact law of (X_1+...+X_k)/sqrt(k) for the two-point mixture model:
/// zero vector w.p. eps, Rademacher/sqrt(1-eps) otherwise.
EmpiricalDistribution exact_mixture_ksum_distribution(double eps, int k);

struct IdentityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool is_inequality = false;  // lhs <= rhs when set, |lhs-rhs| small otherwise
    bool ok = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// Exhaustive verification over (pi, I1, I2) of the exchangeable-pair
/// moment identities for Xi_1 (beta_1 = n-1 required) and the second-moment
/// envelopes for higher components. n <= 6.
IdentityReport verify_identities(const std::vector<DoubleTensor>& xi_components, int n,
                                 double rel_tol = 1e-9);

/// DKW confidence radius at level `alpha` for M samples.
double dkw_radius(std::uint64_t samples, double alpha = 0.001);

}  // namespace tensorclt
