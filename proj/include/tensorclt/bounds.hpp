#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tensorclt/coefficients.hpp"
#include "tensorclt/models.hpp"
#include "tensorclt/tensor.hpp"

namespace tensorclt {

/// Evaluated error terms of one bound. `total` is the sum of `terms`;
/// `clamped` = min(1, total) since a Kolmogorov distance never exceeds 1.
/// Infinities follow the 1/0 = inf convention and serialize as "inf".
struct BoundReport {
    std::optional<double> sigma2;
    std::optional<double> sigma1_2;
    std::map<std::string, double> terms;
    double total = 0.0;
    double clamped = 0.0;
    bool feasible = true;
    std::string binding;  // which feasibility maximum binds
    std::map<std::string, double> constants;
    std::map<std::string, bool> flags;
    std::map<std::string, double> extras;
    std::vector<std::string> warnings;

    void finish() {
        total = 0.0;
        for (const auto& [k, v] : terms) total += v;
        clamped = std::min(1.0, total);
    }
};

/// kappa(d) = 20 d^3 18^d (2d)!. Overflow-guarded: d <= 12 in linear space.
double kappa(int d);
/// C_d = 5 d^2 e^d (2d)!.
double const_Cd(int d);
/// Bolthausen constant C_1 = 451.
double const_C1();
/// One-dimensional constant kappa_1 = 4320.
double const_kappa1();
/// log kappa(d), defined for every d >= 1.
double log_kappa(int d);

/// d_K(N(mu1, s1^2), N(mu2, s2^2)) <= (|mu1-mu2| + |s1-s2|) / max(s1, s2).
double gaussian_comparison(double mu1, double sigma1, double mu2, double sigma2);

/// Mixture-vs-center comparison: E[Y^2] / (2 sqrt(2 pi e) sigma^2).
double mixture_comparison(double ey2, double sigma);

/// Combinatorial CLT bound for a W-statistic with Hoeffding components
/// xi_1..xi_d, beta_1 = n-1:
///   d_K(W, N(0,1)) <= 2^18 C_1 Lambda / n + C_d sum_{s>=2} sqrt(beta_s / n^s).
BoundReport wstat_clt_bound(const std::vector<DoubleTensor>& components, int n);

/// Main tensor bound at level alpha: feasibility
/// delta_1 >= max(osc^alpha, B^alpha, (kappa/n)^alpha) and error terms
/// E1 (oscillation/correlation), E2 (third-moment row term with constant
/// 2^36), E3 (higher seminorm term with radicand Sigma_s + 16 d^2 2^d / n
/// clamped at 0). Also emits sigma^2 and sigma_1^2 = d^2 (1 - |||theta|||_0^2/n) delta_1.
BoundReport tensor_bound(const TensorParams& params, const SeminormProfile& profile,
                         double alpha);

enum class VectorBoundVariant { general, sum_of_k, isotropic };

/// One-dimensional specializations (kappa_1 = 4320). For sum_of_k, theta is
/// the k-average; pass k and the correlation constant C with |delta_0| <= C/n.
BoundReport vector_bound(const TensorParams& params, const std::vector<double>& theta,
                         VectorBoundVariant variant, int k = 0, double corr_C = 0.0);

/// Slice-polynomial variance window and Levy concentration bound. If the
/// exact variance is known (slice enumeration), pass it; otherwise the
/// window is solved conservatively for sigma^2.
BoundReport slice_poly_bound(const SymmetricCoefficients& c, int k, double eps,
                             std::optional<double> exact_sigma2 = std::nullopt);

/// Infinitely-extendible variant: pc replaces osc, no 16 d^2 2^d / n slack
/// inside the radical and no kappa/n terms.
BoundReport extendible_bound(const TensorParams& params, const SeminormProfile& profile,
                             double alpha);

struct FinitePopulationNorms {
    int d = 0;
    int n = 0;
    std::vector<double> l2;  // ||g_s||_2 for s = 1..d
    double g1_l3 = 0.0;      // ||g_1||_3
    double mu = 0.0;         // E[T]
};

/// d_K(T, N(mu, sigma^2)) bound for finite population statistics:
///   2^19 C_1 / sqrt(d n) (||g_1||_3/||g_1||_2)^3
///   + 2 C_d sum_{s>=2} (1/s!) (d/sqrt(n))^{s-1} ||g_s||_2/||g_1||_2,
/// with sigma^2 = d/(n-1) (1 - d/n) ||g_1||_2^2.
BoundReport finite_population_bound(const FinitePopulationNorms& norms);

FinitePopulationNorms norms_of(const std::vector<DenseTensor>& g, int n, double mu = 0.0);

enum class OscFlavor { fourth_moment, third_moment, tensor_fourth, dissociated, mixture };

/// Oscillation upper bounds by moment hypothesis:
///   fourth-moment:  sqrt(pc) + sqrt(K4)/sqrt(n)               (d = 1, unit variance)
///   third-moment:   sqrt(pc) + 4 K3 / n^{1/4}                 (d = 1, unit variance)
///   tensor-fourth:  sqrt(pc) + 5d/sqrt(n) (|delta_1| + K4)^{1/2}
///   dissociated:    16 d (K3 + 1) / n^{1/4}
///   mixture:        sqrt(pc) + 16 d (K3 + 1) / n^{1/4}
double osc_upper_bound(const TensorParams& params, OscFlavor flavor);

}  // namespace tensorclt
