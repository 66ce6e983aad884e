#pragma once

#include <vector>

#include "tensorclt/hoeffding.hpp"
#include "tensorclt/tensor.hpp"

namespace tensorclt {

/// mu_{h,s} = C(s,h) sum_{f=0}^{s-h} 2^{s-h-f} (-1)^f C(s-h,f) prod_{u=1}^{f} (n-s+u)/n.
/// The falling-factorial product form avoids large factorials.
double mu_weight(int h, int s, int n);

/// w_{r,r} = 1; for s < r, sums over all strictly increasing chains from s
/// to r: w_{s,r} = (-1)^{r-s+1} sum_u (-1)^{|dom u|} prod mu_{u(i),u(i+1)}.
double w_weight(int s, int r, int n);

struct WeightedComponent {
    double weight = 0.0;  // n^{r-s} * w_{s,r}
    DoubleTensor xi;      // H[zeta_s], Hoeffding within tolerance
};

/// Exact rewriting of a Z-statistic as a weighted W-statistic plus a
/// constant: for every permutation pi,
///   evaluate_z(z, pi) = evaluate_w(components, pi) + constant.
struct DecompositionResult {
    int r = 0;
    int n = 0;
    std::vector<WeightedComponent> components;  // s = 1..r
    double constant = 0.0;                      // n^r * w_{0,r} * zeta_0
    double zeta0 = 0.0;                         // grand mean of z
    std::vector<double> w;                      // w_{s,r} for s = 0..r
};

/// Requires A5 (invariance under separate slot permutations of the two
/// index groups) and A6 (zero off the injective indices), both within
/// 1e-9 * max|z|; violations report the worst offending entry.
DecompositionResult decompose_z(const DoubleTensor& z);

/// Z = sum_{i in [n]^d} z(i, pi o i).
double evaluate_z(const DoubleTensor& z, const std::vector<int>& pi);

/// W = sum_s weight_s * sum_{i injective} xi_s(i, pi o i).
double evaluate_w(const std::vector<WeightedComponent>& components, const std::vector<int>& pi);

/// Finite-population lift: from symmetric single-index Hoeffding tensors
/// g_1..g_d (vanishing diagonal) builds doubly-indexed Hoeffding tensors
///   xi_1(i,j) = (1_{[d]}(i) - d/n) g_1(j),
///   xi_s(i,j) = alpha^s_{|Im(i)|} 1_{[d]^s}(i) g_s(j)    (s >= 2)
/// with alpha^s_s = 1/s! and alpha^s_l = (1/s!) prod_{k=1}^{s-l} (1 - d/(s-k)).
std::vector<DoubleTensor> finite_population_transform(const std::vector<DenseTensor>& g, int n);

}  // namespace tensorclt
