#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tensorclt/tensor.hpp"

namespace tensorclt {

/// Seminorm ladder of a coefficient tensor plus the cubic row sum used by
/// the third-moment error term.
struct SeminormProfile {
    int d = 0;
    std::vector<double> values;  // |||theta|||_s for s = 0..d
    double row_cubic = 0.0;      // sum_j |sum_{i(1)=j} theta_i|^3

    double at(int s) const {
        require(s >= 0 && s <= d, errc::range, "seminorm order out of [0, d]");
        return values[s];
    }
};

struct DeltaVector {
    int d = 0;
    std::vector<double> delta;  // delta_0..delta_d

    DeltaVector() = default;
    DeltaVector(int d_, std::vector<double> v) : d(d_), delta(std::move(v)) {
        require(static_cast<int>(delta.size()) == d + 1, errc::dim,
                "DeltaVector needs d+1 entries");
    }
};

struct SigmaVector {
    int d = 0;
    std::vector<double> sigma;  // Sigma_0..Sigma_d
};

/// Entries outside [-1, 1] violate the second-moment normalization; callers
/// may still evaluate formulas on such inputs, so this only reports.
std::vector<std::string> a1_warnings(const DeltaVector& dv);

/// |||theta|||_s over the expanded tensor theta_i = a_{Im(i)}:
/// sqrt( sum_{j in [n]^s} ( sum_{j subseteq i} theta_i )^2 ), s = 0 gives
/// |sum_i theta_i|.
double seminorm(const SymmetricCoefficients& c, int s);

/// Set-indexed variant |||a|||_s = sqrt( sum_{|G|=s} ( sum_{G subseteq F} a_F )^2 ),
/// s = 0 gives |sum_F a_F|. Related to seminorm() by
/// seminorm(c, s) = (d-s)! * sqrt(s!) * set_seminorm(c, s).
double set_seminorm(const SymmetricCoefficients& c, int s);

SeminormProfile make_profile(const SymmetricCoefficients& c);

/// |||H[S_[s][theta]]|||_s — the Hoeffding-projected partial-sum seminorm;
/// satisfies |||H[S_[s][theta]]|||_s^2 <= 12 s! |||theta|||_s^2.
double hs_seminorm(const SymmetricCoefficients& c, int s);

enum class GammaMethod { closed, recursive };

/// gamma_{s,r}: closed form (-1)^{r-s} C(r,s), or the bottom-up recursion
/// gamma_{s-1,r} = -sum_{x=s}^{r} C(x,s-1) gamma_{x,r} with gamma_{r,r}=1.
/// Exact integer arithmetic, r <= 20.
std::int64_t gamma_const(int s, int r, GammaMethod method);

/// Sigma_s = sum_{t=0}^{s} C(s,t) (-1)^{s-t} delta_t.
SigmaVector sigma_from_delta(const DeltaVector& dv);

/// Var(<theta, X>) = sum_s C(d,s)^2 s! Sigma_s |||theta|||_s^2.
double variance_formula(const SymmetricCoefficients& c, const DeltaVector& dv);
double variance_formula(const SeminormProfile& profile, const SigmaVector& sv);

/// Brute-force twin: sum over injective index pairs of
/// theta_i theta_j delta_{|Im(i) cap Im(j)|}.
double variance_direct(const SymmetricCoefficients& c, const DeltaVector& dv,
                       std::size_t budget = 100000000);

std::int64_t binom_i64(int n, int k);
double binom(int n, int k);
double factorial(int n);

}  // namespace tensorclt
