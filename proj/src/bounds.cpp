#include "tensorclt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tensorclt/hoeffding.hpp"

namespace tensorclt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_div(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
    return num / den;
}
}  // namespace

double log_kappa(int d) {
    require(d >= 1, errc::range, "kappa: d >= 1");
    double lg = std::log(20.0) + 3.0 * std::log(static_cast<double>(d)) + d * std::log(18.0);
    for (int i = 2; i <= 2 * d; ++i) lg += std::log(static_cast<double>(i));
    return lg;
}

double kappa(int d) {
    require(d >= 1, errc::range, "kappa: d >= 1");
    require(d <= 12, errc::overflow, "kappa: d > 12 reported in log-space only (log_kappa)");
    return 20.0 * d * d * d * std::pow(18.0, d) * factorial(2 * d);
}

double const_Cd(int d) {
    require(d >= 1, errc::range, "C_d: d >= 1");
    require(d <= 12, errc::overflow, "C_d: d > 12 reported in log-space only");
    return 5.0 * d * d * std::exp(static_cast<double>(d)) * factorial(2 * d);
}

double const_C1() { return 451.0; }
double const_kappa1() { return 4320.0; }

double gaussian_comparison(double mu1, double sigma1, double mu2, double sigma2) {
    require(sigma1 >= 0.0 && sigma2 >= 0.0, errc::range, "gaussian_comparison: sigmas >= 0");
    require(std::max(sigma1, sigma2) > 0.0, errc::degenerate,
            "gaussian_comparison: both gaussians are degenerate");
    return (std::abs(mu1 - mu2) + std::abs(sigma1 - sigma2)) / std::max(sigma1, sigma2);
}

double mixture_comparison(double ey2, double sigma) {
    require(sigma > 0.0, errc::range, "mixture_comparison: sigma > 0");
    require(ey2 >= 0.0, errc::range, "mixture_comparison: E[Y^2] >= 0");
    return ey2 / (2.0 * std::sqrt(2.0 * M_PI * M_E) * sigma * sigma);
}

BoundReport wstat_clt_bound(const std::vector<DoubleTensor>& components, int n) {
    const int d = static_cast<int>(components.size());
    require(d >= 1, errc::dim, "wstat_clt_bound: need at least xi_1");
    // the d = 1 case is the order-one statement, valid for every n >= 2
    if (d >= 2)
        require(n >= 4 * d * d, errc::small_n, "wstat_clt_bound: need n >= 4d^2");
    require(n >= 2, errc::small_n, "wstat_clt_bound: need n >= 2");

    for (int s = 1; s <= d; ++s) {
        const DoubleTensor& xi = components[s - 1];
        require(xi.s == s && xi.n == n, errc::dim,
                "wstat_clt_bound: component " + std::to_string(s) + " has wrong shape");
        require(is_hoeffding(xi, std::max(1e-300, default_hoeffding_tol(xi))),
                errc::not_hoeffding,
                "wstat_clt_bound: component " + std::to_string(s) + " is not Hoeffding");
    }

    const DoubleTensor& xi1 = components.front();
    double beta1 = 0.0, lambda = 0.0;
    for (double v : xi1.values) {
        beta1 += v * v;
        lambda += std::abs(v) * v * v;
    }
    require(std::abs(beta1 - (n - 1.0)) <= 1e-9 * (n - 1.0), errc::not_normalized,
            "wstat_clt_bound: beta_1 must equal n-1 (rescale the components)");

    BoundReport rep;
    rep.constants["C_1"] = const_C1();
    rep.constants["C_d"] = const_Cd(d);
    rep.terms["bolthausen"] = std::pow(2.0, 18) * const_C1() * lambda / n;
    double higher = 0.0;
    for (int s = 2; s <= d; ++s) {
        double beta_s = 0.0;
        for (double v : components[s - 1].values) beta_s += v * v;
        higher += std::sqrt(beta_s / static_cast<double>(ipow(n, s)));
    }
    rep.terms["higher"] = const_Cd(d) * higher;
    rep.extras["Lambda"] = lambda;
    rep.extras["beta_1"] = beta1;
    rep.finish();
    return rep;
}

BoundReport tensor_bound(const TensorParams& params, const SeminormProfile& profile,
                         double alpha) {
    const int d = params.d, n = params.n;
    require(profile.d == d, errc::dim, "tensor_bound: profile order mismatch");
    require(alpha > 0.0 && alpha < 1.0, errc::range, "tensor_bound: alpha in (0,1)");
    require(std::abs(profile.values[1] - 1.0) <= 1e-9, errc::not_normalized,
            "tensor_bound: |||theta|||_1 must be 1 (rescale theta)");

    const double kap = kappa(d);
    const double delta0 = params.delta.delta[0];
    const double delta1 = params.delta.delta[1];
    const double t0 = profile.values[0];

    BoundReport rep;
    rep.constants["kappa"] = kap;
    rep.constants["C_1"] = const_C1();
    rep.constants["C_d"] = const_Cd(d);

    const double gate_osc = std::pow(params.osc, alpha);
    const double gate_b = std::pow(params.B, alpha);
    const double gate_n = std::pow(kap / n, alpha);
    double gate = gate_osc;
    rep.binding = "osc^alpha";
    if (gate_b > gate) { gate = gate_b; rep.binding = "B^alpha"; }
    if (gate_n > gate) { gate = gate_n; rep.binding = "(kappa/n)^alpha"; }
    rep.feasible = delta1 >= gate;
    rep.extras["feasibility_gate"] = gate;

    // E1: oscillation, correlation, and extendability terms
    const double e1 = 5.0 * std::pow(params.osc, 1.0 - alpha) +
                      5.0 * std::pow(std::abs(delta0), 1.0 - alpha) +
                      std::abs(safe_div(delta0 * (t0 * t0 - 1.0), d * d * delta1)) +
                      6.0 * kap / std::pow(static_cast<double>(n), 1.0 - alpha) +
                      4.0 * t0 * t0 / n;
    rep.terms["E1"] = e1;

    // E2: third-moment row term
    rep.terms["E2"] =
        std::pow(2.0, 36) * safe_div(params.K3 * profile.row_cubic, std::pow(delta1, 1.5));

    // E3: higher seminorms with the slacked radicand clamped at 0
    double e3 = 0.0;
    const double slack = 16.0 * d * d * std::pow(2.0, d) / n;
    for (int s = 2; s <= d; ++s) {
        const double radicand = std::max(0.0, params.sigma.sigma[s] + slack);
        e3 += binom(d, s) * std::sqrt(factorial(s)) * std::sqrt(radicand) * profile.values[s];
    }
    rep.terms["E3"] = 3.0 * kap * safe_div(e3, d * std::sqrt(std::max(0.0, delta1)));

    rep.sigma2 = variance_formula(profile, params.sigma);
    rep.sigma1_2 = d * d * (1.0 - t0 * t0 / n) * delta1;

    if (!params.exact) {
        const double se = params.stderr_of("delta_1");
        rep.flags["delta1_near_noise"] = delta1 < 10.0 * se;
    }
    for (const auto& w : params.warnings) rep.warnings.push_back(w);
    rep.finish();
    return rep;
}

BoundReport vector_bound(const TensorParams& params, const std::vector<double>& theta,
                         VectorBoundVariant variant, int k, double corr_C) {
    require(params.d == 1, errc::dim, "vector_bound: requires d = 1");
    const int n = params.n;
    const double k1 = const_kappa1();
    const double delta0 = params.delta.delta[0];
    const double delta1 = params.delta.delta[1];

    BoundReport rep;
    rep.constants["kappa_1"] = k1;
    if (std::abs(delta1 - 1.0) > 1e-9)
        rep.warnings.push_back("E[X_1^2] != 1: the one-dimensional bound assumes unit variance");

    double sum = 0.0, sumsq = 0.0, sumcube = 0.0;
    for (double t : theta) {
        sum += t;
        sumsq += t * t;
        sumcube += std::abs(t) * t * t;
    }

    switch (variant) {
        case VectorBoundVariant::general: {
            require(std::abs(std::sqrt(sumsq) - 1.0) <= 1e-9, errc::not_normalized,
                    "vector_bound: theta must be a unit vector");
            rep.terms["osc"] = 5.0 * params.osc;
            rep.terms["corr"] = 6.0 * std::abs(delta0);
            rep.terms["kappa1_over_n"] = k1 / n;
            rep.terms["sum_sq"] = (std::abs(delta0) + 1.0 / n) * sum * sum;
            rep.terms["berry_esseen"] = k1 * params.K3 * sumcube;
            rep.sigma2 = variance_formula(
                SeminormProfile{1, {std::abs(sum), std::sqrt(sumsq)}, sumcube},
                params.sigma);
            break;
        }
        case VectorBoundVariant::sum_of_k: {
            require(k >= 1 && k <= n, errc::range, "vector_bound: k out of [1, n]");
            if (std::abs(delta0) > corr_C / n + 1e-12)
                rep.warnings.push_back("|delta_0| > C/n: the sum-of-k constant is not valid");
            rep.terms["osc"] = 5.0 * params.osc;
            rep.terms["k_over_n"] = (8.0 * corr_C + k1 + 1.0) * k / n;
            rep.terms["berry_esseen"] = k1 * params.K3 / std::sqrt(static_cast<double>(k));
            rep.sigma2 = 1.0;
            break;
        }
        case VectorBoundVariant::isotropic: {
            require(std::abs(std::sqrt(sumsq) - 1.0) <= 1e-9, errc::not_normalized,
                    "vector_bound: theta must be a unit vector");
            require(params.K4.has_value(), errc::missing_moment,
                    "vector_bound: isotropic variant needs E[X^4]");
            // tau = n |E[X_1^2 X_2^2] - 1|; with unit variance this is n * pc
            const double tau = n * params.pc;
            rep.extras["tau"] = tau;
            rep.terms["leading"] =
                (5.0 * std::sqrt(tau) + 5.0 * std::sqrt(*params.K4) + k1) / std::sqrt(n);
            rep.terms["sum_sq"] = sum * sum / n;
            rep.terms["berry_esseen"] = 2.0 * k1 * params.K3 * sumcube;
            rep.sigma2 = 1.0;
            break;
        }
    }
    rep.finish();
    return rep;
}

BoundReport slice_poly_bound(const SymmetricCoefficients& c, int k, double eps,
                             std::optional<double> exact_sigma2) {
    const int n = c.n, d = c.d;
    require(k >= 0 && k <= n, errc::range, "slice_poly_bound: k out of [0, n]");
    require(eps >= 0.0, errc::range, "slice_poly_bound: eps >= 0");

    const double kap = kappa(d);
    const double p = static_cast<double>(k) / n;
    const double q = 1.0 - p;

    std::vector<double> a(d + 1);
    for (int s = 0; s <= d; ++s) a[s] = set_seminorm(c, s);
    // row cubic over set-indexed rows: sum_j |sum_{j in F} a_F|^3
    std::vector<double> row(n + 1, 0.0);
    for (const auto& [F, v] : c.coefficients)
        for (int e : F) row[e] += v;
    double row_cubic = 0.0;
    for (int j = 1; j <= n; ++j) row_cubic += std::abs(row[j]) * row[j] * row[j];

    BoundReport rep;
    rep.constants["kappa"] = kap;
    rep.flags["degenerate_p"] = (k == 0 || k == n);
    // stated hypotheses, evaluated and reported rather than enforced
    const double n_gate = std::pow(4.0 * kap, 2.0 * d);
    const double k_gate = 2.0 * kap * std::pow(static_cast<double>(n), 1.0 - 0.5 / d);
    rep.flags["hypothesis_met"] =
        static_cast<double>(n) >= n_gate && k >= k_gate && k <= n - k_gate;

    // variance window
    double center = 0.0;
    for (int s = 1; s <= d; ++s)
        center += std::pow(p, 2 * d - s) * std::pow(q, s) * a[s] * a[s];
    const double c0 = safe_div(12.0 * d * d * std::pow(2.0, d) * a[0] * a[0] / n, std::pow(q, d));
    const double c1 = safe_div(12.0 * d * d * std::pow(2.0, d) / n, p * std::pow(q, d));
    rep.extras["window_center"] = center;

    double sigma2;
    if (exact_sigma2) {
        sigma2 = *exact_sigma2;
        rep.flags["sigma2_exact"] = true;
    } else if (c1 < 1.0) {
        sigma2 = (center + c0) / (1.0 - c1);  // conservative upper solution
        rep.flags["sigma2_exact"] = false;
    } else {
        sigma2 = kInf;
        rep.flags["sigma2_exact"] = false;
    }
    rep.sigma2 = sigma2;
    rep.extras["window_radius"] =
        c0 + safe_div(12.0 * d * d * std::pow(2.0, d) * sigma2 / n, p * std::pow(q, d));

    // Levy concentration bound
    const double sigma = std::sqrt(std::max(0.0, sigma2));
    rep.terms["gaussian_width"] = eps == 0.0 ? 0.0 : safe_div(eps, std::sqrt(2.0 * M_PI) * sigma);
    rep.terms["kappa_sqrt_n"] = safe_div(16.0 * kap / std::sqrt(n), std::sqrt(p));
    rep.terms["sum_sq"] = safe_div(12.0 * d * d * a[0] * a[0] / n, q * a[1] * a[1]);
    rep.terms["row_cubic"] = safe_div(std::pow(2.0, 39) * std::pow(p, 1.5) * row_cubic,
                                      std::pow(p, 3 * d) * std::pow(q, 1.5) * a[1] * a[1] * a[1]);
    double tail = 0.0;
    for (int s = 2; s <= d; ++s)
        tail += std::sqrt(std::pow(p, 2 * d - s) * std::pow(q, s)) * a[s];
    rep.terms["higher_seminorms"] =
        safe_div(16.0 * kap * std::sqrt(p) * tail, std::pow(p, d) * std::sqrt(q) * a[1]);

    rep.finish();
    return rep;
}

BoundReport extendible_bound(const TensorParams& params, const SeminormProfile& profile,
                             double alpha) {
    const int d = params.d;
    require(profile.d == d, errc::dim, "extendible_bound: profile order mismatch");
    require(alpha > 0.0 && alpha < 1.0, errc::range, "extendible_bound: alpha in (0,1)");
    require(std::abs(profile.values[1] - 1.0) <= 1e-9, errc::not_normalized,
            "extendible_bound: |||theta|||_1 must be 1");

    const double kap = kappa(d);
    const double delta0 = params.delta.delta[0];
    const double delta1 = params.delta.delta[1];
    const double t0 = profile.values[0];

    BoundReport rep;
    rep.constants["kappa"] = kap;
    for (int t = 0; t <= d; ++t)
        if (params.delta.delta[t] < -1e-12) {
            rep.warnings.push_back("delta_" + std::to_string(t) +
                                   " < 0: not an extendible correlation profile");
            break;
        }

    const double gate_pc = std::pow(params.pc, alpha / 2.0);
    const double gate_d0 = std::pow(std::max(0.0, delta0), alpha);
    rep.feasible = delta1 > std::max(gate_pc, gate_d0);
    rep.binding = gate_pc >= gate_d0 ? "pc^(alpha/2)" : "delta_0^alpha";

    // delta_0 < 0 cannot come from an extendible tensor; it is warned above
    // and clamped here so every term stays nonnegative
    rep.terms["E1"] = 5.0 * std::pow(params.pc, (1.0 - alpha) / 2.0) +
                      5.0 * std::pow(std::max(0.0, delta0), 1.0 - alpha) +
                      safe_div(std::max(0.0, delta0) * std::abs(t0 * t0 - 1.0), d * d * delta1);
    rep.terms["E2"] =
        std::pow(2.0, 36) * safe_div(params.K3 * profile.row_cubic, std::pow(delta1, 1.5));
    double e3 = 0.0;
    for (int s = 2; s <= d; ++s) {
        const double radicand = params.sigma.sigma[s];
        if (radicand < -1e-12)
            rep.warnings.push_back("Sigma_" + std::to_string(s) +
                                   " < 0: not an extendible profile; radicand clamped");
        e3 += binom(d, s) * std::sqrt(factorial(s)) * std::sqrt(std::max(0.0, radicand)) *
              profile.values[s];
    }
    rep.terms["E3"] = 3.0 * kap * safe_div(e3, d * std::sqrt(std::max(0.0, delta1)));

    rep.sigma2 = variance_formula(profile, params.sigma);
    rep.finish();
    return rep;
}

FinitePopulationNorms norms_of(const std::vector<DenseTensor>& g, int n, double mu) {
    FinitePopulationNorms out;
    out.d = static_cast<int>(g.size());
    out.n = n;
    out.mu = mu;
    out.l2.resize(out.d);
    for (int s = 1; s <= out.d; ++s) {
        double sq = 0.0;
        for (double v : g[s - 1].values) sq += v * v;
        out.l2[s - 1] = std::sqrt(sq);
    }
    double cube = 0.0;
    for (double v : g[0].values) cube += std::abs(v) * v * v;
    out.g1_l3 = std::cbrt(cube);
    return out;
}

BoundReport finite_population_bound(const FinitePopulationNorms& norms) {
    const int d = norms.d, n = norms.n;
    require(d >= 1, errc::range, "finite_population_bound: d >= 1");
    require(n >= 4 * d * d, errc::small_n, "finite_population_bound: need n >= 4d^2");
    require(norms.l2.size() == static_cast<std::size_t>(d), errc::dim,
            "finite_population_bound: need ||g_s||_2 for s = 1..d");
    const double g1 = norms.l2[0];
    require(g1 > 0.0, errc::range, "finite_population_bound: ||g_1||_2 must be positive");

    BoundReport rep;
    rep.constants["C_1"] = const_C1();
    rep.constants["C_d"] = const_Cd(d);
    rep.terms["bolthausen"] = std::pow(2.0, 19) * const_C1() /
                              std::sqrt(static_cast<double>(d) * n) *
                              std::pow(norms.g1_l3 / g1, 3);
    double tail = 0.0;
    for (int s = 2; s <= d; ++s)
        tail += (1.0 / factorial(s)) * std::pow(d / std::sqrt(static_cast<double>(n)), s - 1) *
                norms.l2[s - 1] / g1;
    rep.terms["higher"] = 2.0 * const_Cd(d) * tail;
    rep.extras["mu"] = norms.mu;
    rep.sigma2 = d / (n - 1.0) * (1.0 - static_cast<double>(d) / n) * g1 * g1;
    rep.finish();
    return rep;
}

double osc_upper_bound(const TensorParams& params, OscFlavor flavor) {
    const int d = params.d, n = params.n;
    const double delta1 = params.delta.delta[1];
    switch (flavor) {
        case OscFlavor::fourth_moment:
            require(d == 1, errc::dim, "fourth-moment flavor applies to vectors");
            require(params.K4.has_value(), errc::missing_moment, "needs E[X^4]");
            return std::sqrt(params.pc) + std::sqrt(*params.K4) / std::sqrt(n);
        case OscFlavor::third_moment:
            require(d == 1, errc::dim, "third-moment flavor applies to vectors");
            return std::sqrt(params.pc) + 4.0 * params.K3 / std::pow(static_cast<double>(n), 0.25);
        case OscFlavor::tensor_fourth:
            require(params.K4.has_value(), errc::missing_moment, "needs E[X^4]");
            return std::sqrt(params.pc) +
                   5.0 * d / std::sqrt(n) * std::sqrt(std::abs(delta1) + *params.K4);
        case OscFlavor::dissociated:
            return 16.0 * d * (params.K3 + 1.0) / std::pow(static_cast<double>(n), 0.25);
        case OscFlavor::mixture:
            return std::sqrt(params.pc) +
                   16.0 * d * (params.K3 + 1.0) / std::pow(static_cast<double>(n), 0.25);
    }
    throw Error(errc::range, "osc_upper_bound: unknown flavor");
}

}  // namespace tensorclt
