#include "tensorclt/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tensorclt/coefficients.hpp"

namespace tensorclt {

// Reduction behind the weights: for zeta with vanishing diagonals and slot
// symmetry, the injective statistic of the averaged level s satisfies
//   Z_s = R_s + sum_{h<s} mu_{h,s} n^{s-h} (-1)^{s-h-1} Z_h.
// Expanding H[zeta_s] and counting, each subset pair (F, G) contributes
// through its intersection size h' AND through cross-argument collisions
// between F\G and G\F: a size-m partial matching glues m more slots into
// the lower statistic, with inclusion-exclusion sign (-1)^m. Only the
// matching-free part survives in the n -> infinity limit.
double mu_weight(int h, int s, int n) {
    require(0 <= h && h < s && s <= n, errc::range, "mu_weight: need 0 <= h < s <= n");
    double coeff = 0.0;  // coefficient of Z_h in Z_s - R_s
    for (int hp = 0; hp <= h; ++hp) {
        const int m = h - hp;
        for (int f = hp; f <= s; ++f) {
            for (int g = hp; g <= s; ++g) {
                if (f == s && g == s) continue;  // the identity term
                const int a = f - hp, b = g - hp;
                if (m > std::min(a, b) || g - hp > s - f) continue;
                const double pairs = binom(s, hp) * binom(s - hp, a) * binom(s - f, b);
                if (pairs == 0.0) continue;
                const double matchings = binom(a, m) * binom(b, m) * factorial(m);
                // injective completions of the F-union-G pattern, as a
                // falling-factorial product (no large factorials)
                const int u = f + g - hp;
                double ff = 1.0;
                for (int t = u; t < s; ++t) ff *= static_cast<double>(n - t);
                const double npow = std::pow(static_cast<double>(n), a + b - 2 * m);
                const double sign = ((f + g + m) % 2 == 0) ? 1.0 : -1.0;
                coeff -= sign * pairs * matchings * ff * npow;
            }
        }
    }
    const double lead = ((s - h - 1) % 2 == 0) ? 1.0 : -1.0;
    return lead * coeff / std::pow(static_cast<double>(n), s - h);
}

double w_weight(int s, int r, int n) {
    require(0 <= s && s <= r && r <= n, errc::range, "w_weight: need 0 <= s <= r <= n");
    if (s == r) return 1.0;
    // chains u = (s, T..., r) for T subseteq {s+1, ..., r-1}; |X_{s,r}| = 2^{r-s-1}
    const int mid = r - s - 1;
    double acc = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << mid); ++mask) {
        std::vector<int> chain{s};
        for (int k = 0; k < mid; ++k)
            if ((mask >> k) & 1u) chain.push_back(s + 1 + k);
        chain.push_back(r);
        double mu = 1.0;
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            mu *= mu_weight(chain[k], chain[k + 1], n);
        acc += (chain.size() % 2 == 0) ? mu : -mu;
    }
    return ((r - s + 1) % 2 == 0) ? acc : -acc;
}

namespace {

struct Violation {
    double worst = 0.0;
    std::size_t offset = 0;
};

std::string describe_entry(const DoubleTensor& z, std::size_t off) {
    DenseTensor flat(2 * z.s, z.n);
    auto digits = flat.decode(off);
    std::string out = "(i=";
    for (int k = 0; k < z.s; ++k) out += (k ? "," : "") + std::to_string(digits[k]);
    out += "; p=";
    for (int k = 0; k < z.s; ++k) out += (k ? "," : "") + std::to_string(digits[z.s + k]);
    return out + ")";
}

/// A5 via adjacent-transposition generators of both slot groups.
Violation symmetry_defect(const DoubleTensor& z) {
    Violation v;
    const int s = z.s, n = z.n;
    DenseTensor flat(2 * s, n);
    std::vector<int> digits(2 * s), swapped(2 * s);
    for (std::size_t off = 0; off < z.size(); ++off) {
        std::size_t rem = off;
        for (int k = 2 * s - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % n) + 1;
            rem /= n;
        }
        for (int group = 0; group < 2; ++group) {
            for (int k = 0; k + 1 < s; ++k) {
                swapped = digits;
                std::swap(swapped[group * s + k], swapped[group * s + k + 1]);
                double diff = std::abs(z.values[off] - z.values[flat.offset(swapped)]);
                if (diff > v.worst) { v.worst = diff; v.offset = off; }
            }
        }
    }
    return v;
}

Violation diagonal_defect(const DoubleTensor& z) {
    Violation v;
    const int s = z.s, n = z.n;
    std::vector<int> digits(2 * s);
    for (std::size_t off = 0; off < z.size(); ++off) {
        std::size_t rem = off;
        for (int k = 2 * s - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % n) + 1;
            rem /= n;
        }
        auto injective_half = [&](int group) {
            for (int a = 0; a < s; ++a)
                for (int b = a + 1; b < s; ++b)
                    if (digits[group * s + a] == digits[group * s + b]) return false;
            return true;
        };
        if (!injective_half(0) || !injective_half(1)) {
            double mag = std::abs(z.values[off]);
            if (mag > v.worst) { v.worst = mag; v.offset = off; }
        }
    }
    return v;
}

/// zeta_{s} from zeta_{s+1}: average out the last slot of each group.
DoubleTensor average_last(const DoubleTensor& z) {
    const int s = z.s, n = z.n;
    DoubleTensor out(s - 1, n);
    const std::size_t half_out = ipow(n, s - 1);
    // input offset = ((i_head * n + i_last) * n^{s-1} * n) ... walk explicitly
    for (std::size_t ih = 0; ih < half_out; ++ih) {
        for (std::size_t ph = 0; ph < half_out; ++ph) {
            double sum = 0.0;
            for (int il = 0; il < n; ++il) {
                const std::size_t ifull = ih * n + il;
                for (int pl = 0; pl < n; ++pl) {
                    const std::size_t pfull = ph * n + pl;
                    sum += z.values[ifull * half_out * n + pfull];
                }
            }
            out.values[ih * half_out + ph] = sum / (static_cast<double>(n) * n);
        }
    }
    return out;
}

}  // namespace

DecompositionResult decompose_z(const DoubleTensor& z) {
    const int r = z.s, n = z.n;
    require(r >= 1 && n >= r, errc::range, "decompose_z: need 1 <= r <= n");
    const double tol = 1e-9 * std::max(1e-300, z.max_abs());

    Violation sym = symmetry_defect(z);
    require(sym.worst <= tol, errc::not_symmetric,
            "decompose_z: slot-permutation symmetry violated by " + std::to_string(sym.worst) +
                " at " + describe_entry(z, sym.offset));
    Violation diag = diagonal_defect(z);
    require(diag.worst <= tol, errc::diagonal,
            "decompose_z: nonzero entry off the injective support, |z| = " +
                std::to_string(diag.worst) + " at " + describe_entry(z, diag.offset));

    DecompositionResult res;
    res.r = r;
    res.n = n;
    res.w.resize(r + 1);
    for (int s = 0; s <= r; ++s) res.w[s] = w_weight(s, r, n);

    // averaged ladder zeta_r = z, zeta_{s-1} = average_last(zeta_s)
    std::vector<DoubleTensor> zeta(r + 1);
    zeta[r] = z;
    for (int s = r; s >= 1; --s) zeta[s - 1] = average_last(zeta[s]);
    res.zeta0 = zeta[0].values[0];
    res.constant = static_cast<double>(ipow(n, r)) * res.w[0] * res.zeta0;

    res.components.resize(r);
    for (int s = 1; s <= r; ++s) {
        WeightedComponent comp;
        comp.weight = static_cast<double>(ipow(n, r - s)) * res.w[s];
        comp.xi = hoeffding_double(zeta[s]);
        require(is_hoeffding(comp.xi, std::max(1e-300, default_hoeffding_tol(comp.xi))),
                errc::not_hoeffding, "decompose_z: projected component failed the Hoeffding check");
        res.components[s - 1] = std::move(comp);
    }
    return res;
}

double evaluate_z(const DoubleTensor& z, const std::vector<int>& pi) {
    require(is_permutation_of_n(pi, z.n), errc::perm, "evaluate_z: pi is not a permutation of [n]");
    const int d = z.s, n = z.n;
    const std::size_t half = ipow(n, d);
    double acc = 0.0;
    std::vector<int> digits(d);
    for (std::size_t i = 0; i < half; ++i) {
        std::size_t rem = i;
        for (int k = d - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % n);
            rem /= n;
        }
        std::size_t p = 0;
        for (int k = 0; k < d; ++k) p = p * n + static_cast<std::size_t>(pi[digits[k]] - 1);
        acc += z.values[i * half + p];
    }
    return acc;
}

double evaluate_w(const std::vector<WeightedComponent>& components, const std::vector<int>& pi) {
    double acc = 0.0;
    for (const auto& comp : components) {
        const int s = comp.xi.s, n = comp.xi.n;
        require(is_permutation_of_n(pi, n), errc::perm,
                "evaluate_w: pi is not a permutation of [n]");
        const std::size_t half = ipow(n, s);
        double part = 0.0;
        for (const auto& tuple : injective_tuples(n, s)) {
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

std::vector<DoubleTensor> finite_population_transform(const std::vector<DenseTensor>& g, int n) {
    const int d = static_cast<int>(g.size());
    require(d >= 1, errc::dim, "finite_population_transform: need g_1..g_d");
    for (int s = 1; s <= d; ++s) {
        const DenseTensor& gs = g[s - 1];
        require(gs.s == s && gs.n == n, errc::dim,
                "finite_population_transform: g_" + std::to_string(s) + " must be an order-" +
                    std::to_string(s) + " tensor over [n]");
        const double tol = 1e-9 * std::max(1e-300, gs.max_abs()) * n;
        require(hoeffding_defect_single(gs) <= tol, errc::not_hoeffding,
                "finite_population_transform: g_" + std::to_string(s) +
                    " fails the single-index cancellation");
        // symmetric with vanishing diagonal
        std::vector<int> digits(s);
        for (std::size_t off = 0; off < gs.size(); ++off) {
            std::size_t rem = off;
            for (int k = s - 1; k >= 0; --k) {
                digits[k] = static_cast<int>(rem % n) + 1;
                rem /= n;
            }
            bool inj = true;
            for (int a = 0; a < s && inj; ++a)
                for (int b = a + 1; b < s; ++b)
                    if (digits[a] == digits[b]) { inj = false; break; }
            if (!inj)
                require(gs.values[off] == 0.0, errc::diagonal,
                        "finite_population_transform: g_" + std::to_string(s) +
                            " has a nonzero diagonal entry");
            for (int k = 0; k + 1 < s; ++k) {
                std::vector<int> sw = digits;
                std::swap(sw[k], sw[k + 1]);
                require(std::abs(gs.values[off] - gs.at(sw)) <= tol, errc::not_symmetric,
                        "finite_population_transform: g_" + std::to_string(s) + " not symmetric");
            }
        }
    }

    std::vector<DoubleTensor> xi;
    xi.reserve(d);

    // s = 1
    {
        DoubleTensor x1(1, n);
        for (int i = 1; i <= n; ++i) {
            const double lead = (i <= d ? 1.0 : 0.0) - static_cast<double>(d) / n;
            for (int j = 1; j <= n; ++j)
                x1.values[(i - 1) * static_cast<std::size_t>(n) + (j - 1)] =
                    lead * g[0].values[j - 1];
        }
        xi.push_back(std::move(x1));
    }

    for (int s = 2; s <= d; ++s) {
        // alpha^s_l, l = 1..s
        std::vector<double> alpha(s + 1, 0.0);
        alpha[s] = 1.0 / factorial(s);
        for (int l = s - 1; l >= 1; --l) {
            double prod = 1.0;
            for (int k = 1; k <= s - l; ++k) prod *= 1.0 - static_cast<double>(d) / (s - k);
            alpha[l] = prod / factorial(s);
        }

        DoubleTensor xs(s, n);
        const std::size_t half = ipow(n, s);
        std::vector<int> digits(s);
        for (std::size_t i = 0; i < half; ++i) {
            std::size_t rem = i;
            bool in_d = true;
            for (int k = s - 1; k >= 0; --k) {
                digits[k] = static_cast<int>(rem % n) + 1;
                rem /= n;
                if (digits[k] > d) in_d = false;
            }
            int distinct = 0;
            for (int a = 0; a < s; ++a) {
                bool fresh = true;
                for (int b = 0; b < a; ++b)
                    if (digits[b] == digits[a]) { fresh = false; break; }
                if (fresh) ++distinct;
            }
            if (!in_d) continue;
            const double lead = alpha[distinct];
            if (lead == 0.0) continue;
            for (std::size_t j = 0; j < half; ++j)
                xs.values[i * half + j] = lead * g[s - 1].values[j];
        }
        xi.push_back(std::move(xs));
    }

    for (const auto& x : xi)
        require(is_hoeffding(x, std::max(1e-300, default_hoeffding_tol(x))), errc::not_hoeffding,
                "finite_population_transform: output failed the Hoeffding check");
    return xi;
}

}  // namespace tensorclt
