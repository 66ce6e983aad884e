#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tensorclt/errors.hpp"
#include "tensorclt/multi_index.hpp"

namespace tensorclt {

inline std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

/// Dense order-s tensor over [n]^s, row-major with slot 1 most significant.
struct DenseTensor {
    int s = 0;
    int n = 0;
    std::vector<double> values;

    DenseTensor() = default;
    DenseTensor(int s_, int n_) : s(s_), n(n_), values(ipow(n_, s_), 0.0) {}
    DenseTensor(int s_, int n_, std::vector<double> v) : s(s_), n(n_), values(std::move(v)) {
        require(values.size() == ipow(n, s), errc::dim, "DenseTensor: value count must be n^s");
    }

    std::size_t size() const { return values.size(); }

    /// Flat offset of a 1-based digit tuple.
    std::size_t offset(const std::vector<int>& idx) const {
        std::size_t off = 0;
        for (int k = 0; k < s; ++k) off = off * n + static_cast<std::size_t>(idx[k] - 1);
        return off;
    }

    double at(const std::vector<int>& idx) const { return values[offset(idx)]; }
    double& at(const std::vector<int>& idx) { return values[offset(idx)]; }

    /// Decodes a flat offset into 1-based digits.
    std::vector<int> decode(std::size_t off) const {
        std::vector<int> idx(s);
        for (int k = s - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(off % n) + 1;
            off /= n;
        }
        return idx;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Doubly-indexed tensor over [n]^s x [n]^s, stored as an order-2s dense
/// block (first group slots 1..s, second group slots s+1..2s).
struct DoubleTensor {
    int s = 0;
    int n = 0;
    std::vector<double> values;

    DoubleTensor() = default;
    DoubleTensor(int s_, int n_) : s(s_), n(n_), values(ipow(n_, 2 * s_), 0.0) {}
    DoubleTensor(int s_, int n_, std::vector<double> v) : s(s_), n(n_), values(std::move(v)) {
        require(values.size() == ipow(n, 2 * s), errc::dim,
                "DoubleTensor: value count must be n^(2s)");
    }

    std::size_t size() const { return values.size(); }
    std::size_t half() const { return ipow(n, s); }

    std::size_t offset(const std::vector<int>& i, const std::vector<int>& p) const {
        std::size_t off = 0;
        for (int k = 0; k < s; ++k) off = off * n + static_cast<std::size_t>(i[k] - 1);
        for (int k = 0; k < s; ++k) off = off * n + static_cast<std::size_t>(p[k] - 1);
        return off;
    }

    double at(const std::vector<int>& i, const std::vector<int>& p) const {
        return values[offset(i, p)];
    }
    double& at(const std::vector<int>& i, const std::vector<int>& p) {
        return values[offset(i, p)];
    }

    DenseTensor as_dense() const { return DenseTensor(2 * s, n, values); }
    static DoubleTensor from_dense(const DenseTensor& d) {
        require(d.s % 2 == 0, errc::dim, "DoubleTensor: order must be even");
        return DoubleTensor(d.s / 2, d.n, d.values);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Symmetric coefficients with vanishing diagonal, stored set-indexed:
/// a sorted d-subset F of [n] maps to a_F, absent keys are zero. The
/// expanded tensor is theta_i = a_{Im(i)} for injective i, 0 otherwise.
struct SymmetricCoefficients {
    int d = 0;
    int n = 0;
    std::map<std::vector<int>, double> coefficients;  // keys sorted ascending

    SymmetricCoefficients() = default;
    SymmetricCoefficients(int d_, int n_) : d(d_), n(n_) {}

    void set(std::vector<int> subset, double value);
    double get(const std::vector<int>& sorted_subset) const {
        auto it = coefficients.find(sorted_subset);
        return it == coefficients.end() ? 0.0 : it->second;
    }
};

/// theta_i = a_{Im(i)} if i is injective, 0 otherwise.
double expand_symmetric(const SymmetricCoefficients& c, const MultiIndex& i);

/// Full dense expansion over [n]^d.
DenseTensor expand_dense(const SymmetricCoefficients& c);

/// All injective tuples in [n]^s as 1-based digit vectors, lexicographic.
std::vector<std::vector<int>> injective_tuples(int n, int s);

/// Enumerates all permutations of [1..n] in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

bool is_permutation_of_n(const std::vector<int>& pi, int n);

}  // namespace tensorclt
