#include "tensorclt/hoeffding.hpp"

#include <algorithm>
#include <cmath>

namespace tensorclt {

namespace {

/// Subtracts from every axis-r line its mean (r is a 0-based axis of an
/// order-s dense block). Applying this to every axis realizes the
/// alternating-sign projection sum exactly.
void center_axis(std::vector<double>& v, int s, int n, int axis) {
    const std::size_t stride = ipow(n, s - 1 - axis);
    const std::size_t block = stride * n;
    const std::size_t total = v.size();
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            double* line = v.data() + base + off;
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += line[k * stride];
            const double mean = sum / n;
            for (int k = 0; k < n; ++k) line[k * stride] -= mean;
        }
    }
}

double axis_sum_defect(const std::vector<double>& v, int s, int n, int axis) {
    const std::size_t stride = ipow(n, s - 1 - axis);
    const std::size_t block = stride * n;
    double worst = 0.0;
    for (std::size_t base = 0; base < v.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            const double* line = v.data() + base + off;
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += line[k * stride];
            worst = std::max(worst, std::abs(sum));
        }
    }
    return worst;
}

}  // namespace

DenseTensor project_single(const DenseTensor& a, const SubsetMask& F, ProjectionMode mode) {
    require(F.s == a.s, errc::dim, "project_single: subset order must match tensor order");
    const int m = F.count();
    DenseTensor out(m, a.n);

    // kept[k] = 0-based source slot of the k-th output slot
    std::vector<int> kept;
    for (int slot = 1; slot <= a.s; ++slot)
        if (F.contains(slot)) kept.push_back(slot - 1);

    std::vector<int> digits(a.s);
    for (std::size_t off = 0; off < a.size(); ++off) {
        std::size_t rem = off;
        for (int k = a.s - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % a.n);
            rem /= a.n;
        }
        std::size_t bucket = 0;
        for (int k = 0; k < m; ++k) bucket = bucket * a.n + digits[kept[k]];
        out.values[bucket] += a.values[off];
    }
    if (mode == ProjectionMode::avg) {
        const double scale = 1.0 / static_cast<double>(ipow(a.n, a.s - m));
        for (double& v : out.values) v *= scale;
    }
    return out;
}

DenseTensor hoeffding_single(const DenseTensor& a) {
    DenseTensor out = a;
    for (int axis = 0; axis < a.s; ++axis) center_axis(out.values, a.s, a.n, axis);
    return out;
}

DenseTensor project_double(const DoubleTensor& z, const SubsetMask& F, const SubsetMask& G) {
    require(F.s == z.s && G.s == z.s, errc::dim,
            "project_double: subset orders must match tensor order");
    DenseTensor flat = z.as_dense();
    const std::uint32_t joint = F.bits | (G.bits << z.s);
    return project_single(flat, SubsetMask(2 * z.s, joint), ProjectionMode::avg);
}

DoubleTensor hoeffding_double(const DoubleTensor& z) {
    DoubleTensor out = z;
    for (int axis = 0; axis < 2 * z.s; ++axis) center_axis(out.values, 2 * z.s, z.n, axis);
    return out;
}

double hoeffding_defect(const DoubleTensor& xi) {
    double worst = 0.0;
    for (int axis = 0; axis < 2 * xi.s; ++axis)
        worst = std::max(worst, axis_sum_defect(xi.values, 2 * xi.s, xi.n, axis));
    return worst;
}

bool is_hoeffding(const DoubleTensor& xi, double tol) {
    require(tol >= 0.0, errc::range, "is_hoeffding: tol must be nonnegative");
    return hoeffding_defect(xi) <= tol;
}

double default_hoeffding_tol(const DoubleTensor& xi) {
    return 1e-9 * xi.max_abs() * xi.n;
}

double hoeffding_defect_single(const DenseTensor& g) {
    double worst = 0.0;
    for (int axis = 0; axis < g.s; ++axis)
        worst = std::max(worst, axis_sum_defect(g.values, g.s, g.n, axis));
    return worst;
}

}  // namespace tensorclt
