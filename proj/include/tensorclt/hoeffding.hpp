#pragma once

#include <cstdint>

#include "tensorclt/tensor.hpp"

namespace tensorclt {

/// Subset F of the slot set [s]; members are 1-based slots kept as a bitmask.
struct SubsetMask {
    int s = 0;
    std::uint32_t bits = 0;

    SubsetMask() = default;
    SubsetMask(int s_, std::uint32_t bits_) : s(s_), bits(bits_) {
        require(s >= 0 && s <= 30, errc::range, "SubsetMask: order out of range");
        require((bits >> s) == 0, errc::range, "SubsetMask: members must lie in [1, s]");
    }
    static SubsetMask full(int s) { return SubsetMask(s, s >= 32 ? 0 : ((1u << s) - 1)); }
    static SubsetMask empty(int s) { return SubsetMask(s, 0); }

    bool contains(int slot) const { return (bits >> (slot - 1)) & 1u; }
    int count() const { return __builtin_popcount(bits); }
};

enum class ProjectionMode { sum, avg };

/// S_F[a] / A_F[a]: collapse the slots outside F by summing or averaging.
/// The result is an order-|F| tensor whose slots are the members of F in
/// ascending order; F = [s] returns a unchanged, F = {} a single entry.
DenseTensor project_single(const DenseTensor& a, const SubsetMask& F, ProjectionMode mode);

/// H[a](i) = sum_{F subset [s]} (-1)^{s-|F|} A_F[a](i|F). Computed by
/// centering each axis in turn (slot 1 first), which is the same operator.
DenseTensor hoeffding_single(const DenseTensor& a);

/// A_{F,G}[z]: average over the group-1 slots outside F and group-2 slots
/// outside G. Result is an order-(|F|+|G|) tensor, F slots then G slots.
DenseTensor project_double(const DoubleTensor& z, const SubsetMask& F, const SubsetMask& G);

/// Doubly-indexed Hoeffding projection (identical to flattening z to order
/// 2s and applying the single-index operator).
DoubleTensor hoeffding_double(const DoubleTensor& z);

/// Checks the Hoeffding cancellation property: for every slot of either
/// index group, the sum over that slot with everything else fixed stays
/// within `tol` in absolute value.
bool is_hoeffding(const DoubleTensor& xi, double tol);

/// Worst absolute slot sum over both index groups.
double hoeffding_defect(const DoubleTensor& xi);

/// Default check tolerance: 1e-9 * max|xi| * n.
double default_hoeffding_tol(const DoubleTensor& xi);

/// Single-index variant: sum over each slot with the others fixed (the
/// cancellation required of finite-population components).
double hoeffding_defect_single(const DenseTensor& g);

}  // namespace tensorclt
