#pragma once

#include "matrix.hpp"

namespace sseforge {

// Stabilization convention: a finite square core viewed as the upper-left
// corner of an N x N matrix padded by the identity (st1) or by zero (st0).
enum class StConv { st1, st0 };

template <typename R>
struct Stable {
    PolyMat<R> core;
    StConv conv = StConv::st1;

    Stable() = default;
    Stable(PolyMat<R> c, StConv cv) : core(std::move(c)), conv(cv) {
        require(core.square(), "Stable: core must be square");
    }
};

template <typename R>
Stable<R> stable_st1(PolyMat<R> core) { return Stable<R>(std::move(core), StConv::st1); }

template <typename R>
Stable<R> stable_st0(PolyMat<R> core) { return Stable<R>(std::move(core), StConv::st0); }

template <typename R>
Stable<R> stable_st1(const Mat<R>& core) { return stable_st1(mat_to_polymat(core)); }

// Core enlarged to size n under the value's own convention.
template <typename R>
PolyMat<R> stable_padded(const Stable<R>& m, int n) {
    require(n >= m.core.rows, "stable_padded: cannot shrink");
    if (m.conv == StConv::st1) return mat_pad_identity(m.core, n);
    return mat_pad_zero(m.core, n, n);
}

// Equality after padding both cores to the larger size. Values with distinct
// conventions are never equal: their tails differ in every diagonal entry
// beyond both cores.
template <typename R>
bool stable_eq(const Stable<R>& a, const Stable<R>& b) {
    if (a.conv != b.conv) return false;
    int n = std::max(a.core.rows, b.core.rows);
    return mat_eq(stable_padded(a, n), stable_padded(b, n));
}

// The Remark 2.2 style bridge: given A under st0, form I - A under st1.
template <typename R>
Stable<R> stable_identity_minus(const Stable<R>& a) {
    require(a.conv == StConv::st0, "stable_identity_minus: expects st0 input");
    return stable_st1(identity_minus(a.core));
}

// ---------------------------------------------------------------------------
// Basic elementary matrices E = I + coeff * e_{ij}, i != j, 1-based indices.

enum class OpSide { left, right };

template <typename R>
struct ElemOp {
    OpSide side = OpSide::left;
    int i = 1;
    int j = 2;
    Poly<R> coeff;

    ElemOp() = default;
    ElemOp(OpSide s, int ii, int jj, Poly<R> c) : side(s), i(ii), j(jj), coeff(std::move(c)) {
        require(ii >= 1 && jj >= 1, "ElemOp: indices are 1-based");
        require(ii != jj, "ElemOp: i == j");
    }

    int max_index() const { return std::max(i, j); }
    bool is_identity() const { return coeff.is_zero(); }
    ElemOp inverse() const { return ElemOp(side, i, j, poly_neg(coeff)); }
    ElemOp with_side(OpSide s) const { return ElemOp(s, i, j, coeff); }
    ElemOp shifted(int off) const { return ElemOp(side, i + off, j + off, coeff); }
};

template <typename R>
PolyMat<R> elem_matrix(const ElemOp<R>& op, const PolyRing<R>& pr, int n) {
    require(op.max_index() <= n, "elem_matrix: index beyond size");
    PolyMat<R> m = mat_identity(pr, n);
    m.at(op.i - 1, op.j - 1) = poly_add(m.at(op.i - 1, op.j - 1), op.coeff);
    return m;
}

// Left or right multiplication by E, with automatic st1 enlargement when the
// op touches indices beyond the core. st0 cores refuse enlargement: zero
// padding would not commute with an invertible factor.
template <typename R>
Stable<R> apply_elem(const Stable<R>& m, const ElemOp<R>& op) {
    int n = std::max(m.core.rows, op.max_index());
    if (n > m.core.rows)
        require(m.conv == StConv::st1, "apply_elem: op touches beyond an st0 core");
    PolyMat<R> core = stable_padded(m, n);
    PolyMat<R> e = elem_matrix(op, core.ring, n);
    core = (op.side == OpSide::left) ? mat_mul(e, core) : mat_mul(core, e);
    return Stable<R>(std::move(core), m.conv);
}

// Replay op lists at a fixed ambient size. Lists are in application order:
// each successive left op multiplies on the left (matrix product
// l_k ... l_2 l_1) and each successive right op multiplies on the right
// (product r_1 r_2 ... r_k).
// (I + c e_{ij}) X adds c * row j into row i; each op is a linear-time
// row update, not a matrix product.
template <typename R>
void apply_op_left_inplace(PolyMat<R>& x, const ElemOp<R>& op) {
    require(op.max_index() <= x.rows, "apply_ops_left: op beyond ambient size");
    if (op.coeff.is_zero()) return;
    for (int c = 0; c < x.cols; ++c) {
        const auto& src = x.at(op.j - 1, c);
        if (src.is_zero()) continue;
        x.at(op.i - 1, c) = poly_add(x.at(op.i - 1, c), poly_mul(op.coeff, src));
    }
}

// X (I + c e_{ij}) adds column i times c into column j.
template <typename R>
void apply_op_right_inplace(PolyMat<R>& x, const ElemOp<R>& op) {
    require(op.max_index() <= x.cols, "apply_ops_right: op beyond ambient size");
    if (op.coeff.is_zero()) return;
    for (int r = 0; r < x.rows; ++r) {
        const auto& src = x.at(r, op.i - 1);
        if (src.is_zero()) continue;
        x.at(r, op.j - 1) = poly_add(x.at(r, op.j - 1), poly_mul(src, op.coeff));
    }
}

template <typename R>
PolyMat<R> apply_ops_left(PolyMat<R> x, const std::vector<ElemOp<R>>& ops) {
    for (const auto& op : ops) apply_op_left_inplace(x, op);
    return x;
}

template <typename R>
PolyMat<R> apply_ops_right(PolyMat<R> x, const std::vector<ElemOp<R>>& ops) {
    for (const auto& op : ops) apply_op_right_inplace(x, op);
    return x;
}

template <typename R>
PolyMat<R> ops_product(const PolyRing<R>& pr, const std::vector<ElemOp<R>>& ops, int n,
                       bool left_convention) {
    PolyMat<R> x = mat_identity(pr, n);
    return left_convention ? apply_ops_left(x, ops) : apply_ops_right(x, ops);
}

// Reverse-and-invert, turning a factor list for P into one for P^-1 under the
// same application-order convention.
template <typename R>
std::vector<ElemOp<R>> ops_inverted(const std::vector<ElemOp<R>>& ops) {
    std::vector<ElemOp<R>> out;
    out.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.push_back(it->inverse());
    return out;
}

template <typename R>
int ops_max_index(const std::vector<ElemOp<R>>& ops) {
    int n = 0;
    for (const auto& op : ops) n = std::max(n, op.max_index());
    return n;
}

template <typename R>
std::vector<ElemOp<R>> ops_shifted(const std::vector<ElemOp<R>>& ops, int off) {
    std::vector<ElemOp<R>> out;
    out.reserve(ops.size());
    for (const auto& op : ops) out.push_back(op.shifted(off));
    return out;
}

} // namespace sseforge
