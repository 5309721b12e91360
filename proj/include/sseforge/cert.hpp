#pragma once

#include "stable.hpp"

namespace sseforge {

// Outcome of replaying an untrusted certificate. `step` indexes the first
// failing sub-check when the claim decomposes into numbered parts (chain
// moves, inverse checks); -1 means the claim failed as a whole.
struct Verdict {
    bool ok = true;
    int step = -1;
    std::string reason;

    static Verdict pass() { return {}; }
    static Verdict fail(std::string why, int at = -1) { return {false, at, std::move(why)}; }
    explicit operator bool() const { return ok; }
};

// Claim: (prod lhs) * (M + I_pad) * (prod rhs) = M' under st1, with both op
// lists in application order.
template <typename R>
struct ElCert {
    std::vector<ElemOp<R>> lhs;
    std::vector<ElemOp<R>> rhs;
    int pad = 0;
};

template <typename R>
ElCert<R> el_cert_inverted(const ElCert<R>& c, int pad) {
    return ElCert<R>{ops_inverted(c.lhs), ops_inverted(c.rhs), pad};
}

// Sequential composition: a cert from M to M1 followed by one from M1 to M2.
template <typename R>
ElCert<R> el_cert_compose(const ElCert<R>& a, const ElCert<R>& b) {
    ElCert<R> out;
    out.lhs = a.lhs;
    out.lhs.insert(out.lhs.end(), b.lhs.begin(), b.lhs.end());
    out.rhs = a.rhs;
    out.rhs.insert(out.rhs.end(), b.rhs.begin(), b.rhs.end());
    out.pad = std::max(a.pad, b.pad);
    return out;
}

template <typename R>
Verdict verify_el_cert(const Stable<R>& m, const Stable<R>& m2, const ElCert<R>& cert) {
    if (m.conv != StConv::st1 || m2.conv != StConv::st1)
        return Verdict::fail("el certificates act on st1 values");
    if (!m.core.ring.same(m2.core.ring)) throw error("verify_el_cert: ring mismatch");
    int n = std::max({m.core.rows + cert.pad, m2.core.rows, ops_max_index(cert.lhs),
                      ops_max_index(cert.rhs)});
    PolyMat<R> x = stable_padded(m, n);
    x = apply_ops_left(std::move(x), cert.lhs);
    x = apply_ops_right(std::move(x), cert.rhs);
    if (!mat_eq(x, stable_padded(m2, n))) return Verdict::fail("replay mismatch");
    return Verdict::pass();
}

// Claim: U * (M + I) * V = M' + I with exhibited inverses for U and V.
template <typename R>
struct GLCert {
    PolyMat<R> U, U_inv, V, V_inv;
    int pad_left = 0;
    int pad_right = 0;
};

template <typename R>
Verdict verify_gl_cert(const Stable<R>& m, const Stable<R>& m2, const GLCert<R>& cert) {
    if (m.conv != StConv::st1 || m2.conv != StConv::st1)
        return Verdict::fail("gl certificates act on st1 values");
    const auto& pr = cert.U.ring;
    if (!pr.same(m.core.ring)) throw error("verify_gl_cert: ring mismatch");
    if (!cert.U.square() || !cert.V.square() || cert.U.rows != cert.V.rows)
        throw error("verify_gl_cert: U, V must be square of equal size");
    int s = cert.U.rows;
    if (m.core.rows + cert.pad_left != s || m2.core.rows + cert.pad_right != s)
        throw error("verify_gl_cert: dimension mismatch");
    PolyMat<R> id = mat_identity(pr, s);
    if (!mat_eq(mat_mul(cert.U, cert.U_inv), id) || !mat_eq(mat_mul(cert.U_inv, cert.U), id))
        return Verdict::fail("inverse check failed", 0);
    if (!mat_eq(mat_mul(cert.V, cert.V_inv), id) || !mat_eq(mat_mul(cert.V_inv, cert.V), id))
        return Verdict::fail("inverse check failed", 1);
    PolyMat<R> x = mat_mul(mat_mul(cert.U, stable_padded(m, s)), cert.V);
    if (!mat_eq(x, stable_padded(m2, s))) return Verdict::fail("replay mismatch");
    return Verdict::pass();
}

// Membership certificate for the elementary stabilizer of (I-A)_st1:
// U (I-A) = (prod e_ops) (I-A) (prod f_ops) with U invertible.
template <typename R>
Verdict verify_elst_membership(const PolyMat<R>& u, const PolyMat<R>& u_inv,
                               const PolyMat<R>& a, const std::vector<ElemOp<R>>& e_ops,
                               const std::vector<ElemOp<R>>& f_ops) {
    require(u.square() && a.square(), "verify_elst_membership: non-square");
    require(u.ring.same(a.ring), "verify_elst_membership: ring mismatch");
    require(u.rows == u_inv.rows && u.cols == u_inv.cols,
            "verify_elst_membership: inverse dimension mismatch");
    int n = std::max({u.rows, a.rows, ops_max_index(e_ops), ops_max_index(f_ops)});
    PolyMat<R> id = mat_identity(u.ring, u.rows);
    if (!mat_eq(mat_mul(u, u_inv), id) || !mat_eq(mat_mul(u_inv, u), id))
        return Verdict::fail("inverse check failed");
    PolyMat<R> pencil = stable_padded(stable_st1(identity_minus(a)), n);
    PolyMat<R> lhsm = mat_mul(mat_pad_identity(u, n), pencil);
    PolyMat<R> rhsm = apply_ops_right(apply_ops_left(pencil, e_ops), f_ops);
    if (!mat_eq(lhsm, rhsm)) return Verdict::fail("replay mismatch");
    return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Factor-list builders. Each returns ops in application order whose product
// (under the stated convention) is the described matrix.

// [[I, B],[0, I]] when upper, [[I, 0],[B, I]] when lower; the two blocks sit
// at row offset ro and column offset co within the ambient matrix. Entries of
// a block-unipotent family commute, so any listing order works.
template <typename R>
std::vector<ElemOp<R>> ops_block_unipotent(const PolyMat<R>& b, int ro, int co, OpSide side) {
    std::vector<ElemOp<R>> out;
    for (int r = 0; r < b.rows; ++r)
        for (int c = 0; c < b.cols; ++c)
            if (!b.ring.is_zero(b.at(r, c)))
                out.emplace_back(side, ro + r + 1, co + c + 1, b.at(r, c));
    return out;
}

// Rotation [[0,-1],[1,0]] in the (i,j) plane: E_ij(-1) E_ji(1) E_ij(-1).
template <typename R>
void ops_push_rotation(std::vector<ElemOp<R>>& out, const PolyRing<R>& pr, int i, int j,
                       OpSide side) {
    auto one = poly_one(pr.base);
    auto neg = poly_neg(one);
    // application order: rightmost factor of the product comes first
    out.emplace_back(side, i, j, neg);
    out.emplace_back(side, j, i, one);
    out.emplace_back(side, i, j, neg);
}

// Signed permutation matrix T (T(perm[c], c) = sign[c], det +1) as a list of
// elementary factors. perm is 0-based.
template <typename R>
std::vector<ElemOp<R>> ops_signed_perm(const PolyRing<R>& pr, const std::vector<int>& perm,
                                       const std::vector<int>& sign, OpSide side) {
    const int n = static_cast<int>(perm.size());
    require(sign.size() == perm.size(), "ops_signed_perm: size mismatch");
    std::vector<ElemOp<R>> out;

    // Reduce T to a diagonal by rotations. A left rotation in the (a,b)
    // plane maps row b to row a negated and row a to row b.
    std::vector<int> p = perm, s = sign;
    std::vector<ElemOp<R>> reducers; // application-order list with product * T diagonal
    for (int c = 0; c < n; ++c) {
        if (p[c] == c) continue;
        int r = p[c]; // rows below c are still free, so r > c
        ops_push_rotation(reducers, pr, c + 1, r + 1, side);
        for (int k = c; k < n; ++k) {
            if (p[k] == r) { p[k] = c; s[k] = -s[k]; }
            else if (p[k] == c) { p[k] = r; }
        }
    }
    // Now the tracked matrix is diag(s); det +1 forces an even number of -1s.
    std::vector<int> negs;
    for (int c = 0; c < n; ++c)
        if (s[c] < 0) negs.push_back(c);
    require(negs.size() % 2 == 0, "ops_signed_perm: determinant is -1");
    for (size_t k = 0; k + 1 < negs.size(); k += 2) {
        // diag(-1,-1) in plane (i,j) = rotation applied twice
        ops_push_rotation(reducers, pr, negs[k] + 1, negs[k + 1] + 1, side);
        ops_push_rotation(reducers, pr, negs[k] + 1, negs[k + 1] + 1, side);
    }
    // reducers * T = I, hence T = reducers^-1.
    return ops_inverted(reducers);
}

// Convert an application-order left list into a right list with the same
// matrix product (a right list multiplies in listed order, so it reverses).
template <typename R>
std::vector<ElemOp<R>> ops_as_right(const std::vector<ElemOp<R>>& left_list) {
    std::vector<ElemOp<R>> out;
    out.reserve(left_list.size());
    for (auto it = left_list.rbegin(); it != left_list.rend(); ++it)
        out.push_back(it->with_side(OpSide::right));
    return out;
}

template <typename R>
std::vector<ElemOp<R>> ops_as_left(const std::vector<ElemOp<R>>& right_list) {
    std::vector<ElemOp<R>> out;
    out.reserve(right_list.size());
    for (auto it = right_list.rbegin(); it != right_list.rend(); ++it)
        out.push_back(it->with_side(OpSide::left));
    return out;
}

// diag(M, M^-1) as elementary factors via the Whitehead identity
//   diag(M, M^-1) = [[I,M],[0,I]] [[I,0],[-M^-1,I]] [[I,M],[0,I]] [[0,-I],[I,0]].
template <typename R>
std::vector<ElemOp<R>> ops_whitehead_diag(const PolyMat<R>& m, const PolyMat<R>& m_inv,
                                          OpSide side) {
    require(m.square() && m_inv.rows == m.rows && m_inv.cols == m.cols,
            "ops_whitehead_diag: bad shapes");
    const auto& pr = m.ring;
    const int s = m.rows;
    PolyMat<R> id = mat_identity(pr, s);
    require(mat_eq(mat_mul(m, m_inv), id), "ops_whitehead_diag: not an inverse pair");
    std::vector<ElemOp<R>> out;
    if (mat_eq(m, id)) return out;
    // application order = product read right to left
    // [[0,-I],[I,0]] = [[I,-I],[0,I]] [[I,0],[I,I]] [[I,-I],[0,I]]
    auto nid = mat_neg(id);
    auto app = [&](std::vector<ElemOp<R>> v) { out.insert(out.end(), v.begin(), v.end()); };
    app(ops_block_unipotent(nid, 0, s, side));
    app(ops_block_unipotent(id, s, 0, side));
    app(ops_block_unipotent(nid, 0, s, side));
    app(ops_block_unipotent(m, 0, s, side));
    app(ops_block_unipotent(mat_neg(m_inv), s, 0, side));
    app(ops_block_unipotent(m, 0, s, side));
    return out;
}

} // namespace sseforge
