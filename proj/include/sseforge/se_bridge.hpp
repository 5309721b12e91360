#pragma once

#include "elword.hpp"

namespace sseforge {

// Fitting-stabilized GL(R[t]) certificate: U ((I-tA) + I_m) V = (I-tB) + I_n.
// A verified certificate witnesses shift equivalence of a and b.
template <typename R>
Verdict verify_fitting_stabilization(const Mat<R>& a, const Mat<R>& b, const GLCert<R>& cert) {
    require(a.square() && b.square(), "verify_fitting_stabilization: non-square");
    return verify_gl_cert(stable_st1(pencil_of(a)), stable_st1(pencil_of(b)), cert);
}

// Certificate data for the B ~ A + N route: a stabilized GL certificate for
// U (I-tA) V = I-tB together with an elementary sandwich E W F = I - tN of
// W = V U, N nilpotent.
template <typename R>
struct APlusNCert {
    GLCert<R> gl;
    std::vector<ElemOp<R>> e_ops, f_ops;
    Mat<R> N;
};

template <typename R>
Verdict verify_aplusn_cert(const Mat<R>& a, const Mat<R>& b, const APlusNCert<R>& cert) {
    Verdict gl = verify_fitting_stabilization(a, b, cert.gl);
    if (!gl.ok) return Verdict::fail("gl part: " + gl.reason, 0);
    if (!cert.N.square()) return Verdict::fail("N must be square", 2);
    if (!mat_is_zero(mat_pow(cert.N, cert.N.rows))) return Verdict::fail("N is not nilpotent", 2);
    PolyMat<R> w = mat_mul(cert.gl.V, cert.gl.U);
    int amb = std::max({w.rows, ops_max_index(cert.e_ops), ops_max_index(cert.f_ops),
                        cert.N.rows});
    PolyMat<R> x = mat_pad_identity(w, amb);
    x = apply_ops_right(apply_ops_left(std::move(x), cert.e_ops), cert.f_ops);
    PolyMat<R> target = stable_padded(stable_st1(pencil_of(cert.N)), amb);
    if (!mat_eq(x, target)) return Verdict::fail("E W F != I - tN", 1);
    return Verdict::pass();
}

// Best-effort construction of the elementary sandwich for a matrix W over
// R[t] with W(0) elementary-realizable: Higman-linearize W to a pencil I-tN
// and check nilpotency. Over Z the check succeeds exactly when it should,
// since det W = 1 forces the characteristic polynomial of N to be t^dim.
template <typename R>
std::optional<APlusNCert<R>> nilpotent_sandwich(const PolyMat<R>& w) {
    require(w.square(), "nilpotent_sandwich: non-square");
    HigmanResult<R> h;
    try {
        h = higman_linearize(w);
    } catch (const error&) {
        return std::nullopt;
    }
    if (!mat_is_zero(mat_pow(h.a, std::max(1, h.a.rows)))) return std::nullopt;
    APlusNCert<R> out;
    out.e_ops = h.cert.lhs;
    out.f_ops = h.cert.rhs;
    out.N = h.a;
    return out;
}

// Assemble the Theorem-style chain from b to a + N out of a verified
// certificate: I-tB ~ W(I-tA) ~ (I-tA) + W ~ (I-tA) + (I-tN) = I-t(A+N),
// all as explicit elementary data, then translate through el_to_sse and
// collapse the k=1 boxes.
template <typename R>
SseChain<R> aplusn_assemble(const Mat<R>& a, const Mat<R>& b, const APlusNCert<R>& cert) {
    const R& base = a.ring;
    PolyRing<R> pr(base);
    require(verify_aplusn_cert(a, b, cert).ok, "aplusn_assemble: certificate failed replay");

    const int s = cert.gl.U.rows;
    Mat<R> aprime = mat_pad_zero(a, s, s);  // A + 0_{pad_left}
    Mat<R> bprime = mat_pad_zero(b, s, s);  // B + 0_{pad_right}

    // Stabilize by I_j so the sandwich ops fit: W~ = W + I_j.
    PolyMat<R> w = mat_mul(cert.gl.V, cert.gl.U);
    const int S = std::max({s, ops_max_index(cert.e_ops), ops_max_index(cert.f_ops)});
    const int j = S - s;
    PolyMat<R> wt = mat_pad_identity(w, S);
    PolyMat<R> wt_inv = mat_pad_identity(mat_mul(cert.gl.U_inv, cert.gl.V_inv), S);
    PolyMat<R> vt = mat_pad_identity(cert.gl.V, S);
    PolyMat<R> vt_inv = mat_pad_identity(cert.gl.V_inv, S);
    Mat<R> a2 = mat_pad_zero(aprime, S, S); // A'' = A' + 0_j
    Mat<R> nn = cert.N;
    Mat<R> target_core = mat_direct_sum(a2, nn);

    // (I-tB') -> W~ (I-tA'')
    PolyMat<R> m1 = mat_mul(wt, pencil_of(a2));
    ElCert<R> c1;
    c1.lhs = ops_whitehead_diag(vt, vt_inv, OpSide::left);
    c1.rhs = ops_as_right(ops_whitehead_diag(vt_inv, vt, OpSide::left));
    c1.pad = 2 * S - bprime.rows;
    require(verify_el_cert(stable_st1(pencil_of(bprime)), stable_st1(m1), c1).ok,
            "aplusn_assemble: stage 1 failed");

    // W~ (I-tA'') -> (I-tA'') + W~
    PolyMat<R> m2 = mat_direct_sum(pencil_of(a2), wt);
    ElCert<R> c2;
    c2.lhs = ops_whitehead_diag(wt_inv, wt, OpSide::left);
    c2.pad = 2 * S - m1.rows;
    require(verify_el_cert(stable_st1(m1), stable_st1(m2), c2).ok,
            "aplusn_assemble: stage 2 failed");

    // (I-tA'') + W~ -> (I-tA'') + (I-tN) = I - t(A'' + N)
    ElCert<R> c3;
    for (const auto& op : cert.e_ops) c3.lhs.push_back(op.shifted(S));
    for (const auto& op : cert.f_ops) c3.rhs.push_back(op.shifted(S));
    c3.pad = 0;
    PolyMat<R> m3 = pencil_of(target_core);
    require(verify_el_cert(stable_st1(m2), stable_st1(m3), c3).ok,
            "aplusn_assemble: stage 3 failed");

    ElCert<R> full = el_cert_compose(el_cert_compose(c1, c2), c3);
    ElWord<R> word = el_cert_to_word(polymat_t_times(bprime), polymat_t_times(target_core), full);

    // b -> B' by zero extensions, then through the boxes, then tidy up.
    ChainBuilder<R> chain(b);
    {
        ChainBuilder<R> ext(bprime);
        for (int t = b.rows; t < bprime.rows; ++t) {
            auto [smaller, pair] = trim_zero_row_col(ext.current(), ExtShape::row);
            (void)smaller;
            ext.push(pair);
        }
        require(mat_eq(ext.current(), b), "aplusn_assemble: padding chain broken");
        chain.append_reversed(ext.take());
    }
    chain.append(el_to_sse(word, BoxShape{1, bprime.rows}));

    // current = A'' + N = a + 0_{pl+j} + N; swap the zero block past N.
    const int za = a.rows, zp = S - a.rows, zn = nn.rows;
    if (zp > 0) {
        Mat<R> p(base, S + zn, S + zn);
        for (int i = 0; i < za; ++i) p.at(i, i) = base.one();
        for (int i = 0; i < zn; ++i) p.at(za + i, S + i) = base.one();
        for (int i = 0; i < zp; ++i) p.at(za + zn + i, za + i) = base.one();
        auto [conj, pair] = similarity_move(chain.current(), p, mat_transpose(p));
        chain.push(pair);
        require(mat_eq(conj, mat_pad_zero(mat_direct_sum(a, nn), S + zn, S + zn)),
                "aplusn_assemble: block swap failed");
        for (int t = 0; t < zp; ++t) {
            auto [smaller, tpair] = trim_zero_row_col(chain.current(), ExtShape::row);
            (void)smaller;
            chain.push(tpair);
        }
    }
    require(mat_eq(chain.current(), mat_direct_sum(a, nn)), "aplusn_assemble: endpoint mismatch");
    return chain.take();
}

} // namespace sseforge
