#pragma once

#include "gen.hpp"
#include "json_io.hpp"

namespace sseforge {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string detail;

    bool ok() const { return failures == 0; }
};

// The randomized property suites. CI, the selftest verb, and the acceptance
// harness all drive the same entry points so results stay comparable.

inline SuiteResult suite_esse_invariance(uint32_t seed, int cases) {
    SuiteResult res{"esse-invariance", cases, 0, ""};
    Rng rng(seed);
    ZRing Z;
    for (int t = 0; t < cases; ++t) {
        int n = rng.uniform(1, 4), m = rng.uniform(1, 4);
        Mat<ZRing> u = rand_mat(rng, n, m, -3, 3);
        Mat<ZRing> v = rand_mat(rng, m, n, -3, 3);
        Mat<ZRing> a = mat_mul(u, v), b = mat_mul(v, u);
        bool ok = verify_esse(a, b, EssePair<ZRing>{u, v}).ok;
        ok = ok && poly_eq(zeta_polynomial(a), zeta_polynomial(b));
        ok = ok && bowen_franks(a) == bowen_franks(b);
        if (!ok && res.failures++ == 0) res.detail = "case " + std::to_string(t);
    }
    return res;
}

inline std::vector<SseChain<ZRing>> forward_corpus(uint32_t seed, int cases) {
    Rng rng(seed);
    std::vector<SseChain<ZRing>> out;
    out.reserve(static_cast<size_t>(cases));
    for (int t = 0; t < cases; ++t) out.push_back(rand_sse_chain(rng, 3, 3));
    return out;
}

inline SuiteResult suite_finecentral_forward(uint32_t seed, int cases) {
    SuiteResult res{"finecentral-forward", cases, 0, ""};
    auto corpus = forward_corpus(seed, cases);
    for (int t = 0; t < cases; ++t) {
        const auto& chain = corpus[static_cast<size_t>(t)];
        bool ok = false;
        try {
            ElCert<ZRing> cert = sse_to_el(chain);
            ok = verify_el_cert(stable_st1(pencil_of(chain.start)),
                                stable_st1(pencil_of(chain.end)), cert).ok;
        } catch (const error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) res.detail = "case " + std::to_string(t);
    }
    return res;
}

inline SuiteResult suite_elem_steps(uint32_t seed, int cases_per_cell) {
    SuiteResult res{"centrallemma-engine", 0, 0, ""};
    ZRing Z;
    for (int l = 1; l <= 3; ++l)
        for (int side = 0; side <= 1; ++side) {
            Rng rng(seed + static_cast<uint32_t>(l * 2 + side));
            for (int t = 0; t < cases_per_cell; ++t) {
                ++res.cases;
                int n = rng.uniform(2, 3);
                int deg = rng.uniform(1, 3);
                PolyMat<ZRing> a = rand_polymat_tideal(rng, n, deg, -2, 2);
                int i0 = rng.uniform(1, n), j0 = rng.uniform(1, n - 1);
                if (j0 >= i0) ++j0;
                bigint r = rng.uniform(-2, 2);
                ElemOp<ZRing> e(side == 0 ? OpSide::left : OpSide::right, i0, j0,
                                poly_monomial(Z, r, l));
                BoxShape shape{deg, n};
                bool ok = false;
                try {
                    PolyMat<ZRing> b_out;
                    SseChain<ZRing> chain = elem_step_to_sse(a, e, shape, &b_out);
                    // independent oracle for the endpoint
                    PolyMat<ZRing> apad = polymat_pad(a, n);
                    PolyMat<ZRing> b = (e.side == OpSide::left) ? elem_left_result(apad, e)
                                                                : elem_right_result(apad, e);
                    ok = verify_sse_chain(chain).ok;
                    ok = ok && mat_eq(chain.start, box(a, shape));
                    ok = ok && mat_eq(chain.end, box(b, BoxShape{deg + l, n}));
                    ok = ok && poly_eq(zeta_polynomial(chain.start), zeta_polynomial(chain.end));
                } catch (const error&) {
                    ok = false;
                }
                if (!ok && res.failures++ == 0)
                    res.detail = "l=" + std::to_string(l) + " side=" + std::to_string(side) +
                                 " case " + std::to_string(t);
            }
        }
    return res;
}

inline SuiteResult suite_el_roundtrip(uint32_t seed, int cases) {
    SuiteResult res{"el-roundtrip", cases, 0, ""};
    Rng rng(seed);
    for (int t = 0; t < cases; ++t) {
        bool ok = false;
        try {
            ElWord<ZRing> word = rand_el_word(rng, 2, 4, 2);
            SseChain<ZRing> chain = el_to_sse(word, BoxShape{std::max(1, polymat_degree(word.A)), 2});
            ok = verify_sse_chain(chain).ok;
            ElCert<ZRing> cert = sse_to_el(chain);
            ok = ok && verify_el_cert(stable_st1(pencil_of(chain.start)),
                                      stable_st1(pencil_of(chain.end)), cert).ok;
        } catch (const error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) res.detail = "case " + std::to_string(t);
    }
    return res;
}

inline SuiteResult suite_nilpotent(uint32_t seed, int reduce_cases, int collapse_cases) {
    SuiteResult res{"nilpotent-reduction", reduce_cases + collapse_cases, 0, ""};
    Rng rng(seed);
    for (int t = 0; t < reduce_cases; ++t) {
        int n = rng.uniform(1, 4);
        Mat<ZRing> nil = rand_nilpotent(rng, n, -2, 2, 6);
        bool ok = false;
        try {
            SseChain<ZRing> chain = nilpotent_reduce(nil);
            ok = verify_sse_chain(chain).ok && chain.end.empty() && mat_eq(chain.start, nil);
        } catch (const error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) res.detail = "reduce case " + std::to_string(t);
    }
    for (int t = 0; t < collapse_cases; ++t) {
        int an = rng.uniform(1, 3), nn = rng.uniform(1, 3);
        Mat<ZRing> a = rand_mat(rng, an, an, -2, 2);
        Mat<ZRing> nil = rand_nilpotent(rng, nn, -2, 2, 4);
        bool ok = false;
        try {
            SseChain<ZRing> chain = a_plus_nilpotent_collapse(a, nil);
            ok = verify_sse_chain(chain).ok && mat_eq(chain.end, a) &&
                 mat_eq(chain.start, mat_direct_sum(a, nil));
        } catch (const error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) res.detail = "collapse case " + std::to_string(t);
    }
    return res;
}

inline SuiteResult suite_linearize(uint32_t seed, int cases) {
    SuiteResult res{"linearization-coherence", cases, 0, ""};
    Rng rng(seed);
    ZRing Z;
    PolyRing<ZRing> pr(Z);
    for (int t = 0; t < cases; ++t) {
        int n = rng.uniform(1, 2);
        int deg = rng.uniform(1, 3);
        PolyMat<ZRing> a = rand_polymat_tideal(rng, n, deg, -2, 2);
        BoxShape shape{deg, n};
        bool ok = false;
        try {
            ElCert<ZRing> cert = box_to_linear_cert(a, shape);
            Mat<ZRing> bx = box(a, shape);
            ok = verify_el_cert(stable_st1(identity_minus(polymat_pad(a, shape.n))),
                                stable_st1(pencil_of(bx)), cert).ok;
            ok = ok && poly_eq(mat_det(pencil_of(bx)), mat_det(identity_minus(a)));
            HigmanResult<ZRing> h = higman_linearize(identity_minus(a));
            ok = ok && verify_el_cert(stable_st1(identity_minus(a)),
                                      stable_st1(pencil_of(h.a)), h.cert).ok;
        } catch (const error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) res.detail = "case " + std::to_string(t);
    }
    return res;
}

inline SuiteResult suite_se_bridge(uint32_t seed, int cases) {
    SuiteResult res{"se-bridge", cases, 0, ""};
    auto corpus = forward_corpus(seed, cases);
    for (int t = 0; t < cases; ++t) {
        const auto& chain = corpus[static_cast<size_t>(t)];
        bool ok = false;
        try {
            SEWitness<ZRing> w = sse_chain_to_se(chain);
            ok = verify_se(chain.start, chain.end, w).ok;
            SEWitness<ZRing> perturbed{w.Rm, w.S, w.lag + 1};
            ok = ok && !verify_se(chain.start, chain.end, perturbed).ok;
        } catch (const error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) res.detail = "case " + std::to_string(t);
    }
    return res;
}

inline SuiteResult suite_json_roundtrip(uint32_t seed, int cases) {
    SuiteResult res{"json-roundtrip", cases, 0, ""};
    Rng rng(seed);
    ZRing Z;
    for (int t = 0; t < cases; ++t) {
        bool ok = true;
        try {
            Mat<ZRing> m = rand_mat(rng, rng.uniform(0, 3), rng.uniform(0, 3), -99, 99);
            json jm = emit_matrix(m);
            ok = ok && jm.dump() == emit_matrix(parse_matrix(Z, jm)).dump();
            SseChain<ZRing> chain = rand_sse_chain(rng, 2, 3);
            json jc = emit_chain(chain);
            ok = ok && jc.dump() == emit_chain(parse_chain(Z, jc)).dump();
            SEWitness<ZRing> w = sse_chain_to_se(chain);
            json jw = emit_se_witness(w);
            ok = ok && jw.dump() == emit_se_witness(parse_se_witness(Z, jw)).dump();
            ElWord<ZRing> word = rand_el_word(rng, 2, 3, 2);
            json jword = emit_el_word(word);
            ok = ok && jword.dump() == emit_el_word(parse_el_word(Z, jword)).dump();
            ElCert<ZRing> cert = sse_to_el(chain);
            json jcert = emit_el_cert(Z, cert);
            ok = ok && jcert.dump() == emit_el_cert(Z, parse_el_cert(Z, jcert)).dump();
        } catch (const error&) {
            ok = false;
        }
        if (!ok && res.failures++ == 0) res.detail = "case " + std::to_string(t);
    }
    return res;
}

struct SelftestReport {
    uint32_t seed = 0;
    int cases = 0;
    std::vector<SuiteResult> suites;

    bool all_ok() const {
        for (const auto& s : suites)
            if (!s.ok()) return false;
        return true;
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& s : suites) {
            json e{{"suite", s.name}, {"cases", s.cases}, {"failures", s.failures}};
            if (!s.detail.empty()) e["first_failure"] = s.detail;
            arr.push_back(std::move(e));
        }
        return json{{"seed", seed}, {"cases", cases}, {"ok", all_ok()}, {"suites", arr}};
    }
};

// Scaled run of every suite; identical (seed, cases) inputs produce
// byte-identical reports.
inline SelftestReport selftest_run(uint32_t seed, int cases) {
    SelftestReport rep;
    rep.seed = seed;
    rep.cases = cases;
    int small = std::max(1, cases / 10);
    rep.suites.push_back(suite_esse_invariance(seed, cases));
    rep.suites.push_back(suite_finecentral_forward(seed + 1, small));
    rep.suites.push_back(suite_elem_steps(seed + 2, std::max(1, cases / 20)));
    rep.suites.push_back(suite_el_roundtrip(seed + 3, small));
    rep.suites.push_back(suite_nilpotent(seed + 4, small, std::max(1, small / 2)));
    rep.suites.push_back(suite_linearize(seed + 5, small));
    rep.suites.push_back(suite_se_bridge(seed + 6, small));
    rep.suites.push_back(suite_json_roundtrip(seed + 7, std::max(1, cases / 20)));
    return rep;
}

} // namespace sseforge
