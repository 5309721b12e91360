#pragma once

#include "se_bridge.hpp"

#include <json.hpp>

#include <cstdlib>
#include <variant>

namespace sseforge {

using json = nlohmann::json;

// Resource guard for parsed matrices; SSE_FORGE_MAX_DIM overrides.
inline int max_matrix_dim() {
    if (const char* env = std::getenv("SSE_FORGE_MAX_DIM")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 64;
}

using RingVariant = std::variant<ZRing, QRing, ZModRing>;

inline RingVariant ring_from_tag(const std::string& tag) {
    if (tag == "Z") return ZRing{};
    if (tag == "Q") return QRing{};
    if (tag.rfind("Zmod:", 0) == 0) return ZModRing(bigint(tag.substr(5)));
    throw error("unknown ring tag: " + tag);
}

template <typename R>
std::string ring_tag(const R& ring) { return ring.name(); }

// ---------------------------------------------------------------------------
// Values serialize as decimal strings so arbitrary precision survives JSON;
// polynomials are coefficient arrays lowest degree first.

template <typename R>
json emit_poly(const Poly<R>& p) {
    json arr = json::array();
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(p.ring.to_string(p.coeff(i)));
    return arr;
}

template <typename R>
Poly<R> parse_poly(const R& ring, const json& j) {
    require(j.is_array(), "poly: expected array of coefficient strings");
    std::vector<typename R::elem> coeffs;
    for (const auto& c : j) {
        require(c.is_string(), "poly: coefficients must be decimal strings");
        coeffs.push_back(ring.parse(c.get<std::string>()));
    }
    return Poly<R>(ring, std::move(coeffs));
}

template <typename R>
json emit_matrix(const Mat<R>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int jx = 0; jx < m.cols; ++jx) row.push_back(m.ring.to_string(m.at(i, jx)));
        rows.push_back(std::move(row));
    }
    return json{{"ring", m.ring.name()}, {"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

template <typename R>
json emit_matrix(const PolyMat<R>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int jx = 0; jx < m.cols; ++jx) row.push_back(emit_poly(m.at(i, jx)));
        rows.push_back(std::move(row));
    }
    return json{{"ring", m.ring.base.name()},
                {"rows", m.rows},
                {"cols", m.cols},
                {"entries", rows}};
}

inline void check_matrix_header(const json& j, int& rows, int& cols) {
    require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries"),
            "matrix: expected {ring, rows, cols, entries}");
    rows = j.at("rows").get<int>();
    cols = j.at("cols").get<int>();
    require(rows >= 0 && cols >= 0, "matrix: negative dimensions");
    int guard = max_matrix_dim();
    require(rows <= guard && cols <= guard, "matrix: dimension exceeds SSE_FORGE_MAX_DIM");
    require(j.at("entries").is_array() && static_cast<int>(j.at("entries").size()) == rows,
            "matrix: row count mismatch");
}

// Polynomial entries are arrays, scalars plain strings; both parse into a
// polynomial matrix.
template <typename R>
PolyMat<R> parse_polymat(const R& ring, const json& j) {
    int rows = 0, cols = 0;
    check_matrix_header(j, rows, cols);
    PolyRing<R> pr(ring);
    PolyMat<R> m(pr, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j.at("entries").at(static_cast<size_t>(i));
        require(row.is_array() && static_cast<int>(row.size()) == cols,
                "matrix: column count mismatch");
        for (int c = 0; c < cols; ++c) {
            const auto& cell = row.at(static_cast<size_t>(c));
            if (cell.is_string())
                m.at(i, c) = poly_const(ring, ring.parse(cell.get<std::string>()));
            else
                m.at(i, c) = parse_poly(ring, cell);
        }
    }
    return m;
}

template <typename R>
Mat<R> parse_matrix(const R& ring, const json& j) {
    PolyMat<R> pm = parse_polymat(ring, j);
    Mat<R> m(ring, pm.rows, pm.cols);
    for (int i = 0; i < pm.rows; ++i)
        for (int c = 0; c < pm.cols; ++c) {
            require(pm.at(i, c).degree() <= 0, "matrix: expected scalar entries");
            m.at(i, c) = pm.at(i, c).coeff(0);
        }
    return m;
}

inline std::string matrix_ring_tag(const json& j) {
    require(j.is_object() && j.contains("ring"), "matrix: missing ring tag");
    return j.at("ring").get<std::string>();
}

// ---------------------------------------------------------------------------
// Elementary ops and certificates.

template <typename R>
json emit_op(const ElemOp<R>& op, bool with_side) {
    json o{{"i", op.i}, {"j", op.j}, {"coeff", emit_poly(op.coeff)}};
    if (with_side) o["side"] = (op.side == OpSide::left) ? "L" : "R";
    return o;
}

template <typename R>
ElemOp<R> parse_op(const R& ring, const json& j, OpSide default_side) {
    require(j.is_object() && j.contains("i") && j.contains("j") && j.contains("coeff"),
            "op: expected {i, j, coeff}");
    OpSide side = default_side;
    if (j.contains("side")) {
        auto s = j.at("side").get<std::string>();
        require(s == "L" || s == "R", "op: side must be L or R");
        side = (s == "L") ? OpSide::left : OpSide::right;
    }
    return ElemOp<R>(side, j.at("i").get<int>(), j.at("j").get<int>(),
                     parse_poly(ring, j.at("coeff")));
}

template <typename R>
json emit_ops(const std::vector<ElemOp<R>>& ops, bool with_side) {
    json arr = json::array();
    for (const auto& op : ops) arr.push_back(emit_op(op, with_side));
    return arr;
}

template <typename R>
std::vector<ElemOp<R>> parse_ops(const R& ring, const json& j, OpSide default_side) {
    require(j.is_array(), "ops: expected array");
    std::vector<ElemOp<R>> out;
    for (const auto& o : j) out.push_back(parse_op(ring, o, default_side));
    return out;
}

template <typename R>
json emit_el_cert(const R& ring, const ElCert<R>& c) {
    return json{{"kind", "el"},
                {"ring", ring.name()},
                {"pad", c.pad},
                {"lhs", emit_ops(c.lhs, false)},
                {"rhs", emit_ops(c.rhs, false)}};
}

template <typename R>
ElCert<R> parse_el_cert(const R& ring, const json& j) {
    require(j.is_object() && j.value("kind", "") == "el", "el cert: wrong kind");
    ElCert<R> c;
    c.pad = j.value("pad", 0);
    c.lhs = parse_ops(ring, j.at("lhs"), OpSide::left);
    c.rhs = parse_ops(ring, j.at("rhs"), OpSide::right);
    return c;
}

template <typename R>
json emit_gl_cert(const R& ring, const GLCert<R>& c) {
    (void)ring;
    return json{{"kind", "gl"},          {"pad_left", c.pad_left},
                {"pad_right", c.pad_right}, {"U", emit_matrix(c.U)},
                {"U_inv", emit_matrix(c.U_inv)}, {"V", emit_matrix(c.V)},
                {"V_inv", emit_matrix(c.V_inv)}};
}

template <typename R>
GLCert<R> parse_gl_cert(const R& ring, const json& j) {
    require(j.is_object() && j.value("kind", "") == "gl", "gl cert: wrong kind");
    GLCert<R> c;
    c.pad_left = j.value("pad_left", 0);
    c.pad_right = j.value("pad_right", 0);
    c.U = parse_polymat(ring, j.at("U"));
    c.U_inv = parse_polymat(ring, j.at("U_inv"));
    c.V = parse_polymat(ring, j.at("V"));
    c.V_inv = parse_polymat(ring, j.at("V_inv"));
    return c;
}

// Elementary-stabilizer membership: U (I-A) = (prod lhs)(I-A)(prod rhs).
template <typename R>
struct ElstCert {
    PolyMat<R> U, U_inv;
    std::vector<ElemOp<R>> lhs, rhs;
};

template <typename R>
json emit_elst_cert(const R& ring, const ElstCert<R>& c) {
    (void)ring;
    return json{{"kind", "elst"},
                {"U", emit_matrix(c.U)},
                {"U_inv", emit_matrix(c.U_inv)},
                {"lhs", emit_ops(c.lhs, false)},
                {"rhs", emit_ops(c.rhs, false)}};
}

template <typename R>
ElstCert<R> parse_elst_cert(const R& ring, const json& j) {
    require(j.is_object() && j.value("kind", "") == "elst", "elst cert: wrong kind");
    ElstCert<R> c;
    c.U = parse_polymat(ring, j.at("U"));
    c.U_inv = parse_polymat(ring, j.at("U_inv"));
    c.lhs = parse_ops(ring, j.at("lhs"), OpSide::left);
    c.rhs = parse_ops(ring, j.at("rhs"), OpSide::right);
    return c;
}

// ---------------------------------------------------------------------------
// Chains, witnesses, words.

template <typename R>
json emit_chain(const SseChain<R>& c) {
    json moves = json::array();
    for (const auto& mv : c.moves)
        moves.push_back(json{{"U", emit_matrix(mv.pair.U)},
                             {"V", emit_matrix(mv.pair.V)},
                             {"dir", mv.forward ? "fwd" : "bwd"}});
    return json{{"kind", "sse"},
                {"start", emit_matrix(c.start)},
                {"end", emit_matrix(c.end)},
                {"moves", moves}};
}

template <typename R>
SseChain<R> parse_chain(const R& ring, const json& j) {
    require(j.is_object() && j.value("kind", "") == "sse", "chain: wrong kind");
    SseChain<R> c;
    c.start = parse_matrix(ring, j.at("start"));
    c.end = parse_matrix(ring, j.at("end"));
    for (const auto& mv : j.at("moves")) {
        auto dir = mv.value("dir", "fwd");
        require(dir == "fwd" || dir == "bwd", "chain: dir must be fwd or bwd");
        c.moves.push_back(SseMove<R>{EssePair<R>{parse_matrix(ring, mv.at("U")),
                                                 parse_matrix(ring, mv.at("V"))},
                                     dir == "fwd"});
    }
    return c;
}

template <typename R>
json emit_se_witness(const SEWitness<R>& w) {
    return json{{"kind", "se"}, {"R", emit_matrix(w.Rm)}, {"S", emit_matrix(w.S)}, {"lag", w.lag}};
}

template <typename R>
SEWitness<R> parse_se_witness(const R& ring, const json& j) {
    require(j.is_object() && j.value("kind", "") == "se", "se witness: wrong kind");
    return SEWitness<R>{parse_matrix(ring, j.at("R")), parse_matrix(ring, j.at("S")),
                        j.at("lag").get<int>()};
}

template <typename R>
json emit_el_word(const ElWord<R>& w) {
    return json{{"kind", "elword"},
                {"A", emit_matrix(w.A)},
                {"B", emit_matrix(w.B)},
                {"ops", emit_ops(w.ops, true)}};
}

template <typename R>
ElWord<R> parse_el_word(const R& ring, const json& j) {
    require(j.is_object() && j.value("kind", "") == "elword", "el word: wrong kind");
    ElWord<R> w;
    w.A = parse_polymat(ring, j.at("A"));
    w.B = parse_polymat(ring, j.at("B"));
    for (const auto& o : j.at("ops")) {
        require(o.contains("side"), "el word: ops need a side");
        w.ops.push_back(parse_op(ring, o, OpSide::left));
    }
    return w;
}

template <typename R>
json emit_aplusn_cert(const R& ring, const APlusNCert<R>& c) {
    return json{{"kind", "aplusn"},
                {"gl", emit_gl_cert(ring, c.gl)},
                {"E", emit_ops(c.e_ops, false)},
                {"F", emit_ops(c.f_ops, false)},
                {"N", emit_matrix(c.N)}};
}

template <typename R>
APlusNCert<R> parse_aplusn_cert(const R& ring, const json& j) {
    require(j.is_object() && j.value("kind", "") == "aplusn", "aplusn cert: wrong kind");
    APlusNCert<R> c;
    c.gl = parse_gl_cert(ring, j.at("gl"));
    c.e_ops = parse_ops(ring, j.at("E"), OpSide::left);
    c.f_ops = parse_ops(ring, j.at("F"), OpSide::right);
    c.N = parse_matrix(ring, j.at("N"));
    return c;
}

template <typename R>
json emit_invariant_report(const InvariantReport<R>& rep, const R& ring) {
    json out{{"zeta", emit_poly(rep.zeta)}};
    if (rep.bowen_franks) {
        json bf = json::array();
        for (const auto& d : *rep.bowen_franks) bf.push_back(ring.to_string(d));
        out["bowen_franks"] = bf;
    }
    if (rep.eventual_rank) out["eventual_rank"] = std::to_string(*rep.eventual_rank);
    return out;
}

inline json emit_verdict(const Verdict& v) {
    json out{{"verified", v.ok}};
    if (!v.ok) {
        out["reason"] = v.reason;
        if (v.step >= 0) out["step"] = v.step;
    }
    return out;
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

} // namespace sseforge
