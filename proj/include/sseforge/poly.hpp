#pragma once

#include "rings.hpp"

#include <vector>

namespace sseforge {

// Polynomial in t over a coefficient ring. Coefficients are stored lowest
// degree first; the representation is canonical: no trailing zero
// coefficients, with the zero polynomial stored as an empty vector.
template <typename R>
struct Poly {
    using elem = typename R::elem;

    R ring;
    std::vector<elem> coeffs;

    Poly() = default;
    explicit Poly(R r) : ring(std::move(r)) {}
    Poly(R r, std::vector<elem> c) : ring(std::move(r)), coeffs(std::move(c)) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && ring.is_zero(coeffs.back())) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    elem coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs.size())) return ring.zero();
        return coeffs[static_cast<size_t>(i)];
    }

    bool is_constant() const { return degree() <= 0; }
    elem constant_term() const { return coeff(0); }
};

template <typename R>
Poly<R> poly_const(const R& ring, typename R::elem c) {
    return Poly<R>(ring, {std::move(c)});
}

template <typename R>
Poly<R> poly_zero(const R& ring) { return Poly<R>(ring); }

template <typename R>
Poly<R> poly_one(const R& ring) { return poly_const(ring, ring.one()); }

// c * t^k
template <typename R>
Poly<R> poly_monomial(const R& ring, typename R::elem c, int k) {
    require(k >= 0, "poly_monomial: negative exponent");
    std::vector<typename R::elem> v(static_cast<size_t>(k) + 1, ring.zero());
    v.back() = std::move(c);
    return Poly<R>(ring, std::move(v));
}

template <typename R>
bool poly_eq(const Poly<R>& a, const Poly<R>& b) {
    require(a.ring.same(b.ring), "poly_eq: ring mismatch");
    if (a.coeffs.size() != b.coeffs.size()) return false;
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (!a.ring.eq(a.coeffs[i], b.coeffs[i])) return false;
    return true;
}

template <typename R>
Poly<R> poly_add(const Poly<R>& a, const Poly<R>& b) {
    require(a.ring.same(b.ring), "poly_add: ring mismatch");
    std::vector<typename R::elem> v(std::max(a.coeffs.size(), b.coeffs.size()), a.ring.zero());
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.ring.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly<R>(a.ring, std::move(v));
}

template <typename R>
Poly<R> poly_neg(const Poly<R>& a) {
    std::vector<typename R::elem> v = a.coeffs;
    for (auto& c : v) c = a.ring.neg(c);
    return Poly<R>(a.ring, std::move(v));
}

template <typename R>
Poly<R> poly_sub(const Poly<R>& a, const Poly<R>& b) {
    return poly_add(a, poly_neg(b));
}

template <typename R>
Poly<R> poly_mul(const Poly<R>& a, const Poly<R>& b) {
    require(a.ring.same(b.ring), "poly_mul: ring mismatch");
    if (a.is_zero() || b.is_zero()) return poly_zero(a.ring);
    std::vector<typename R::elem> v(a.coeffs.size() + b.coeffs.size() - 1, a.ring.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            v[i + j] = a.ring.add(v[i + j], a.ring.mul(a.coeffs[i], b.coeffs[j]));
    return Poly<R>(a.ring, std::move(v));
}

// Exact division over an integral domain; throws if the remainder is nonzero.
template <typename R>
Poly<R> poly_exact_div(const Poly<R>& a, const Poly<R>& b) {
    require(a.ring.same(b.ring), "poly_exact_div: ring mismatch");
    require(!b.is_zero(), "poly_exact_div: division by zero");
    if (a.is_zero()) return poly_zero(a.ring);
    const R& ring = a.ring;
    std::vector<typename R::elem> rem = a.coeffs;
    int db = b.degree();
    require(a.degree() >= db, "poly_exact_div: inexact division");
    std::vector<typename R::elem> q(static_cast<size_t>(a.degree() - db) + 1, ring.zero());
    for (int k = a.degree() - db; k >= 0; --k) {
        typename R::elem lead = rem[static_cast<size_t>(k + db)];
        if (ring.is_zero(lead)) continue;
        typename R::elem c = ring.exact_div(lead, b.coeffs.back());
        q[static_cast<size_t>(k)] = c;
        for (int i = 0; i <= db; ++i) {
            auto& r = rem[static_cast<size_t>(k + i)];
            r = ring.sub(r, ring.mul(c, b.coeff(i)));
        }
    }
    for (const auto& r : rem) require(ring.is_zero(r), "poly_exact_div: inexact division");
    return Poly<R>(ring, std::move(q));
}

template <typename R>
typename R::elem poly_eval(const Poly<R>& a, const typename R::elem& x) {
    typename R::elem acc = a.ring.zero();
    for (size_t i = a.coeffs.size(); i-- > 0;) acc = a.ring.add(a.ring.mul(acc, x), a.coeffs[i]);
    return acc;
}

// t |-> t^s substitution; used to shift coefficient supports.
template <typename R>
Poly<R> poly_scale_degree(const Poly<R>& a, int s) {
    if (a.is_zero()) return a;
    std::vector<typename R::elem> v(a.coeffs.size() * static_cast<size_t>(s) + 1, a.ring.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i) v[i * static_cast<size_t>(s)] = a.coeffs[i];
    return Poly<R>(a.ring, std::move(v));
}

template <typename R>
std::string poly_to_string(const Poly<R>& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (int i = 0; i <= a.degree(); ++i) {
        if (!s.empty()) s += " + ";
        s += a.ring.to_string(a.coeff(i));
        if (i > 0) s += "*t^" + std::to_string(i);
    }
    return s;
}

} // namespace sseforge
