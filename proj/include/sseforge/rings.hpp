#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace sseforge {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Precondition violations and malformed inputs. Refutations of certificate
// claims are reported through Verdict values, never through exceptions.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw error(what);
}

enum class ring_kind { integers, rationals, integers_mod };

inline bool is_prime(const bigint& m) {
    if (m < 2) return false;
    for (bigint d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

// The ring of integers. Elements are arbitrary-precision integers.
struct ZRing {
    using elem = bigint;

    static constexpr ring_kind kind = ring_kind::integers;
    bool same(const ZRing&) const { return true; }
    std::string name() const { return "Z"; }

    bool euclidean() const { return true; }
    bool integral_domain() const { return true; }

    elem zero() const { return 0; }
    elem one() const { return 1; }
    elem from_int(long v) const { return v; }

    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }

    bool is_zero(const elem& a) const { return a == 0; }
    bool eq(const elem& a, const elem& b) const { return a == b; }
    bool is_unit(const elem& a) const { return a == 1 || a == -1; }

    elem inv_unit(const elem& a) const {
        require(is_unit(a), "ZRing: not a unit");
        return a;
    }

    // Truncated division; |remainder| < |b|.
    std::pair<elem, elem> divmod(const elem& a, const elem& b) const {
        require(b != 0, "ZRing: division by zero");
        return {a / b, a % b};
    }

    elem exact_div(const elem& a, const elem& b) const {
        require(b != 0, "ZRing: division by zero");
        require(a % b == 0, "ZRing: inexact division");
        return a / b;
    }

    bigint euclid_norm(const elem& a) const { return abs(a); }

    // Unit u with u*a in canonical form (nonnegative over Z).
    elem canon_unit(const elem& a) const { return a < 0 ? elem(-1) : elem(1); }

    std::string to_string(const elem& a) const { return a.str(); }
    elem parse(std::string_view s) const { return bigint(std::string(s)); }
};

// The field of rationals.
struct QRing {
    using elem = bigrat;

    static constexpr ring_kind kind = ring_kind::rationals;
    bool same(const QRing&) const { return true; }
    std::string name() const { return "Q"; }

    bool euclidean() const { return true; }
    bool integral_domain() const { return true; }

    elem zero() const { return 0; }
    elem one() const { return 1; }
    elem from_int(long v) const { return v; }

    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }

    bool is_zero(const elem& a) const { return a == 0; }
    bool eq(const elem& a, const elem& b) const { return a == b; }
    bool is_unit(const elem& a) const { return a != 0; }

    elem inv_unit(const elem& a) const {
        require(a != 0, "QRing: not a unit");
        return elem(1) / a;
    }

    std::pair<elem, elem> divmod(const elem& a, const elem& b) const {
        require(b != 0, "QRing: division by zero");
        return {a / b, elem(0)};
    }

    elem exact_div(const elem& a, const elem& b) const {
        require(b != 0, "QRing: division by zero");
        return a / b;
    }

    bigint euclid_norm(const elem& a) const { return a == 0 ? 0 : 1; }

    elem canon_unit(const elem& a) const { return a == 0 ? elem(1) : elem(1) / a; }

    std::string to_string(const elem& a) const {
        if (denominator(a) == 1) return numerator(a).str();
        return numerator(a).str() + "/" + denominator(a).str();
    }
    elem parse(std::string_view s) const {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return elem(bigint(std::string(s)));
        bigint num{std::string(s.substr(0, slash))};
        bigint den{std::string(s.substr(slash + 1))};
        require(den != 0, "QRing: zero denominator");
        return elem(num) / elem(den);
    }
};

// Z/m with canonical representatives in [0, m). Euclidean (a field) iff m is
// prime; composite moduli still support the ring operations.
struct ZModRing {
    using elem = bigint;

    bigint m;
    bool m_prime = false;

    ZModRing() : m(2), m_prime(true) {}
    explicit ZModRing(bigint modulus) : m(std::move(modulus)) {
        require(m >= 2, "ZModRing: modulus must be >= 2");
        m_prime = is_prime(m);
    }

    static constexpr ring_kind kind = ring_kind::integers_mod;
    bool same(const ZModRing& o) const { return m == o.m; }
    std::string name() const { return "Zmod:" + m.str(); }

    bool euclidean() const { return m_prime; }
    bool integral_domain() const { return m_prime; }

    elem reduce(const bigint& v) const {
        bigint r = v % m;
        if (r < 0) r += m;
        return r;
    }

    elem zero() const { return 0; }
    elem one() const { return reduce(1); }
    elem from_int(long v) const { return reduce(bigint(v)); }

    elem add(const elem& a, const elem& b) const { return reduce(a + b); }
    elem sub(const elem& a, const elem& b) const { return reduce(a - b); }
    elem mul(const elem& a, const elem& b) const { return reduce(a * b); }
    elem neg(const elem& a) const { return reduce(-a); }

    bool is_zero(const elem& a) const { return a == 0; }
    bool eq(const elem& a, const elem& b) const { return a == b; }
    bool is_unit(const elem& a) const { return gcd(a, m) == 1; }

    elem inv_unit(const elem& a) const {
        // extended Euclid
        bigint r0 = m, r1 = reduce(a), s0 = 0, s1 = 1;
        while (r1 != 0) {
            bigint q = r0 / r1;
            bigint r2 = r0 - q * r1;
            bigint s2 = s0 - q * s1;
            r0 = r1; r1 = r2; s0 = s1; s1 = s2;
        }
        require(r0 == 1, "ZModRing: not a unit");
        return reduce(s0);
    }

    std::pair<elem, elem> divmod(const elem& a, const elem& b) const {
        require(m_prime, "ZModRing: division requires prime modulus");
        require(b != 0, "ZModRing: division by zero");
        return {mul(a, inv_unit(b)), elem(0)};
    }

    elem exact_div(const elem& a, const elem& b) const {
        require(m_prime, "ZModRing: division requires prime modulus");
        return divmod(a, b).first;
    }

    bigint euclid_norm(const elem& a) const { return a == 0 ? 0 : 1; }

    elem canon_unit(const elem& a) const { return a == 0 ? one() : inv_unit(a); }

    std::string to_string(const elem& a) const { return a.str(); }
    elem parse(std::string_view s) const { return reduce(bigint(std::string(s))); }
};

} // namespace sseforge
