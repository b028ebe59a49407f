#ifndef NEARCURVE_POLY_HPP
#define NEARCURVE_POLY_HPP

#include "nearcurve/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

namespace nearcurve {

// Ring operations used by the generic polynomial code. Int is the base
// case; Poly<Int> gets recursive overloads below.
inline bool ring_is_zero(const Int& a) { return a == 0; }
inline Int ring_zero(const Int*) { return Int(0); }
inline Int ring_one(const Int*) { return Int(1); }
inline Int ring_gcd(const Int& a, const Int& b) { return gcd_int(a, b); }

inline Int ring_exact_div(const Int& a, const Int& b) {
    Int q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0) throw std::logic_error("ring_exact_div: inexact integer division");
    return q;
}

// Dense univariate polynomial over a ring R, coefficient of x^i at c[i].
// Zero polynomial has empty coefficient vector and degree -1.
template <class R>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(R v) {
        Poly p;
        if (!ring_is_zero(v)) p.c_.push_back(std::move(v));
        return p;
    }
    static Poly x() {
        Poly p;
        p.c_ = {ring_zero((R*)nullptr), ring_one((R*)nullptr)};
        return p;
    }
    // a + b*x
    static Poly linear(R a, R b) {
        Poly p;
        p.c_ = {std::move(a), std::move(b)};
        p.trim();
        return p;
    }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }

    const R& operator[](int i) const {
        static const R z = ring_zero((R*)nullptr);
        if (i < 0 || i > deg()) return z;
        return c_[static_cast<size_t>(i)];
    }

    const R& lc() const {
        if (is_zero()) throw std::logic_error("lc of zero polynomial");
        return c_.back();
    }

    void set_coeff(int i, R v) {
        if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<size_t>(i) + 1, ring_zero((R*)nullptr));
        c_[static_cast<size_t>(i)] = std::move(v);
        trim();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), ring_zero((R*)nullptr));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        r.trim();
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), ring_zero((R*)nullptr));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
        r.trim();
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, ring_zero((R*)nullptr));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (ring_is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }

    Poly mul_scalar(const R& s) const {
        if (ring_is_zero(s)) return Poly();
        Poly r = *this;
        for (auto& v : r.c_) v = v * s;
        r.trim();
        return r;
    }

    Poly div_scalar_exact(const R& s) const {
        Poly r = *this;
        for (auto& v : r.c_) v = ring_exact_div(v, s);
        return r;
    }

    Poly mul_xk(int k) const {
        if (is_zero() || k == 0) return *this;
        Poly r;
        r.c_.assign(c_.size() + static_cast<size_t>(k), ring_zero((R*)nullptr));
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<size_t>(k)] = c_[i];
        return r;
    }

    Poly derivative() const {
        if (deg() <= 0) return Poly();
        Poly r;
        r.c_.resize(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) {
            R m = ring_zero((R*)nullptr);
            for (size_t t = 0; t < i; ++t) m = m + c_[i];
            r.c_[i - 1] = m;
        }
        r.trim();
        return r;
    }

    template <class T>
    T eval(const T& x) const {
        T acc = T(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!ring_is_zero(c_[i] - o.c_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    void trim() {
        while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
    }

private:
    std::vector<R> c_;
};

using IPoly = Poly<Int>;
using BPoly = Poly<IPoly>; // bivariate: polynomial in y with Z[x] coefficients

// --- recursive ring ops so Poly<Poly<Int>> works through the same code ---

inline bool ring_is_zero(const IPoly& p) { return p.is_zero(); }
inline IPoly ring_zero(const IPoly*) { return IPoly(); }
inline IPoly ring_one(const IPoly*) { return IPoly::constant(1); }

IPoly poly_gcd(const IPoly& a, const IPoly& b);
inline IPoly ring_gcd(const IPoly& a, const IPoly& b) { return poly_gcd(a, b); }

// Exact division of polynomials, throws if not divisible.
template <class R>
Poly<R> poly_exact_div(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero()) throw std::logic_error("poly_exact_div: division by zero");
    if (a.is_zero()) return Poly<R>();
    int da = a.deg(), db = b.deg();
    if (da < db) throw std::logic_error("poly_exact_div: inexact (degree)");
    std::vector<R> rem(a.coeffs());
    std::vector<R> q(static_cast<size_t>(da - db + 1), ring_zero((R*)nullptr));
    for (int i = da; i >= db; --i) {
        R& top = rem[static_cast<size_t>(i)];
        if (ring_is_zero(top)) continue;
        R f = ring_exact_div(top, b.lc());
        q[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(i - db + j)] = rem[static_cast<size_t>(i - db + j)] - f * b[j];
    }
    for (auto& v : rem)
        if (!ring_is_zero(v)) throw std::logic_error("poly_exact_div: inexact remainder");
    return Poly<R>(std::move(q));
}

inline IPoly ring_exact_div(const IPoly& a, const IPoly& b) { return poly_exact_div(a, b); }

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
template <class R>
Poly<R> prem(Poly<R> a, const Poly<R>& b) {
    if (b.is_zero()) throw std::logic_error("prem: division by zero");
    int db = b.deg();
    if (a.deg() < db) {
        // classical convention multiplies by lc(b)^(da-db+1); that power is
        // not a ring element for negative exponents, so return a as-is
        return a;
    }
    int e = a.deg() - db + 1;
    while (!a.is_zero() && a.deg() >= db) {
        int k = a.deg() - db;
        R t = a.lc();
        a = a.mul_scalar(b.lc()) - b.mul_xk(k).mul_scalar(t);
        --e;
    }
    // pad remaining powers so the full lc(b)^(da-db+1) factor is applied
    for (; e > 0; --e) a = a.mul_scalar(b.lc());
    return a;
}

template <class R>
R poly_content(const Poly<R>& p) {
    R g = ring_zero((R*)nullptr);
    for (const auto& v : p.coeffs()) g = ring_gcd(g, v);
    return g;
}

template <class R>
Poly<R> poly_primitive_part(const Poly<R>& p) {
    if (p.is_zero()) return p;
    R g = poly_content(p);
    return p.div_scalar_exact(g);
}

// Subresultant chain of a and b with respect to the main variable.
// chain[j] holds the j-th subresultant S_j for 0 <= j < deg(b); entries may
// be zero (defective chain). Requires deg(a) >= deg(b) >= 0. The scalars are
// correct up to the standard subresultant normalization, which is all the
// callers rely on (zero tests, gcd structure and coefficient ratios).
template <class R>
std::vector<Poly<R>> subresultant_chain(const Poly<R>& a, const Poly<R>& b) {
    if (a.is_zero() || b.is_zero()) throw std::logic_error("subresultant_chain: zero input");
    if (a.deg() < b.deg()) throw std::logic_error("subresultant_chain: need deg(a) >= deg(b)");
    std::vector<Poly<R>> chain(static_cast<size_t>(std::max(b.deg(), 1)));
    if (b.deg() == 0) {
        // S_0 = lc(b)^deg(a)
        R s = ring_one((R*)nullptr);
        for (int i = 0; i < a.deg(); ++i) s = s * b.lc();
        chain[0] = Poly<R>::constant(s);
        return chain;
    }

    auto rpow = [](const R& base, int e) {
        R r = ring_one((R*)nullptr);
        for (int i = 0; i < e; ++i) r = r * base;
        return r;
    };

    R s = rpow(b.lc(), a.deg() - b.deg());
    Poly<R> A = b;
    Poly<R> B = prem(a, -b);
    while (true) {
        if (B.is_zero()) break;
        int d = A.deg(), e = B.deg();
        if (d - 1 < static_cast<int>(chain.size()) && d - 1 >= 0) chain[static_cast<size_t>(d - 1)] = B;
        int delta = d - e;
        Poly<R> C;
        if (delta > 1) {
            // C = lc(B)^(delta-1) * B / s^(delta-1)
            C = B.mul_scalar(rpow(B.lc(), delta - 1)).div_scalar_exact(rpow(s, delta - 1));
            if (e < static_cast<int>(chain.size()) && e >= 0) chain[static_cast<size_t>(e)] = C;
        } else {
            C = B;
        }
        if (e == 0) break;
        Poly<R> nB = prem(A, -B).div_scalar_exact(rpow(s, delta) * A.lc());
        A = C;
        B = nB;
        s = A.lc();
    }
    return chain;
}

// Resultant via the subresultant chain (S_0).
template <class R>
R poly_resultant(const Poly<R>& a, const Poly<R>& b) {
    if (a.is_zero() || b.is_zero()) return ring_zero((R*)nullptr);
    if (a.deg() == 0) {
        R r = ring_one((R*)nullptr);
        for (int i = 0; i < b.deg(); ++i) r = r * a.lc();
        return r;
    }
    if (b.deg() == 0) {
        R r = ring_one((R*)nullptr);
        for (int i = 0; i < a.deg(); ++i) r = r * b.lc();
        return r;
    }
    bool swapped = a.deg() < b.deg();
    const Poly<R>& hi = swapped ? b : a;
    const Poly<R>& lo = swapped ? a : b;
    auto chain = subresultant_chain(hi, lo);
    const Poly<R>& s0 = chain[0];
    if (s0.is_zero()) return ring_zero((R*)nullptr);
    if (s0.deg() != 0) throw std::logic_error("poly_resultant: S_0 not constant");
    R r = s0[0];
    if (swapped && (a.deg() % 2) && (b.deg() % 2)) r = -r;
    return r;
}

// Primitive gcd over Z via the subresultant PRS.
inline IPoly poly_gcd(const IPoly& a, const IPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : poly_primitive_part(b).mul_scalar(b.lc() < 0 ? Int(-1) : Int(1));
    if (b.is_zero()) return poly_primitive_part(a).mul_scalar(a.lc() < 0 ? Int(-1) : Int(1));
    IPoly A = poly_primitive_part(a);
    IPoly B = poly_primitive_part(b);
    if (A.deg() < B.deg()) std::swap(A, B);
    while (!B.is_zero()) {
        IPoly r = prem(A, B);
        A = B;
        B = poly_primitive_part(r);
    }
    IPoly g = poly_primitive_part(A);
    Int cg = gcd_int(poly_content(a), poly_content(b));
    g = g.mul_scalar(cg);
    if (!g.is_zero() && g.lc() < 0) g = -g;
    return g;
}

inline IPoly squarefree_part(const IPoly& p) {
    if (p.deg() <= 0) return p;
    IPoly g = poly_gcd(p, p.derivative());
    if (g.deg() == 0) return poly_primitive_part(p);
    IPoly q = poly_exact_div(poly_primitive_part(p), poly_primitive_part(g).mul_scalar(
        poly_primitive_part(g).lc() < 0 ? Int(-1) : Int(1)));
    return poly_primitive_part(q);
}

// Exact evaluation of an integer polynomial at u/v, scaled by v^deg:
// returns sum c_i u^i v^(d-i). The sign equals the sign of p(u/v) for v > 0.
inline Int eval_scaled(const IPoly& p, const Int& u, const Int& v) {
    if (p.is_zero()) return 0;
    int d = p.deg();
    Int acc = 0, vp = 1;
    // Horner from the top: acc = acc*u + c_i * v^(d-i)
    for (int i = d; i >= 0; --i) {
        acc = acc * u + p[i] * vp;
        if (i > 0) vp *= v;
    }
    return acc;
}

inline Int eval_at_rat_scaled(const IPoly& p, const Rat& x) {
    return eval_scaled(p, rat_num(x), rat_den(x));
}

inline int sign_int(const Int& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

inline int sign_at(const IPoly& p, const Rat& x) { return sign_int(eval_at_rat_scaled(p, x)); }

inline Rat eval_rat(const IPoly& p, const Rat& x) {
    Rat acc = 0;
    for (int i = p.deg(); i >= 0; --i) acc = acc * x + Rat(p[i]);
    return acc;
}

// Taylor shift: p(x + a) for integer a.
inline IPoly taylor_shift(const IPoly& p, const Int& a) {
    if (p.is_zero() || a == 0) return p;
    std::vector<Int> c(p.coeffs());
    int d = p.deg();
    // synthetic division cascade
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j)
            c[static_cast<size_t>(j)] += a * c[static_cast<size_t>(j) + 1];
    return IPoly(std::move(c));
}

// p(c*x) for integer c.
inline IPoly scale_arg(const IPoly& p, const Int& c) {
    std::vector<Int> r(p.coeffs());
    Int f = 1;
    for (size_t i = 1; i < r.size(); ++i) {
        f *= c;
        r[i] *= f;
    }
    return IPoly(std::move(r));
}

// x^deg * p(1/x)
inline IPoly reverse_poly(const IPoly& p, int declared_deg = -1) {
    int d = declared_deg < 0 ? p.deg() : declared_deg;
    std::vector<Int> r(static_cast<size_t>(d) + 1, Int(0));
    for (int i = 0; i <= p.deg(); ++i) r[static_cast<size_t>(d - i)] = p[i];
    return IPoly(std::move(r));
}

// Composition p(q(x)).
inline IPoly compose(const IPoly& p, const IPoly& q) {
    IPoly acc;
    for (int i = p.deg(); i >= 0; --i) {
        acc = acc * q + IPoly::constant(p[i]);
    }
    return acc;
}

} // namespace nearcurve

#endif
