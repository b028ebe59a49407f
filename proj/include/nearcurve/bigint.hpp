#ifndef NEARCURVE_BIGINT_HPP
#define NEARCURVE_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nearcurve {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

// gcd over absolute values; gcd(0,0,n) = |n|.
inline Int gcd3(const Int& a, const Int& b, const Int& c) {
    return gcd_int(gcd_int(abs_int(a), abs_int(b)), abs_int(c));
}

inline Int pow_int(const Int& base, unsigned e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

// floor of the k-th root of a >= 0.
inline Int kth_root_floor(const Int& a, unsigned k) {
    if (a < 0) throw std::invalid_argument("kth_root_floor: negative radicand");
    if (k == 0) throw std::invalid_argument("kth_root_floor: k = 0");
    if (a == 0 || a == 1 || k == 1) return a;
    Int lo = 1, hi = 1;
    while (pow_int(hi, k) <= a) hi <<= 1;
    // invariant: lo^k <= a < hi^k
    while (hi - lo > 1) {
        Int mid = (lo + hi) >> 1;
        if (pow_int(mid, k) <= a) lo = mid; else hi = mid;
    }
    return lo;
}

// Exact floor(B^(p/q)) for B >= 1 and p/q >= 0 in lowest terms.
inline Int floor_pow(const Int& B, const Int& p, const Int& q) {
    if (B < 1 || p < 0 || q <= 0) throw std::invalid_argument("floor_pow: bad arguments");
    return kth_root_floor(pow_int(B, static_cast<unsigned>(p)), static_cast<unsigned>(q));
}

inline Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

// num/den with any nonzero denominator sign.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    return den < 0 ? Rat(-num, -den) : Rat(num, den);
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int floor_rat(const Rat& r) {
    Int n = rat_num(r), d = rat_den(r);
    Int q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int n = rat_num(r), d = rat_den(r);
    Int q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }
inline double to_double(const Int& a) { return a.template convert_to<double>(); }

// Detects whether n is an exact power of two; returns the exponent.
inline bool log2_exact(const Int& n, long& e) {
    if (n <= 0) return false;
    Int m = n;
    e = 0;
    while ((m & 1) == 0) { m >>= 1; ++e; }
    return m == 1;
}

// Range-checked fast-path conversion helpers.
inline bool fits_i64(const Int& a) {
    static const Int lim = Int(std::numeric_limits<std::int64_t>::max());
    return a <= lim && a >= -lim;
}

inline std::int64_t to_i64(const Int& a) { return a.template convert_to<std::int64_t>(); }

} // namespace nearcurve

#endif
