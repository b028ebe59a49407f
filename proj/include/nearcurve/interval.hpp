#ifndef NEARCURVE_INTERVAL_HPP
#define NEARCURVE_INTERVAL_HPP

#include "nearcurve/poly.hpp"

#include <algorithm>

namespace nearcurve {

// Closed interval with exact rational endpoints. All operations are exact
// (no rounding), so enclosures are tight up to the input widths.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat v) : lo(v), hi(v) {}
    RatInterval(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {}

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool positive() const { return lo > 0; }
    bool negative() const { return hi < 0; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }

    RatInterval operator-() const { return {-hi, -lo}; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    RatInterval abs() const {
        if (lo >= 0) return *this;
        if (hi <= 0) return {-hi, -lo};
        return {Rat(0), std::max(hi, Rat(-lo))};
    }
};

// Interval extension of an integer polynomial over [x].
inline RatInterval eval_interval(const IPoly& p, const RatInterval& x) {
    RatInterval acc(Rat(0));
    for (int i = p.deg(); i >= 0; --i) {
        acc = acc * x + RatInterval(Rat(p[i]));
    }
    return acc;
}

} // namespace nearcurve

#endif
