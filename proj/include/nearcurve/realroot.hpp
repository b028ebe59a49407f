#ifndef NEARCURVE_REALROOT_HPP
#define NEARCURVE_REALROOT_HPP

#include "nearcurve/poly.hpp"

#include <optional>
#include <vector>

namespace nearcurve {

// An isolated real root of a squarefree integer polynomial. Either an exact
// rational value (lo == hi) or an open interval (lo, hi) containing exactly
// one root, with p(lo) != 0 != p(hi).
struct RootInterval {
    Rat lo, hi;
    bool exact() const { return lo == hi; }
    Rat mid() const { return (lo + hi) / 2; }
    Rat width() const { return hi - lo; }
};

// Isolates all real roots of a squarefree polynomial, in increasing order.
std::vector<RootInterval> isolate_real_roots(const IPoly& p);

// Roots restricted to [lo, hi] (inclusive).
std::vector<RootInterval> isolate_real_roots_in(const IPoly& p, const Rat& lo, const Rat& hi);

// Shrinks an isolating interval below the given width by bisection.
void refine_root(const IPoly& p, RootInterval& r, const Rat& width);

// Real algebraic number: squarefree primitive defining polynomial plus an
// isolating interval. Zero tests against other integer polynomials are exact
// (gcd + sign isolation); interval refinement is only an accelerator.
class AlgebraicNumber {
public:
    AlgebraicNumber() : p_(IPoly::linear(0, 1)), iv_{Rat(0), Rat(0)} {}
    AlgebraicNumber(IPoly defining, RootInterval iv);
    static AlgebraicNumber from_rational(const Rat& v);

    const IPoly& defining_poly() const { return p_; }
    const RootInterval& interval() const { return iv_; }
    bool is_rational() const { return iv_.exact(); }
    Rat rational_value() const { return iv_.lo; }

    void refine() const;
    void refine_below(const Rat& width) const;

    // Exact sign of q at this number.
    int sign_of(const IPoly& q) const;

    int compare(const Rat& r) const;           // sign of (alpha - r)
    int compare(const AlgebraicNumber& o) const;
    bool equals(const AlgebraicNumber& o) const { return compare(o) == 0; }

    double to_double() const;
    // Enclosure of width <= w.
    std::pair<Rat, Rat> enclosure(const Rat& w) const;

private:
    IPoly p_;
    mutable RootInterval iv_;
};

// All distinct real roots of an arbitrary nonzero integer polynomial, as
// algebraic numbers over its squarefree part.
std::vector<AlgebraicNumber> real_roots_of(const IPoly& p);
std::vector<AlgebraicNumber> real_roots_in(const IPoly& p, const Rat& lo, const Rat& hi);

} // namespace nearcurve

#endif
