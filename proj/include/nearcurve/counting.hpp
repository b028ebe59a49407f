#ifndef NEARCURVE_COUNTING_HPP
#define NEARCURVE_COUNTING_HPP

#include "nearcurve/form.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nearcurve {

struct CurvePatch; // geometry.hpp

// |F(x,y,gamma)| <= floor(B^gamma) over the annulus B/2 < max|x_i| <= B.
struct CountQuery {
    IntegerForm F;
    Int B;
    Rat gamma;

    CountQuery(IntegerForm f, Int b, Rat g);
    Rat tau() const { return Rat(F.degree()) - gamma; }
    Int threshold() const; // floor(B^gamma), exact
};

struct CountReport {
    std::string form_id;
    Int B;
    Rat gamma;
    std::string tau_text;
    Int N = 0;
    std::optional<Int> N_star;
    std::map<std::string, Int> per_line; // excluded-point counts per tangent line
    Int excluded_total = 0;
    Int overlap = 0; // points on more than one line, extra incidences
    std::string strategy;
    std::string singularity_note;
    long long wall_ms = 0;

    std::string csv_row() const;
    static std::string csv_header();
};

// Exact tangent-line membership tests, implemented by geometry::FlexReport.
class TangentExclusion {
public:
    virtual ~TangentExclusion() = default;
    // exact: the point lies on the union of all inflection tangent lines
    virtual bool on_any_tangent(const Int& x, const Int& y, const Int& z) const = 0;
    // labels of the real tangent lines through the point (may be empty for a
    // point lying only on a complex-conjugate pair of tangents)
    virtual std::vector<std::string> lines_through(const Int& x, const Int& y,
                                                   const Int& z) const = 0;
};

struct CountOptions {
    int threads = 1;
    bool naive = false;              // force the O(B^3) strategy
    bool singularity_override = false;
    bool skip_singularity_check = false; // caller already holds a certificate
};

// Set of integers z with |F(x,y,z)| <= bound, as disjoint closed intervals in
// increasing order, intersected with [zlo, zhi]. all_z reports the degenerate
// constant-in-z case where every integer qualifies.
struct ZSolution {
    std::vector<std::pair<Int, Int>> intervals;
    bool all_z = false;
};

ZSolution solve_z_range(const IntegerForm& F, const Int& x, const Int& y, const Int& bound,
                        const Int& zlo, const Int& zhi);

CountReport count_gamma(const CountQuery& q, const TangentExclusion* excl = nullptr,
                        const CountOptions& opt = {});

// N_F(B): primitive zeros over the full cube |x|,|y|,|z| <= B.
Int count_on_curve(const IntegerForm& F, const Int& B, const CountOptions& opt = {});

// Every primitive solution of the given query, deterministically ordered.
std::vector<PrimitiveTriple> enumerate_solutions(const CountQuery& q, const CountOptions& opt = {});

// Primitive (a,b,q): B/2 <= q <= B, a/q in [I0,I1] subset of the patch
// interval, |b/q - f(a/q)| <= delta/B, decided exactly.
Int count_close_rationals(const CurvePatch& patch, const Rat& I0, const Rat& I1, const Int& B,
                          const Rat& delta);

// Primitive (x,y,z): H = 0, |x - a z| <= B1, |y - (b - c a) z - c x| <= B2,
// |z| <= B3.
Int count_parallelepiped(const IntegerForm& H, const Rat& B1, const Rat& B2, const Rat& B3,
                         const Rat& a, const Rat& b, const Rat& c);

} // namespace nearcurve

#endif
