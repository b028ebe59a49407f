#ifndef NEARCURVE_FORM_HPP
#define NEARCURVE_FORM_HPP

#include "nearcurve/bigint.hpp"
#include "nearcurve/poly.hpp"

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nearcurve {

// Exponent tuple of a monomial; entries beyond nvars stay zero.
struct MultiIndex {
    std::array<unsigned, 3> e{0, 0, 0};

    unsigned total() const { return e[0] + e[1] + e[2]; }
    unsigned operator[](size_t i) const { return e[i]; }

    bool operator==(const MultiIndex& o) const { return e == o.e; }
};

// Graded-lex order, x > y > z, highest first. Used for term storage,
// serialization and kernel-vector canonicalization.
struct GradedLexDesc {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        if (a.total() != b.total()) return a.total() > b.total();
        return a.e > b.e;
    }
};

// Homogeneous polynomial with exact integer coefficients in 2 or 3 variables.
// Zero coefficients are never stored; the zero form is an empty term map with
// a declared degree. Immutable in spirit: operations return new forms.
class IntegerForm {
public:
    using TermMap = std::map<MultiIndex, Int, GradedLexDesc>;

    IntegerForm(int nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
        check_shape();
    }
    IntegerForm(int nvars, unsigned degree, TermMap terms);

    int nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coeff(const MultiIndex& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(const MultiIndex& m, const Int& c);

    Int evaluate(std::span<const Int> p) const;
    Rat evaluate(std::span<const Rat> p) const;

    IntegerForm partial_derivative(int var) const;
    IntegerForm operator+(const IntegerForm& o) const;
    IntegerForm operator-(const IntegerForm& o) const;
    IntegerForm operator*(const IntegerForm& o) const;
    IntegerForm operator-() const;
    IntegerForm mul_scalar(const Int& s) const;
    bool operator==(const IntegerForm& o) const {
        return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
    }

    // F(U x) for an integer 3x3 matrix U (rows act on column vector x).
    IntegerForm substitute_linear(const std::array<std::array<Int, 3>, 3>& U) const;

    Int content() const;
    IntegerForm primitive_part() const;

    std::string to_string() const; // human-readable, for diagnostics

private:
    void check_shape() const;
    int nvars_;
    unsigned degree_;
    TermMap terms_;
};

// det of the 3x3 matrix of second partials; degree 3(k-2) or the zero form.
IntegerForm hessian_form(const IntegerForm& F);

// Euler-check helper: sum_i x_i dF/dx_i == k F.
bool euler_identity_holds(const IntegerForm& F);

// g(x,y) = F with 1 substituted for the chosen variable, as a polynomial in
// the *second* remaining variable with Z[first]-coefficients. For var = 2 the
// result is F(x,y,1) as a poly in y over Z[x].
BPoly dehomogenize(const IntegerForm& F, int var);

// Rebuilds a ternary form of the given degree from a bivariate polynomial by
// homogenizing with the chosen variable.
IntegerForm homogenize(const BPoly& g, int var, unsigned degree);

struct PrimitiveTriple {
    Int x, y, z;
};

inline bool is_primitive(const Int& x, const Int& y, const Int& z) {
    if (x == 0 && y == 0 && z == 0) return false;
    return gcd3(x, y, z) == 1;
}

enum class SingularityVerdict { nonsingular_certified, singular_with_witness, inconclusive };

struct SingularityReport {
    SingularityVerdict verdict;
    std::optional<std::array<Int, 3>> witness; // projective point with vanishing gradient
    std::string detail;
};

// Decision procedure for non-singularity over the algebraic closure.
// Sound in both certified directions; "inconclusive" when the budget of
// coordinate changes is exhausted without a certificate.
SingularityReport singularity_scan(const IntegerForm& F, int budget = 8);

// JSON (de)serialization; emission is bit-exact reproducible with terms in
// graded-lex order and coefficients as decimal strings.
std::string form_to_json(const IntegerForm& F);
IntegerForm form_from_json(const std::string& text);

// Named fixture forms used across tests and the CLI examples.
IntegerForm fixture_form(const std::string& name);

} // namespace nearcurve

#endif
