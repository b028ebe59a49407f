#ifndef NEARCURVE_DETMETHOD_HPP
#define NEARCURVE_DETMETHOD_HPP

#include "nearcurve/counting.hpp"
#include "nearcurve/form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nearcurve {

// Lattice-point statistics of the simplex x_1 + ... + x_{m-1} + alpha x_m <= nu.
struct SimplexSpec {
    int m;
    Rat alpha;
    Rat nu;
};

struct SimplexStats {
    Rat V;     // volume nu^m / (alpha m!)
    Rat C;     // integral of (x_1+...+x_{m-1}+alpha x_m)
    Int Sigma; // number of lattice points
    Rat Phi;   // accumulated weighted degree (integer when alpha is)
};

SimplexStats simplex_stats(const SimplexSpec& spec);

struct DMParameters {
    int n;
    unsigned k;
    Rat gamma;
    Rat theta;          // exact for n = 3: 9 / (4 (k - gamma))
    double theta_real;  // the n-generic formula
    double alpha;       // from (M0 M)^alpha = 2^-k B^(k-gamma)
    bool alpha_exact = false;
    Rat alpha_rat;      // meaningful when alpha_exact
    double M_lower, M_upper; // B^theta window endpoints (upper at eps = 0.05)
    Int M;              // chosen integer within the window
    int D;
    Int s;              // s(D) = binom(D+n-1, n-1)
    bool m_condition_ok; // M <= B^(k-gamma) / (2^k M0)
};

// theta(n,k,gamma) = (n-2) (n/(n-1))^((n-1)/(n-2)) (k-gamma)^(-1/(n-2))
double theta_general(int n, unsigned k, double gamma);

// alpha solving (M0M)^alpha = 2^-k B^(k-gamma); exact when both sides are
// powers of two.
std::pair<double, std::optional<Rat>> alpha_from(const Int& M0M, const Int& B, unsigned k,
                                                 const Rat& gamma);

DMParameters dm_parameters(int n, unsigned k, const Rat& gamma, const Int& B, const Int& M0,
                           int Dmax = 6);

struct Box {
    int chart; // dominant coordinate: 0 = x, 1 = y, 2 = z
    Int v, w;  // half-open box [v/M, (v+1)/M) x [w/M, (w+1)/M)
    std::vector<PrimitiveTriple> sols;
};

struct BoxCover {
    Int M;
    Int M0;
    std::vector<Box> boxes; // sorted by (chart, v, w); only occupied boxes
};

// Assigns every solution of the query to exactly one half-open box in its
// dominant-coordinate chart. M0 is the calibrated refinement factor.
BoxCover cover_boxes(const CountQuery& q, const Int& M, const Int& M0,
                     const CountOptions& opt = {});

// Doubles M0 from 1 until, on every (M0 M)^-1 sub-box occupied by a solution,
// some affine partial derivative is interval-certified nonzero.
Int calibrate_m0(const CountQuery& q, const Int& M, const std::vector<PrimitiveTriple>& sols);

struct AuxiliaryForm {
    int D_used;
    std::vector<Int> coeffs; // graded-lex order, coprime, first nonzero positive
    IntegerForm as_form() const;
};

// Exact integer kernel of the monomial evaluation matrix. Returns the
// canonical kernel vector (first free column in graded-lex order, coprime,
// sign-normalized) or nullopt when the matrix has full column rank.
std::optional<AuxiliaryForm> fit_auxiliary_form(const std::vector<PrimitiveTriple>& points, int D);

struct PipelineBox {
    int chart;
    Int v, w;
    std::size_t npoints;
    std::optional<AuxiliaryForm> form; // nullopt: uncovered at Dmax
};

struct PipelineResult {
    DMParameters params;
    Int M0;
    std::vector<PipelineBox> boxes;
    Int deg1 = 0, deg2 = 0, deg3plus = 0, uncovered = 0;
    bool coverage_ok = false; // every solution vanishes on its box form
    std::size_t total_solutions = 0;
};

PipelineResult run_pipeline(const CountQuery& q, int Dmax = 6, const CountOptions& opt = {});

std::string pipeline_to_json(const PipelineResult& r);

} // namespace nearcurve

#endif
