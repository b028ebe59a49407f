#ifndef NEARCURVE_LATTICE_HPP
#define NEARCURVE_LATTICE_HPP

#include "nearcurve/bigint.hpp"
#include "nearcurve/detmethod.hpp"

#include <array>
#include <map>
#include <vector>

namespace nearcurve {

// Full-rank lattice of rank 2 or 3 with exact rational basis rows.
struct IntLattice {
    int rank;
    std::array<std::array<Rat, 3>, 3> basis; // rows are generators

    Rat determinant() const; // |det|, exact
};

struct MinimaResult {
    std::vector<Rat> minima;                       // sup-norm successive minima
    std::vector<std::array<Rat, 3>> vectors;       // attaining, independent
    std::vector<std::array<Rat, 3>> reduced_basis; // basis attaining the minima
};

// Exact sup-norm successive minima with a minima-attaining basis (rank <= 3).
// Enumeration inside a certified search region; a rational LLL pass is used
// only as a pre-conditioner.
MinimaResult successive_minima(const IntLattice& L);

// The box lattice {(M/B)(x - r z), (M/B)(y - s z), z/B} with r = r_num/M,
// s = s_num/M; det = M^2/B^3 exactly.
std::pair<IntLattice, MinimaResult> gamma_minima(const Int& M, const Int& B, const Int& r_num,
                                                 const Int& s_num);

struct HistogramRow {
    long L_exponent; // dyadic level L = 2^e with L <= 1/minima_1 < 2L
    Int count;
    double bound_value; // reference curve c * B^2 log(B) / L^2
};

// Distribution of the first successive minimum over the boxes of a cover.
std::vector<HistogramRow> minima_histogram(const BoxCover& cover, const Int& B);

std::string histogram_csv(const std::vector<HistogramRow>& rows);

} // namespace nearcurve

#endif
