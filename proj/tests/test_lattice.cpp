#include "nearcurve/lattice.hpp"

#include <doctest.h>

#include <random>

using namespace nearcurve;

namespace {

IntLattice int_lattice(int rank, std::vector<std::vector<long>> rows) {
    IntLattice L;
    L.rank = rank;
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            L.basis[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                Rat(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    return L;
}

// Oracle for integer lattices: enumerate all integer points in [-W, W]^rank,
// keep lattice members (integral coordinates w.r.t. the basis), and read the
// successive minima off the sorted list.
std::vector<Rat> oracle_minima(const IntLattice& L, long W) {
    int rank = L.rank;
    // inverse via rationals
    auto det2 = [&](int a, int b, int c, int d) {
        return L.basis[static_cast<size_t>(a)][static_cast<size_t>(c)] * L.basis[static_cast<size_t>(b)][static_cast<size_t>(d)] -
               L.basis[static_cast<size_t>(a)][static_cast<size_t>(d)] * L.basis[static_cast<size_t>(b)][static_cast<size_t>(c)];
    };
    (void)det2;
    std::vector<std::array<Rat, 3>> members;
    std::vector<std::array<long, 3>> grid;
    for (long x = -W; x <= W; ++x)
        for (long y = -W; y <= W; ++y) {
            if (rank == 2) grid.push_back({x, y, 0});
            else
                for (long z = -W; z <= W; ++z) grid.push_back({x, y, z});
        }
    for (auto& g : grid) {
        if (g[0] == 0 && g[1] == 0 && g[2] == 0) continue;
        // solve c * basis = g over Q, check integrality
        // use Cramer on the transposed system
        std::array<std::array<Rat, 3>, 3> m{};
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) m[static_cast<size_t>(j)][static_cast<size_t>(i)] = L.basis[static_cast<size_t>(i)][static_cast<size_t>(j)];
        // determinant
        Rat D;
        if (rank == 2) D = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        else
            D = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        bool integral = true;
        for (int i = 0; i < rank && integral; ++i) {
            auto mi = m;
            for (int r = 0; r < rank; ++r) mi[static_cast<size_t>(r)][static_cast<size_t>(i)] = Rat(g[static_cast<size_t>(r)]);
            Rat Di;
            if (rank == 2) Di = mi[0][0] * mi[1][1] - mi[0][1] * mi[1][0];
            else
                Di = mi[0][0] * (mi[1][1] * mi[2][2] - mi[1][2] * mi[2][1]) -
                     mi[0][1] * (mi[1][0] * mi[2][2] - mi[1][2] * mi[2][0]) +
                     mi[0][2] * (mi[1][0] * mi[2][1] - mi[1][1] * mi[2][0]);
            Rat c = Di / D;
            if (rat_den(c) != 1) integral = false;
        }
        if (!integral) continue;
        std::array<Rat, 3> v{};
        for (int i = 0; i < rank; ++i) v[static_cast<size_t>(i)] = Rat(g[static_cast<size_t>(i)]);
        members.push_back(v);
    }
    std::sort(members.begin(), members.end(), [&](const auto& a, const auto& b) {
        Rat na = 0, nb = 0;
        for (int i = 0; i < rank; ++i) {
            na = std::max(na, rat_abs(a[static_cast<size_t>(i)]));
            nb = std::max(nb, rat_abs(b[static_cast<size_t>(i)]));
        }
        return na < nb;
    });
    std::vector<std::array<Rat, 3>> chosen;
    std::vector<Rat> minima;
    for (auto& v : members) {
        if (static_cast<int>(chosen.size()) == rank) break;
        // independence via rank of chosen + v
        std::vector<std::array<Rat, 3>> trial = chosen;
        trial.push_back(v);
        bool indep;
        if (trial.size() == 1) indep = true;
        else if (trial.size() == 2) {
            indep = false;
            for (int i = 0; i < rank && !indep; ++i)
                for (int j = i + 1; j < rank; ++j)
                    if (trial[0][static_cast<size_t>(i)] * trial[1][static_cast<size_t>(j)] !=
                        trial[0][static_cast<size_t>(j)] * trial[1][static_cast<size_t>(i)]) {
                        indep = true;
                        break;
                    }
        } else {
            Rat D3 = trial[0][0] * (trial[1][1] * trial[2][2] - trial[1][2] * trial[2][1]) -
                     trial[0][1] * (trial[1][0] * trial[2][2] - trial[1][2] * trial[2][0]) +
                     trial[0][2] * (trial[1][0] * trial[2][1] - trial[1][1] * trial[2][0]);
            indep = D3 != 0;
        }
        if (!indep) continue;
        chosen.push_back(v);
        Rat n = 0;
        for (int i = 0; i < rank; ++i) n = std::max(n, rat_abs(v[static_cast<size_t>(i)]));
        minima.push_back(n);
    }
    return minima;
}

} // namespace

TEST_CASE("identity lattices") {
    auto r3 = successive_minima(int_lattice(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(r3.minima == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    auto r2 = successive_minima(int_lattice(2, {{1, 0}, {0, 1}}));
    CHECK(r2.minima == std::vector<Rat>{Rat(1), Rat(1)});
}

TEST_CASE("congruence sublattice {t = 0 mod 3}") {
    auto r = successive_minima(int_lattice(2, {{1, 0}, {0, 3}}));
    CHECK(r.minima == std::vector<Rat>{Rat(1), Rat(3)});
    CHECK(r.reduced_basis.size() == 2);
    // basis attains the minima
    CHECK(rat_abs(r.reduced_basis[0][0]) <= 1);
    CHECK(std::max(rat_abs(r.reduced_basis[1][0]), rat_abs(r.reduced_basis[1][1])) == Rat(3));
}

TEST_CASE("gamma lattice golden") {
    auto [L, mr] = gamma_minima(Int(4), Int(16), Int(0), Int(0));
    CHECK(L.determinant() == Rat(16, 4096)); // M^2/B^3 = 1/256
    CHECK(mr.minima == std::vector<Rat>{Rat(1, 16), Rat(1, 4), Rat(1, 4)});
    CHECK(mr.minima[0] * mr.minima[1] * mr.minima[2] == Rat(1, 256));
    // obvious lower bound 1/B
    CHECK(mr.minima[0] >= Rat(1, 16));
}

TEST_CASE("random integer lattices match the exhaustive oracle") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long> entry(-6, 6);
    int done2 = 0, done3 = 0;
    while (done2 < 25 || done3 < 25) {
        int rank = (done2 < 25) ? 2 : 3;
        std::vector<std::vector<long>> rows(static_cast<size_t>(rank),
                                            std::vector<long>(static_cast<size_t>(rank)));
        for (auto& r : rows)
            for (auto& v : r) v = entry(rng);
        IntLattice L = int_lattice(rank, rows);
        if (L.determinant() == 0) continue;
        auto res = successive_minima(L);
        // oracle window: all minima vectors lie within the largest minimum
        long W = 1;
        for (const auto& m : res.minima) W = std::max(W, to_i64(ceil_rat(m)));
        auto om = oracle_minima(L, W);
        REQUIRE(om.size() == res.minima.size());
        for (size_t i = 0; i < om.size(); ++i) CHECK(om[i] == res.minima[i]);
        // Minkowski bounds, exact
        Rat prod = 1;
        for (const auto& m : res.minima) prod *= m;
        Rat det = L.determinant();
        if (rank == 2) {
            CHECK(prod >= det / 2);
            CHECK(prod <= det);
        } else {
            CHECK(prod >= det / 6);
            CHECK(prod <= det);
        }
        // reduced basis attains the minima
        for (size_t i = 0; i < res.reduced_basis.size(); ++i) {
            Rat n = 0;
            for (int t = 0; t < rank; ++t)
                n = std::max(n, rat_abs(res.reduced_basis[i][static_cast<size_t>(t)]));
            CHECK(n == res.minima[i]);
        }
        if (rank == 2) ++done2; else ++done3;
    }
}

TEST_CASE("histogram over a synthetic cover") {
    BoxCover cover;
    cover.M = 8;
    cover.M0 = 1;
    for (int i = 0; i < 5; ++i) {
        Box b;
        b.chart = 2;
        b.v = 0;
        b.w = 0;
        cover.boxes.push_back(b);
    }
    auto rows = minima_histogram(cover, Int(64));
    REQUIRE(rows.size() == 1); // identical lattices: single bucket
    CHECK(rows[0].count == 5);
    auto csv = histogram_csv(rows);
    CHECK(csv.find("L_exponent,count,bound_value") == 0);
}
