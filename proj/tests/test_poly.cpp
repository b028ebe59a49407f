#include "nearcurve/interval.hpp"
#include "nearcurve/poly.hpp"
#include "nearcurve/realroot.hpp"

#include <doctest.h>

#include <random>

using namespace nearcurve;

namespace {

IPoly ip(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return IPoly(std::move(v));
}

// determinant of the Sylvester matrix, the independent oracle for resultants
Int sylvester_resultant(const IPoly& a, const IPoly& b) {
    int m = a.deg(), n = b.deg();
    int N = m + n;
    std::vector<std::vector<Rat>> M(static_cast<size_t>(N),
                                    std::vector<Rat>(static_cast<size_t>(N), Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = Rat(a[m - j]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            M[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = Rat(b[n - j]);
    // fraction-full Gaussian elimination over Q
    Rat det = 1;
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (M[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(c)]);
            det = -det;
        }
        det *= M[static_cast<size_t>(c)][static_cast<size_t>(c)];
        for (int r = c + 1; r < N; ++r) {
            Rat f = M[static_cast<size_t>(r)][static_cast<size_t>(c)] / M[static_cast<size_t>(c)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int k = c; k < N; ++k)
                M[static_cast<size_t>(r)][static_cast<size_t>(k)] -= f * M[static_cast<size_t>(c)][static_cast<size_t>(k)];
        }
    }
    CHECK(rat_den(det) == 1);
    return rat_num(det);
}

} // namespace

TEST_CASE("polynomial arithmetic basics") {
    IPoly p = ip({-1, 0, 1}); // x^2 - 1
    IPoly q = ip({1, 1});     // x + 1
    CHECK(poly_exact_div(p, q) == ip({-1, 1}));
    CHECK((q * ip({-1, 1})) == p);
    CHECK(p.derivative() == ip({0, 2}));
    CHECK(eval_rat(p, Rat(3)) == Rat(8));
    CHECK(taylor_shift(p, 2) == ip({3, 4, 1}));
    CHECK(scale_arg(p, 3) == ip({-1, 0, 9}));
}

TEST_CASE("gcd and squarefree part") {
    IPoly a = ip({-1, 0, 1});        // (x-1)(x+1)
    IPoly b = ip({1, 2, 1});         // (x+1)^2
    CHECK(poly_gcd(a, b) == ip({1, 1}));
    IPoly c = a * b;                 // (x-1)(x+1)^3
    IPoly sf = squarefree_part(c);
    CHECK(sf == a);
    CHECK(squarefree_part(ip({0, 0, 0, 5})) == ip({0, 1}));
}

TEST_CASE("resultant matches the Sylvester determinant oracle") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> coeff(-8, 8);
    std::uniform_int_distribution<int> degd(1, 5);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<Int> ca, cb;
        int da = degd(rng), db = degd(rng);
        for (int i = 0; i <= da; ++i) ca.emplace_back(coeff(rng));
        for (int i = 0; i <= db; ++i) cb.emplace_back(coeff(rng));
        if (ca.back() == 0) ca.back() = 1;
        if (cb.back() == 0) cb.back() = 1;
        IPoly a(std::move(ca)), b(std::move(cb));
        Int expect = sylvester_resultant(a, b);
        Int got = poly_resultant(a, b);
        CHECK(got == expect);
    }
}

TEST_CASE("bivariate resultant eliminates the right variable") {
    // f = y^2 - x, g = y - x: Res_y = x^2 - x, roots x = 0, 1
    BPoly f(std::vector<IPoly>{ip({0, -1}), IPoly(), IPoly::constant(1)});
    BPoly g(std::vector<IPoly>{ip({0, -1}), IPoly::constant(1)});
    IPoly r = poly_resultant(f, g);
    IPoly expect = ip({0, -1, 1});
    CHECK(poly_primitive_part(r) == expect);
}

TEST_CASE("real root isolation finds all roots") {
    // (x-1)(x-2)(x+3) = x^3 - 7x + 6
    IPoly p = ip({6, -7, 0, 1});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 3);
    std::vector<Rat> expect = {Rat(-3), Rat(1), Rat(2)};
    for (size_t i = 0; i < 3; ++i) {
        RootInterval r = roots[i];
        refine_root(p, r, Rat(1, 1000));
        if (r.exact()) CHECK(r.lo == expect[i]);
        else {
            CHECK(r.lo < expect[i]);
            CHECK(r.hi > expect[i]);
        }
    }
    // x^2 - 2: irrational pair
    auto r2 = isolate_real_roots(ip({-2, 0, 1}));
    REQUIRE(r2.size() == 2);
    // clustered roots: (x - 1)(x - 1 - 1/128 scaled): 128 x^2 - 257 x + 129... use
    // (x-100)(x-101) shifted to stress separation
    auto r3 = isolate_real_roots(ip({10100, -201, 1}));
    REQUIRE(r3.size() == 2);
}

TEST_CASE("exact dyadic roots and endpoint hygiene") {
    // roots at 0, 1/2, 2: 2x(2x-1)(x-2) = 4x^3 - 10x^2 + 2x... recompute:
    // x(2x-1)(x-2) = 2x^3 -5x^2 + 2x
    IPoly p = ip({0, 2, -5, 2});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 3);
    for (auto& r : roots) {
        if (!r.exact()) {
            CHECK(sign_at(p, r.lo) != 0);
            CHECK(sign_at(p, r.hi) != 0);
        }
    }
}

TEST_CASE("algebraic number exact sign tests") {
    // alpha = sqrt(2)
    IPoly p = ip({-2, 0, 1});
    auto roots = real_roots_of(p);
    REQUIRE(roots.size() == 2);
    const AlgebraicNumber& a = roots[1]; // positive root
    CHECK(a.compare(Rat(1)) > 0);
    CHECK(a.compare(Rat(2)) < 0);
    CHECK(a.sign_of(ip({-2, 0, 1})) == 0);    // its own polynomial
    CHECK(a.sign_of(ip({0, 1})) > 0);         // x > 0 at sqrt(2)
    CHECK(a.sign_of(ip({-3, 0, 1})) < 0);     // x^2 - 3 < 0
    CHECK(a.sign_of(ip({-4, 0, 0, 0, 1})) == 0); // x^4 - 4
    // equality across different defining polynomials
    auto roots4 = real_roots_of(ip({-4, 0, 0, 0, 1})); // x^4 - 4: +-sqrt(2)
    REQUIRE(roots4.size() == 2);
    CHECK(a.equals(roots4[1]));
    CHECK(a.compare(roots4[0]) > 0);
}

TEST_CASE("roots in a window") {
    IPoly p = ip({6, -7, 0, 1}); // roots -3, 1, 2
    auto rs = real_roots_in(p, Rat(0), Rat(3, 2));
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].compare(Rat(1)) == 0);
}

TEST_CASE("interval polynomial evaluation") {
    IPoly p = ip({-2, 0, 1});
    RatInterval v = eval_interval(p, {Rat(1), Rat(2)});
    CHECK(v.lo <= Rat(-1));
    CHECK(v.hi >= Rat(2));
    RatInterval w = eval_interval(p, {Rat(2), Rat(3)});
    CHECK(w.positive());
}

TEST_CASE("subresultant chain principal coefficients") {
    // f = (x^2+1)(x+2), g = (x^2+1)(x+3): gcd degree 2 => sres_0 = sres_1 = 0
    IPoly common = ip({1, 0, 1});
    IPoly f = common * ip({2, 1});
    IPoly g = common * ip({3, 1});
    auto chain = subresultant_chain(f, g);
    CHECK(chain[0].is_zero());
    CHECK(chain[1].is_zero());
    REQUIRE(chain.size() >= 3);
    CHECK(!chain[2].is_zero());
    // S_2 must be proportional to the gcd
    IPoly s2 = poly_primitive_part(chain[2]);
    if (s2.lc() < 0) s2 = -s2;
    CHECK(s2 == common);
}
