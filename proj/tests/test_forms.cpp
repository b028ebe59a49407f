#include "nearcurve/form.hpp"
#include "nearcurve/poly.hpp"

#include <doctest.h>

using namespace nearcurve;

namespace {

IntegerForm F5() { return fixture_form("F5"); }
IntegerForm Qp() { return fixture_form("Qp"); }

Int ev(const IntegerForm& F, long x, long y, long z) {
    std::array<Int, 3> p = {Int(x), Int(y), Int(z)};
    return F.evaluate(std::span<const Int>(p.data(), 3));
}

} // namespace

TEST_CASE("evaluation") {
    CHECK(ev(F5(), 1, 0, 1) == 0);
    CHECK(ev(F5(), 2, 1, 2) == 1);
    // homogeneity: F(2p) = 2^5 F(p)
    CHECK(ev(F5(), 2, 2, 2) == 32 * ev(F5(), 1, 1, 1));
    std::array<Int, 2> two = {Int(1), Int(2)};
    CHECK_THROWS(F5().evaluate(std::span<const Int>(two.data(), 2)));
}

TEST_CASE("homogeneity on random points") {
    auto X5 = fixture_form("X5");
    for (long x = -3; x <= 3; ++x)
        for (long y = -2; y <= 2; ++y)
            for (long lam = -2; lam <= 2; ++lam) {
                Int base = ev(X5, x, y, 2);
                Int scaled = ev(X5, lam * x, lam * y, lam * 2);
                CHECK(scaled == pow_int(Int(lam), 5) * base);
            }
}

TEST_CASE("partial derivatives and Euler identity") {
    IntegerForm dz = F5().partial_derivative(2);
    IntegerForm expect(3, 4);
    MultiIndex z4;
    z4.e = {0, 0, 4};
    expect.add_term(z4, -5);
    CHECK(dz == expect);

    IntegerForm dy = F5().partial_derivative(1);
    IntegerForm expect_y(3, 4);
    MultiIndex y4;
    y4.e = {0, 4, 0};
    expect_y.add_term(y4, 5);
    CHECK(dy == expect_y);

    CHECK(euler_identity_holds(F5()));
    CHECK(euler_identity_holds(fixture_form("X5")));
    CHECK(euler_identity_holds(fixture_form("E3")));
}

TEST_CASE("hessian") {
    // oracle: symbolic 3x3 determinant computed by the same cofactor formula
    // applied to hand-expanded second partials of F5 gives -8000 (xyz)^3
    IntegerForm H = hessian_form(F5());
    IntegerForm expect(3, 9);
    MultiIndex m;
    m.e = {3, 3, 3};
    expect.add_term(m, -8000);
    CHECK(H == expect);
    CHECK(H.degree() == 3 * (5 - 2));

    // diagonal quadratic: constant Hessian -8
    IntegerForm Hq = hessian_form(Qp());
    CHECK(Hq.degree() == 0);
    MultiIndex c0;
    CHECK(Hq.coeff(c0) == -8);

    // degree of a nonzero Hessian is 3(k-2)
    IntegerForm HX = hessian_form(fixture_form("X5"));
    CHECK(!HX.is_zero());
    CHECK(HX.degree() == 9);
}

TEST_CASE("dehomogenize") {
    // F5 at z = 1: x^5 + y^5 - 1, as a poly in y over Z[x]
    BPoly g = dehomogenize(F5(), 2);
    CHECK(g.deg() == 5);
    CHECK(g[5] == IPoly::constant(1));
    IPoly c0 = g[0]; // x^5 - 1
    CHECK(c0.deg() == 5);
    CHECK(c0[0] == -1);
    CHECK(c0[5] == 1);

    BPoly q = dehomogenize(Qp(), 2);
    CHECK(q.deg() == 2);
    CHECK(q[0][0] == -1);
    CHECK(q[0][2] == 1);

    // dehomogenize/evaluate consistency on a grid
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            IPoly row;
            // g(a, b) = sum_j g_j(a) b^j
            Rat val = 0;
            for (int j = 0; j <= g.deg(); ++j)
                val += eval_rat(g[j], Rat(a)) * rat_pow(Rat(b), static_cast<unsigned>(j));
            CHECK(val == Rat(ev(F5(), a, b, 1)));
        }

    // round trip through homogenization
    CHECK(homogenize(g, 2, 5) == F5());
}

TEST_CASE("serialization round trip, graded-lex order") {
    for (const char* name : {"F5", "Qp", "E3", "G5", "X5"}) {
        IntegerForm F = fixture_form(name);
        std::string s = form_to_json(F);
        IntegerForm G = form_from_json(s);
        CHECK(F == G);
        CHECK(form_to_json(G) == s); // bit-exact reproducible
    }
    // graded-lex descending: X5's first term is x^5, last is z^5
    std::string s = form_to_json(fixture_form("X5"));
    CHECK(s.find("[5,0,0]") < s.find("[1,1,3]"));
    CHECK(s.find("[1,1,3]") < s.find("[0,0,5]"));
}

TEST_CASE("substitute_linear is an action") {
    std::array<std::array<Int, 3>, 3> U = {{{Int(1), Int(1), Int(0)},
                                            {Int(0), Int(1), Int(0)},
                                            {Int(0), Int(2), Int(1)}}};
    IntegerForm G = fixture_form("X5").substitute_linear(U);
    // check on points: G(p) = F(U p)
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            std::array<Int, 3> p = {Int(x), Int(y), Int(3)};
            std::array<Int, 3> up;
            for (size_t i = 0; i < 3; ++i)
                up[i] = U[i][0] * p[0] + U[i][1] * p[1] + U[i][2] * p[2];
            CHECK(G.evaluate(std::span<const Int>(p.data(), 3)) ==
                  fixture_form("X5").evaluate(std::span<const Int>(up.data(), 3)));
        }
}

TEST_CASE("primitivity convention") {
    CHECK(is_primitive(Int(0), Int(0), Int(1)));
    CHECK(is_primitive(Int(0), Int(0), Int(-1)));
    CHECK(!is_primitive(Int(0), Int(0), Int(2)));
    CHECK(!is_primitive(Int(0), Int(0), Int(0)));
    CHECK(is_primitive(Int(2), Int(3), Int(4)));
    CHECK(!is_primitive(Int(2), Int(4), Int(6)));
}

TEST_CASE("singularity scan") {
    auto r5 = singularity_scan(F5());
    CHECK(r5.verdict == SingularityVerdict::nonsingular_certified);

    auto rq = singularity_scan(Qp());
    CHECK(rq.verdict == SingularityVerdict::nonsingular_certified);

    // x^5 + x^3 y^2: all partials vanish at (0,0,1)
    IntegerForm S(3, 5);
    MultiIndex a, b;
    a.e = {5, 0, 0};
    b.e = {3, 2, 0};
    S.add_term(a, 1);
    S.add_term(b, 1);
    auto rs = singularity_scan(S);
    REQUIRE(rs.verdict == SingularityVerdict::singular_with_witness);
    REQUIRE(rs.witness.has_value());
    auto w = *rs.witness;
    CHECK(w[0] == 0);
    CHECK(w[1] == 0);
    CHECK(abs_int(w[2]) == 1);

    auto rg = singularity_scan(fixture_form("G5"));
    CHECK(rg.verdict == SingularityVerdict::nonsingular_certified);
}
