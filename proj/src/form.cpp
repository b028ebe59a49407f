#include "nearcurve/form.hpp"

#include "nearcurve/realroot.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace nearcurve {

IntegerForm::IntegerForm(int nvars, unsigned degree, TermMap terms)
    : nvars_(nvars), degree_(degree), terms_(std::move(terms)) {
    check_shape();
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) {
            it = terms_.erase(it);
            continue;
        }
        if (it->first.total() != degree_)
            throw std::invalid_argument("IntegerForm: term degree mismatch");
        for (int i = nvars_; i < 3; ++i)
            if (it->first.e[static_cast<size_t>(i)] != 0)
                throw std::invalid_argument("IntegerForm: exponent beyond nvars");
        ++it;
    }
}

void IntegerForm::check_shape() const {
    // degree 0 is admitted so that derivatives and Hessians of low-degree
    // forms (constants) stay representable
    if (nvars_ != 2 && nvars_ != 3)
        throw std::invalid_argument("IntegerForm: nvars must be 2 or 3");
}

void IntegerForm::add_term(const MultiIndex& m, const Int& c) {
    if (c == 0) return;
    if (m.total() != degree_) throw std::invalid_argument("add_term: degree mismatch");
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Int IntegerForm::evaluate(std::span<const Int> p) const {
    if (static_cast<int>(p.size()) != nvars_)
        throw std::invalid_argument("evaluate: arity mismatch");
    // power tables per coordinate
    std::array<std::vector<Int>, 3> pw;
    for (int v = 0; v < nvars_; ++v) {
        pw[static_cast<size_t>(v)].resize(degree_ + 1);
        pw[static_cast<size_t>(v)][0] = 1;
        for (unsigned i = 1; i <= degree_; ++i)
            pw[static_cast<size_t>(v)][i] = pw[static_cast<size_t>(v)][i - 1] * p[static_cast<size_t>(v)];
    }
    Int acc = 0;
    for (const auto& [m, c] : terms_) {
        Int t = c;
        for (int v = 0; v < nvars_; ++v) t *= pw[static_cast<size_t>(v)][m.e[static_cast<size_t>(v)]];
        acc += t;
    }
    return acc;
}

Rat IntegerForm::evaluate(std::span<const Rat> p) const {
    if (static_cast<int>(p.size()) != nvars_)
        throw std::invalid_argument("evaluate: arity mismatch");
    Rat acc = 0;
    for (const auto& [m, c] : terms_) {
        Rat t(c);
        for (int v = 0; v < nvars_; ++v) t *= rat_pow(p[static_cast<size_t>(v)], m.e[static_cast<size_t>(v)]);
        acc += t;
    }
    return acc;
}

IntegerForm IntegerForm::partial_derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("partial_derivative: bad index");
    if (degree_ == 0) throw std::invalid_argument("partial_derivative: degree 0");
    IntegerForm r(nvars_, degree_ - 1);
    for (const auto& [m, c] : terms_) {
        unsigned e = m.e[static_cast<size_t>(var)];
        if (e == 0) continue;
        MultiIndex mm = m;
        mm.e[static_cast<size_t>(var)] = e - 1;
        r.add_term(mm, c * Int(e));
    }
    return r;
}

IntegerForm IntegerForm::operator+(const IntegerForm& o) const {
    if (nvars_ != o.nvars_ || degree_ != o.degree_)
        throw std::invalid_argument("form +: shape mismatch");
    IntegerForm r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

IntegerForm IntegerForm::operator-(const IntegerForm& o) const {
    if (nvars_ != o.nvars_ || degree_ != o.degree_)
        throw std::invalid_argument("form -: shape mismatch");
    IntegerForm r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

IntegerForm IntegerForm::operator-() const {
    IntegerForm r(nvars_, degree_);
    for (const auto& [m, c] : terms_) r.add_term(m, -c);
    return r;
}

IntegerForm IntegerForm::operator*(const IntegerForm& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("form *: nvars mismatch");
    IntegerForm r(nvars_, degree_ + o.degree_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            MultiIndex m;
            for (size_t i = 0; i < 3; ++i) m.e[i] = m1.e[i] + m2.e[i];
            r.add_term(m, c1 * c2);
        }
    return r;
}

IntegerForm IntegerForm::mul_scalar(const Int& s) const {
    IntegerForm r(nvars_, degree_);
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
}

IntegerForm IntegerForm::substitute_linear(const std::array<std::array<Int, 3>, 3>& U) const {
    if (nvars_ != 3) throw std::invalid_argument("substitute_linear: ternary only");
    // each variable maps to the linear form given by the matrix row
    std::array<IntegerForm, 3> lin = {IntegerForm(3, 1), IntegerForm(3, 1), IntegerForm(3, 1)};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            MultiIndex m;
            m.e[j] = 1;
            lin[i].add_term(m, U[i][j]);
        }
    IntegerForm acc(3, degree_);
    for (const auto& [m, c] : terms_) {
        if (m.total() == 0) {
            acc.add_term(m, c);
            continue;
        }
        IntegerForm t(3, 1);
        bool first = true;
        for (size_t v = 0; v < 3; ++v) {
            for (unsigned e = 0; e < m.e[v]; ++e) {
                if (first) {
                    t = lin[v];
                    first = false;
                } else {
                    t = t * lin[v];
                }
            }
        }
        acc = acc + t.mul_scalar(c);
    }
    return acc;
}

Int IntegerForm::content() const {
    Int g = 0;
    for (const auto& [m, c] : terms_) g = gcd_int(g, abs_int(c));
    return g;
}

IntegerForm IntegerForm::primitive_part() const {
    Int g = content();
    if (g == 0 || g == 1) return *this;
    IntegerForm r(nvars_, degree_);
    for (const auto& [m, c] : terms_) r.add_term(m, c / g);
    return r;
}

std::string IntegerForm::to_string() const {
    if (terms_.empty()) return "0";
    static const char* names = "xyz";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Int a = c;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        a = abs_int(a);
        bool unit = (a == 1) && m.total() > 0;
        if (!unit) os << a.str();
        for (size_t v = 0; v < 3; ++v) {
            if (m.e[v] == 0) continue;
            os << names[v];
            if (m.e[v] > 1) os << "^" << m.e[v];
        }
    }
    return os.str();
}

IntegerForm hessian_form(const IntegerForm& F) {
    if (F.nvars() != 3) throw std::invalid_argument("hessian_form: ternary only");
    if (F.degree() < 2) throw std::invalid_argument("hessian_form: degree >= 2 required");
    std::array<std::array<IntegerForm, 3>, 3> h{{
        {IntegerForm(3, 1), IntegerForm(3, 1), IntegerForm(3, 1)},
        {IntegerForm(3, 1), IntegerForm(3, 1), IntegerForm(3, 1)},
        {IntegerForm(3, 1), IntegerForm(3, 1), IntegerForm(3, 1)},
    }};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            IntegerForm d = F.partial_derivative(i).partial_derivative(j);
            h[static_cast<size_t>(i)][static_cast<size_t>(j)] = d;
            h[static_cast<size_t>(j)][static_cast<size_t>(i)] = d;
        }
    IntegerForm det =
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
        h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
        h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    return det;
}

bool euler_identity_holds(const IntegerForm& F) {
    if (F.degree() < 2) return true;
    IntegerForm acc(F.nvars(), F.degree());
    for (int v = 0; v < F.nvars(); ++v) {
        IntegerForm d = F.partial_derivative(v);
        IntegerForm xv(F.nvars(), 1);
        MultiIndex m;
        m.e[static_cast<size_t>(v)] = 1;
        xv.add_term(m, 1);
        acc = acc + xv * d;
    }
    return acc == F.mul_scalar(Int(F.degree()));
}

BPoly dehomogenize(const IntegerForm& F, int var) {
    if (F.nvars() != 3) throw std::invalid_argument("dehomogenize: ternary only");
    if (var < 0 || var > 2) throw std::invalid_argument("dehomogenize: bad variable");
    int v0 = -1, v1 = -1; // remaining variables, in order
    for (int v = 0; v < 3; ++v) {
        if (v == var) continue;
        if (v0 < 0) v0 = v; else v1 = v;
    }
    // polynomial in 'v1' with Z['v0'] coefficients
    std::vector<IPoly> coeffs;
    for (const auto& [m, c] : F.terms()) {
        unsigned dy = m.e[static_cast<size_t>(v1)];
        unsigned dx = m.e[static_cast<size_t>(v0)];
        if (coeffs.size() <= dy) coeffs.resize(dy + 1);
        IPoly& cp = coeffs[dy];
        std::vector<Int> cc(cp.coeffs());
        if (cc.size() <= dx) cc.resize(dx + 1, Int(0));
        cc[dx] += c;
        cp = IPoly(std::move(cc));
    }
    return BPoly(std::move(coeffs));
}

IntegerForm homogenize(const BPoly& g, int var, unsigned degree) {
    int v0 = -1, v1 = -1;
    for (int v = 0; v < 3; ++v) {
        if (v == var) continue;
        if (v0 < 0) v0 = v; else v1 = v;
    }
    IntegerForm F(3, degree);
    for (int j = 0; j <= g.deg(); ++j) {
        const IPoly& cj = g[j];
        for (int i = 0; i <= cj.deg(); ++i) {
            if (cj[i] == 0) continue;
            unsigned tot = static_cast<unsigned>(i + j);
            if (tot > degree) throw std::invalid_argument("homogenize: degree too small");
            MultiIndex m;
            m.e[static_cast<size_t>(v0)] = static_cast<unsigned>(i);
            m.e[static_cast<size_t>(v1)] = static_cast<unsigned>(j);
            m.e[static_cast<size_t>(var)] = degree - tot;
            F.add_term(m, cj[i]);
        }
    }
    return F;
}

// ---------------------------------------------------------------------------
// singularity scan

namespace {

// gradient at an integer point
std::array<Int, 3> gradient_at(const IntegerForm& F, const std::array<Int, 3>& p) {
    std::array<Int, 3> g;
    std::array<Int, 3> pt = p;
    for (int v = 0; v < 3; ++v)
        g[static_cast<size_t>(v)] =
            F.partial_derivative(v).evaluate(std::span<const Int>(pt.data(), 3));
    return g;
}

bool gradient_vanishes(const IntegerForm& F, const std::array<Int, 3>& p) {
    auto g = gradient_at(F, p);
    return g[0] == 0 && g[1] == 0 && g[2] == 0;
}

std::optional<std::array<Int, 3>> rational_witness_search(const IntegerForm& F, int H) {
    // canonical candidate order per coordinate: 0, 1, -1, 2, -2, ...
    std::vector<int> vals;
    vals.push_back(0);
    for (int v = 1; v <= H; ++v) {
        vals.push_back(v);
        vals.push_back(-v);
    }
    for (int h = 1; h <= H; ++h)
        for (int a : vals)
            for (int b : vals)
                for (int c : vals) {
                    if (std::max({std::abs(a), std::abs(b), std::abs(c)}) != h) continue;
                    Int x = a, y = b, z = c;
                    if (!is_primitive(x, y, z)) continue;
                    if (gradient_vanishes(F, {x, y, z})) return std::array<Int, 3>{x, y, z};
                }
    return std::nullopt;
}

// Certified "no common complex zero" test for up to three bivariate
// polynomials: gcd of all pairwise resultants and of the univariate members
// must be a nonzero constant. Sound: any common zero's x-coordinate is a
// root of every member of the collection.
bool chart_certified_empty(std::vector<BPoly> sys) {
    std::vector<BPoly> nonzero;
    for (auto& p : sys)
        if (!p.is_zero()) nonzero.push_back(p);
    if (nonzero.empty()) return false;
    for (const auto& p : nonzero)
        if (p.deg() == 0 && p[0].deg() == 0) return true; // a nonzero constant member
    std::vector<IPoly> xpolys; // members of the candidate x-coordinate collection
    std::vector<const BPoly*> ypos;
    for (const auto& p : nonzero) {
        if (p.deg() == 0) xpolys.push_back(p[0]);
        else ypos.push_back(&p);
    }
    for (size_t i = 0; i < ypos.size(); ++i)
        for (size_t j = i + 1; j < ypos.size(); ++j) {
            IPoly r = poly_resultant(*ypos[i], *ypos[j]);
            xpolys.push_back(r);
        }
    if (xpolys.empty()) return false; // a single bivariate equation always has zeros
    IPoly g;
    for (const auto& p : xpolys) g = poly_gcd(g, p);
    return g.deg() == 0 && !g.is_zero();
}

} // namespace

SingularityReport singularity_scan(const IntegerForm& F, int budget) {
    if (F.nvars() != 3) throw std::invalid_argument("singularity_scan: ternary only");
    if (F.is_zero()) return {SingularityVerdict::singular_with_witness, {{Int(1), Int(0), Int(0)}}, "zero form"};
    if (F.degree() == 1) return {SingularityVerdict::nonsingular_certified, std::nullopt, "linear form"};

    // quadratic: determinant of the integer matrix of the associated bilinear form
    if (F.degree() == 2) {
        std::array<std::array<Int, 3>, 3> M{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                MultiIndex m;
                m.e[static_cast<size_t>(i)] += 1;
                m.e[static_cast<size_t>(j)] += 1;
                Int c = F.coeff(m);
                M[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i == j) ? 2 * c : c;
            }
        Int det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                  M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                  M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
        if (det != 0)
            return {SingularityVerdict::nonsingular_certified, std::nullopt, "nonzero quadratic discriminant"};
        auto w = rational_witness_search(F, 20);
        if (w) return {SingularityVerdict::singular_with_witness, w, "gradient kernel point"};
        return {SingularityVerdict::inconclusive, std::nullopt, "singular quadratic, no small rational witness"};
    }

    // small rational witness search first
    if (auto w = rational_witness_search(F, 3))
        return {SingularityVerdict::singular_with_witness, w, "small projective point"};

    // budget-limited sequence of unimodular coordinate changes; certification
    // requires both the affine chart z = 1 and the line z = 0 to be empty of
    // gradient zeros in the transformed frame
    std::array<std::array<Int, 3>, 3> id{{{Int(1), Int(0), Int(0)},
                                          {Int(0), Int(1), Int(0)},
                                          {Int(0), Int(0), Int(1)}}};
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::array<std::array<Int, 3>, 3> U = id;
        if (attempt > 0) {
            // deterministic shear family mixing all coordinates
            Int a = attempt, b = (attempt % 3) + 1, c = ((attempt * 2) % 5) + 1;
            U = {{{Int(1), a, b}, {Int(0), Int(1), c}, {Int(0), Int(0), Int(1)}}};
            // alternate with a lower-triangular factor for odd attempts
            if (attempt % 2 == 1) {
                std::array<std::array<Int, 3>, 3> L{{{Int(1), Int(0), Int(0)},
                                                     {a, Int(1), Int(0)},
                                                     {b, c, Int(1)}}};
                // U := U * L
                std::array<std::array<Int, 3>, 3> P{};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        Int s = 0;
                        for (int t = 0; t < 3; ++t)
                            s += U[static_cast<size_t>(i)][static_cast<size_t>(t)] *
                                 L[static_cast<size_t>(t)][static_cast<size_t>(j)];
                        P[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
                    }
                U = P;
            }
        }
        IntegerForm G = (attempt == 0) ? F : F.substitute_linear(U);

        // gradient components in the transformed frame
        std::array<IntegerForm, 3> grad = {G.partial_derivative(0), G.partial_derivative(1),
                                           G.partial_derivative(2)};

        // line at infinity z = 0: binary forms grad_i(x, y, 0)
        bool infinity_empty = true;
        {
            std::vector<IPoly> uni; // dehomogenized at y = 1
            bool all_zero = true;
            bool any_nonconst_missing = false;
            std::array<bool, 3> vanishes_at_10{};
            for (int i = 0; i < 3; ++i) {
                // p_i(x) = grad_i(x, 1, 0)
                IPoly p;
                for (const auto& [m, c] : grad[static_cast<size_t>(i)].terms()) {
                    if (m.e[2] != 0) continue;
                    std::vector<Int> cc(p.coeffs());
                    if (cc.size() <= m.e[0]) cc.resize(m.e[0] + 1, Int(0));
                    cc[m.e[0]] += c;
                    p = IPoly(std::move(cc));
                }
                // value at the point (1 : 0): the x^(deg) coefficient of the
                // restricted binary form, i.e. the monomial x^d z^0 y^0
                MultiIndex mx;
                mx.e[0] = grad[static_cast<size_t>(i)].degree();
                vanishes_at_10[static_cast<size_t>(i)] = (grad[static_cast<size_t>(i)].coeff(mx) == 0);
                if (!p.is_zero()) all_zero = false;
                uni.push_back(p);
                (void)any_nonconst_missing;
            }
            if (all_zero) {
                // the whole z = 0 line of the transformed frame consists of
                // gradient zeros of G; map one back through U
                if (gradient_vanishes(G, {Int(0), Int(1), Int(0)})) {
                    std::array<Int, 3> w = {U[0][1], U[1][1], U[2][1]};
                    Int g = gcd3(w[0], w[1], w[2]);
                    if (g > 1)
                        for (auto& v : w) v /= g;
                    return {SingularityVerdict::singular_with_witness, w,
                            "gradient vanishes on a line"};
                }
                infinity_empty = false;
            } else {
                IPoly g;
                for (const auto& p : uni) g = poly_gcd(g, p);
                if (!(g.deg() == 0 && !g.is_zero())) infinity_empty = false;
                if (vanishes_at_10[0] && vanishes_at_10[1] && vanishes_at_10[2]) infinity_empty = false;
            }
        }

        // affine chart z = 1
        bool affine_empty = chart_certified_empty(
            {dehomogenize(grad[0], 2), dehomogenize(grad[1], 2), dehomogenize(grad[2], 2)});

        if (infinity_empty && affine_empty)
            return {SingularityVerdict::nonsingular_certified, std::nullopt,
                    attempt == 0 ? "resultant elimination" : "resultant elimination (sheared frame)"};
    }

    if (auto w = rational_witness_search(F, 8))
        return {SingularityVerdict::singular_with_witness, w, "projective point search"};
    return {SingularityVerdict::inconclusive, std::nullopt, "budget exhausted"};
}

// ---------------------------------------------------------------------------
// JSON serialization

std::string form_to_json(const IntegerForm& F) {
    nlohmann::ordered_json j;
    j["nvars"] = F.nvars();
    j["degree"] = F.degree();
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : F.terms()) {
        nlohmann::ordered_json t;
        std::vector<unsigned> e(m.e.begin(), m.e.begin() + F.nvars());
        t["e"] = e;
        t["c"] = c.str();
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j.dump();
}

IntegerForm form_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int nvars = j.at("nvars").get<int>();
    unsigned degree = j.at("degree").get<unsigned>();
    IntegerForm F(nvars, degree);
    for (const auto& t : j.at("terms")) {
        MultiIndex m;
        auto e = t.at("e").get<std::vector<unsigned>>();
        if (static_cast<int>(e.size()) != nvars)
            throw std::invalid_argument("form_from_json: exponent arity mismatch");
        for (size_t i = 0; i < e.size(); ++i) m.e[i] = e[i];
        Int c(t.at("c").get<std::string>());
        F.add_term(m, c);
    }
    return F;
}

IntegerForm fixture_form(const std::string& name) {
    auto mk = [](std::initializer_list<std::pair<std::array<unsigned, 3>, long>> ts,
                 unsigned deg) {
        IntegerForm F(3, deg);
        for (auto& [e, c] : ts) {
            MultiIndex m;
            m.e = e;
            F.add_term(m, Int(c));
        }
        return F;
    };
    if (name == "F5") // x^5 + y^5 - z^5
        return mk({{{5, 0, 0}, 1}, {{0, 5, 0}, 1}, {{0, 0, 5}, -1}}, 5);
    if (name == "Qp") // x^2 + y^2 - z^2
        return mk({{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, -1}}, 2);
    if (name == "E3") // y^2 z - x^3 + x z^2
        return mk({{{0, 2, 1}, 1}, {{3, 0, 0}, -1}, {{1, 0, 2}, 1}}, 3);
    if (name == "G5") // x^5 + 2 y^5 - 3 z^5
        return mk({{{5, 0, 0}, 1}, {{0, 5, 0}, 2}, {{0, 0, 5}, -3}}, 5);
    if (name == "X5") // x^5 + y^5 + z^5 - 3 x y z^3
        return mk({{{5, 0, 0}, 1}, {{0, 5, 0}, 1}, {{0, 0, 5}, 1}, {{1, 1, 3}, -3}}, 5);
    throw std::invalid_argument("fixture_form: unknown fixture " + name);
}

} // namespace nearcurve
