#include "nearcurve/detmethod.hpp"

#include "nearcurve/interval.hpp"
#include "nearcurve/parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nearcurve {

namespace {

Int binomial(const Int& n, unsigned r) {
    if (n < 0) return 0;
    Int num = 1, den = 1;
    for (unsigned i = 0; i < r; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return num / den;
}

} // namespace

SimplexStats simplex_stats(const SimplexSpec& spec) {
    if (spec.m < 1 || spec.alpha < 1 || spec.nu < 1)
        throw std::invalid_argument("simplex_stats: need m >= 1, alpha >= 1, nu >= 1");
    unsigned m = static_cast<unsigned>(spec.m);
    SimplexStats st;
    // closed forms
    Int mfact = 1;
    for (unsigned i = 2; i <= m; ++i) mfact *= i;
    Int mm1fact = 1;
    for (unsigned i = 2; i + 1 <= m; ++i) mm1fact *= i;
    st.V = rat_pow(spec.nu, m) / (spec.alpha * Rat(mfact));
    st.C = rat_pow(spec.nu, m + 1) / (spec.alpha * Rat(m + 1) * Rat(mm1fact));

    // exact enumeration, sliced along the weighted coordinate:
    // for x_m = j, the remaining simplex is sum x_i <= nu - alpha j in m-1 vars,
    // with binom(floor(t)+m-1, m-1) points and coordinate-sum (m-1) binom(floor(t)+m-1, m)
    st.Sigma = 0;
    st.Phi = 0;
    for (Int j = 0; Rat(j) * spec.alpha <= spec.nu; ++j) {
        Rat t = spec.nu - spec.alpha * Rat(j);
        Int ft = floor_rat(t);
        if (m == 1) {
            st.Sigma += 1;
            st.Phi += spec.alpha * Rat(j);
            continue;
        }
        Int cnt = binomial(ft + Int(m - 1), m - 1);
        Int ssum = Int(m - 1) * binomial(ft + Int(m - 1), m);
        st.Sigma += cnt;
        st.Phi += Rat(ssum) + spec.alpha * Rat(j) * Rat(cnt);
    }
    return st;
}

double theta_general(int n, unsigned k, double gamma) {
    if (n < 3) throw std::invalid_argument("theta_general: n >= 3 required");
    double nn = n;
    return (nn - 2) * std::pow(nn / (nn - 1), (nn - 1) / (nn - 2)) *
           std::pow(static_cast<double>(k) - gamma, -1.0 / (nn - 2));
}

std::pair<double, std::optional<Rat>> alpha_from(const Int& M0M, const Int& B, unsigned k,
                                                 const Rat& gamma) {
    if (M0M < 2 || B < 2) throw std::invalid_argument("alpha_from: need M0M, B >= 2");
    Rat tau = Rat(k) - gamma;
    // alpha = (tau log B - k log 2) / log(M0M)
    double a = (to_double(tau) * std::log(to_double(B)) - k * std::log(2.0)) /
               std::log(to_double(M0M));
    long eb = 0, em = 0;
    if (log2_exact(B, eb) && log2_exact(M0M, em)) {
        Rat exact = (tau * Rat(eb) - Rat(k)) / Rat(em);
        return {to_double(exact), exact};
    }
    return {a, std::nullopt};
}

DMParameters dm_parameters(int n, unsigned k, const Rat& gamma, const Int& B, const Int& M0,
                           int Dmax) {
    if (n != 3)
        throw std::invalid_argument("dm_parameters: the artifact instantiates n = 3");
    // admissible range gamma in [0, k - n/(n-1))
    Rat limit = Rat(k) - Rat(n, n - 1);
    if (gamma < 0 || gamma >= limit)
        throw std::invalid_argument("dm_parameters: gamma outside [0, k - n/(n-1))");
    DMParameters p;
    p.n = n;
    p.k = k;
    p.gamma = gamma;
    Rat tau = Rat(k) - gamma;
    p.theta = Rat(9) / (4 * tau);
    p.theta_real = theta_general(n, k, to_double(gamma));
    // M window B^theta .. B^(theta+eps)
    double lb = std::pow(to_double(B), to_double(p.theta));
    p.M_lower = lb;
    p.M_upper = std::pow(to_double(B), to_double(p.theta) + 0.05);
    // chosen M: exact floor(B^theta), at least 1
    Int M = floor_pow(B, rat_num(p.theta), rat_den(p.theta));
    if (M < 1) M = 1;
    p.M = M;
    auto [a, ar] = alpha_from(M0 * M < 2 ? Int(2) : M0 * M, B < 2 ? Int(2) : B, k, gamma);
    p.alpha = a;
    if (ar) {
        p.alpha_exact = true;
        p.alpha_rat = *ar;
    }
    p.D = Dmax;
    p.s = binomial(Int(Dmax + n - 1), static_cast<unsigned>(n - 1));
    // M <= B^(k-gamma) / (2^k M0), compared exactly:
    // (M 2^k M0)^q <= B^p with tau = p/q
    Int lhs = M * pow_int(Int(2), k) * M0;
    Int pnum = rat_num(tau), pden = rat_den(tau);
    p.m_condition_ok =
        pow_int(lhs, static_cast<unsigned>(pden)) <= pow_int(B, static_cast<unsigned>(pnum));
    return p;
}

namespace {

int dominant_chart(const PrimitiveTriple& t) {
    Int ax = abs_int(t.x), ay = abs_int(t.y), az = abs_int(t.z);
    if (az >= ax && az >= ay) return 2;
    if (ax >= ay) return 0;
    return 1;
}

// floor((a*M)/d) as an integer, exact for d != 0 of either sign
Int floor_div_scaled(const Int& a, const Int& M, const Int& d) {
    return floor_rat(make_rat(a * M, d));
}

RatInterval eval_form_interval(const IntegerForm& F, const RatInterval& X, const RatInterval& Y,
                               const RatInterval& Z) {
    RatInterval acc{Rat(0)};
    for (const auto& [m, c] : F.terms()) {
        RatInterval t{Rat(c)};
        for (unsigned i = 0; i < m.e[0]; ++i) t = t * X;
        for (unsigned i = 0; i < m.e[1]; ++i) t = t * Y;
        for (unsigned i = 0; i < m.e[2]; ++i) t = t * Z;
        acc = acc + t;
    }
    return acc;
}

} // namespace

BoxCover cover_boxes(const CountQuery& q, const Int& M, const Int& M0, const CountOptions& opt) {
    if (M < 1 || M0 < 1) throw std::invalid_argument("cover_boxes: M, M0 >= 1");
    auto sols = enumerate_solutions(q, opt);
    BoxCover cover;
    cover.M = M;
    cover.M0 = M0;
    std::map<std::tuple<int, Int, Int>, std::vector<PrimitiveTriple>> bins;
    for (const auto& s : sols) {
        int ch = dominant_chart(s);
        Int d = ch == 0 ? s.x : (ch == 1 ? s.y : s.z);
        Int a = ch == 0 ? s.y : s.x;
        Int b = ch == 2 ? s.y : s.z;
        Int v = floor_div_scaled(a, M, d);
        Int w = floor_div_scaled(b, M, d);
        bins[{ch, v, w}].push_back(s);
    }
    for (auto& [key, pts] : bins) {
        Box bx;
        bx.chart = std::get<0>(key);
        bx.v = std::get<1>(key);
        bx.w = std::get<2>(key);
        bx.sols = std::move(pts);
        cover.boxes.push_back(std::move(bx));
    }
    return cover;
}

Int calibrate_m0(const CountQuery& q, const Int& M, const std::vector<PrimitiveTriple>& sols) {
    // affine partials per chart: for chart c the normalized point is
    // (a/d, b/d) and the relevant partials are those of the two free variables
    std::array<std::array<IntegerForm, 2>, 3> partials = {{
        {q.F.partial_derivative(1), q.F.partial_derivative(2)}, // chart x: vars y, z
        {q.F.partial_derivative(0), q.F.partial_derivative(2)}, // chart y: vars x, z
        {q.F.partial_derivative(0), q.F.partial_derivative(1)}, // chart z: vars x, y
    }};
    for (Int M0 = 1; M0 <= Int(1) << 20; M0 <<= 1) {
        Int MM = M0 * M;
        std::map<std::tuple<int, Int, Int>, bool> seen;
        bool ok = true;
        for (const auto& s : sols) {
            int ch = dominant_chart(s);
            Int d = ch == 0 ? s.x : (ch == 1 ? s.y : s.z);
            Int a = ch == 0 ? s.y : s.x;
            Int b = ch == 2 ? s.y : s.z;
            Int v = floor_div_scaled(a, MM, d);
            Int w = floor_div_scaled(b, MM, d);
            auto key = std::make_tuple(ch, v, w);
            if (seen.count(key)) continue;
            RatInterval X{Rat(v, MM), Rat(v + 1, MM)};
            RatInterval Y{Rat(w, MM), Rat(w + 1, MM)};
            RatInterval one{Rat(1)};
            // assemble the full 3d interval point in original coordinates
            RatInterval coords[3];
            if (ch == 0) {
                coords[0] = one, coords[1] = X, coords[2] = Y;
            } else if (ch == 1) {
                coords[0] = X, coords[1] = one, coords[2] = Y;
            } else {
                coords[0] = X, coords[1] = Y, coords[2] = one;
            }
            bool dominated = false;
            for (int i = 0; i < 2 && !dominated; ++i) {
                RatInterval val = eval_form_interval(partials[static_cast<size_t>(ch)][static_cast<size_t>(i)],
                                                     coords[0], coords[1], coords[2]);
                if (!val.contains_zero()) dominated = true;
            }
            seen[key] = dominated;
            if (!dominated) {
                ok = false;
                break;
            }
        }
        if (ok) return M0;
    }
    throw std::runtime_error("calibrate_m0: no M0 up to 2^20 certifies the single-sheet property");
}

namespace {

// monomials of degree D in three variables, graded-lex descending (x > y > z)
std::vector<MultiIndex> monomials_of_degree(int D) {
    std::vector<MultiIndex> out;
    for (int i = D; i >= 0; --i)
        for (int j = D - i; j >= 0; --j) {
            MultiIndex m;
            m.e = {static_cast<unsigned>(i), static_cast<unsigned>(j),
                   static_cast<unsigned>(D - i - j)};
            out.push_back(m);
        }
    return out;
}

} // namespace

IntegerForm AuxiliaryForm::as_form() const {
    auto mons = monomials_of_degree(D_used);
    IntegerForm F(3, static_cast<unsigned>(D_used));
    for (size_t i = 0; i < mons.size(); ++i) F.add_term(mons[i], coeffs[i]);
    return F;
}

std::optional<AuxiliaryForm> fit_auxiliary_form(const std::vector<PrimitiveTriple>& points, int D) {
    if (D < 1) throw std::invalid_argument("fit_auxiliary_form: D >= 1");
    auto mons = monomials_of_degree(D);
    size_t s = mons.size();
    size_t rows = points.size();
    // evaluation matrix over Q, eliminated by Gauss with exact rationals
    std::vector<std::vector<Rat>> Mx(rows, std::vector<Rat>(s, Rat(0)));
    for (size_t r = 0; r < rows; ++r)
        for (size_t cidx = 0; cidx < s; ++cidx) {
            const MultiIndex& m = mons[cidx];
            Int val = pow_int(points[r].x, m.e[0]) * pow_int(points[r].y, m.e[1]) *
                      pow_int(points[r].z, m.e[2]);
            Mx[r][cidx] = Rat(val);
        }
    std::vector<int> pivot_of_col(s, -1);
    size_t rank = 0;
    for (size_t c = 0; c < s && rank < rows; ++c) {
        size_t piv = rows;
        for (size_t r = rank; r < rows; ++r)
            if (Mx[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(Mx[rank], Mx[piv]);
        Rat inv = Rat(1) / Mx[rank][c];
        for (size_t j = c; j < s; ++j) Mx[rank][j] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || Mx[r][c] == 0) continue;
            Rat f = Mx[r][c];
            for (size_t j = c; j < s; ++j) Mx[r][j] -= f * Mx[rank][j];
        }
        pivot_of_col[c] = static_cast<int>(rank);
        ++rank;
    }
    if (rank >= s) return std::nullopt; // full column rank
    // first free column in graded-lex order
    size_t free_col = s;
    for (size_t c = 0; c < s; ++c)
        if (pivot_of_col[c] < 0) {
            free_col = c;
            break;
        }
    // kernel vector: v[free] = 1, pivot columns get -coefficient
    std::vector<Rat> v(s, Rat(0));
    v[free_col] = 1;
    for (size_t c = 0; c < s; ++c) {
        int pr = pivot_of_col[c];
        if (pr < 0) continue;
        v[c] = -Mx[static_cast<size_t>(pr)][free_col];
    }
    // clear denominators, divide content, sign-normalize
    Int den = 1;
    for (const auto& x : v) den = den / gcd_int(den, rat_den(x)) * rat_den(x);
    std::vector<Int> w(s);
    Int content = 0;
    for (size_t i = 0; i < s; ++i) {
        w[i] = rat_num(v[i]) * (den / rat_den(v[i]));
        content = gcd_int(content, abs_int(w[i]));
    }
    for (auto& x : w) x /= content;
    for (const auto& x : w) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : w) y = -y;
        break;
    }
    AuxiliaryForm af;
    af.D_used = D;
    af.coeffs = std::move(w);
    return af;
}

PipelineResult run_pipeline(const CountQuery& q, int Dmax, const CountOptions& opt) {
    PipelineResult out;
    out.params = dm_parameters(3, q.F.degree(), q.gamma, q.B, Int(1), Dmax);
    auto sols = enumerate_solutions(q, opt);
    out.total_solutions = sols.size();
    Int M0 = calibrate_m0(q, out.params.M, sols);
    out.M0 = M0;
    // recompute the M-condition with the calibrated M0
    {
        Rat tau = Rat(q.F.degree()) - q.gamma;
        Int lhs = out.params.M * pow_int(Int(2), q.F.degree()) * M0;
        out.params.m_condition_ok =
            pow_int(lhs, static_cast<unsigned>(to_i64(rat_den(tau)))) <=
            pow_int(q.B, static_cast<unsigned>(to_i64(rat_num(tau))));
    }
    BoxCover cover = cover_boxes(q, out.params.M, M0, opt);

    out.boxes.resize(cover.boxes.size());
    bool coverage = true;
    std::vector<char> box_ok(cover.boxes.size(), 1);
    parallel_for(cover.boxes.size(), opt.threads, [&](size_t bi) {
        const Box& bx = cover.boxes[bi];
        PipelineBox pb;
        pb.chart = bx.chart;
        pb.v = bx.v;
        pb.w = bx.w;
        pb.npoints = bx.sols.size();
        for (int D = 1; D <= Dmax; ++D) {
            auto af = fit_auxiliary_form(bx.sols, D);
            if (af) {
                pb.form = std::move(af);
                break;
            }
        }
        if (pb.form) {
            IntegerForm A = pb.form->as_form();
            for (const auto& s : bx.sols) {
                std::array<Int, 3> p = {s.x, s.y, s.z};
                if (A.evaluate(std::span<const Int>(p.data(), 3)) != 0) {
                    box_ok[bi] = 0;
                    break;
                }
            }
        }
        out.boxes[bi] = std::move(pb);
    });
    for (size_t bi = 0; bi < out.boxes.size(); ++bi) {
        const auto& pb = out.boxes[bi];
        if (!pb.form) {
            out.uncovered += 1;
            coverage = false;
            continue;
        }
        if (!box_ok[bi]) coverage = false;
        if (pb.form->D_used == 1) out.deg1 += 1;
        else if (pb.form->D_used == 2) out.deg2 += 1;
        else out.deg3plus += 1;
    }
    out.coverage_ok = coverage;
    return out;
}

std::string pipeline_to_json(const PipelineResult& r) {
    nlohmann::ordered_json j;
    j["n"] = r.params.n;
    j["k"] = r.params.k;
    j["gamma"] = to_double(r.params.gamma);
    j["theta_num"] = rat_num(r.params.theta).str();
    j["theta_den"] = rat_den(r.params.theta).str();
    j["alpha"] = r.params.alpha;
    j["M"] = r.params.M.str();
    j["M0"] = r.M0.str();
    j["D_max"] = r.params.D;
    j["s"] = r.params.s.str();
    j["m_condition_ok"] = r.params.m_condition_ok;
    j["total_solutions"] = r.total_solutions;
    nlohmann::ordered_json boxes = nlohmann::ordered_json::array();
    for (const auto& b : r.boxes) {
        nlohmann::ordered_json jb;
        jb["chart"] = b.chart;
        jb["v"] = b.v.str();
        jb["w"] = b.w.str();
        jb["npoints"] = b.npoints;
        if (b.form) {
            jb["D_used"] = b.form->D_used;
            nlohmann::ordered_json cs = nlohmann::ordered_json::array();
            for (const auto& c : b.form->coeffs) cs.push_back(c.str());
            jb["coeffs"] = cs;
        } else {
            jb["D_used"] = nullptr;
        }
        boxes.push_back(jb);
    }
    j["boxes"] = boxes;
    j["classification"] = {{"deg1", r.deg1.str()},
                           {"deg2", r.deg2.str()},
                           {"deg3plus", r.deg3plus.str()},
                           {"uncovered", r.uncovered.str()}};
    j["coverage_ok"] = r.coverage_ok;
    return j.dump(2);
}

} // namespace nearcurve
