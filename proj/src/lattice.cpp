#include "nearcurve/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nearcurve {

namespace {

using Vec3 = std::array<Rat, 3>;

Rat det3(const std::array<std::array<Rat, 3>, 3>& m, int rank) {
    if (rank == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Rat dot(const Vec3& a, const Vec3& b, int rank) {
    Rat s = 0;
    for (int i = 0; i < rank; ++i) s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
    return s;
}

Rat sup_norm(const Vec3& v, int rank) {
    Rat m = 0;
    for (int i = 0; i < rank; ++i) m = std::max(m, rat_abs(v[static_cast<size_t>(i)]));
    return m;
}

// Exact LLL (delta = 3/4) on rational basis rows; pre-conditioner only.
void lll_reduce(std::array<Vec3, 3>& b, int rank) {
    auto gso = [&](std::array<Vec3, 3>& star, std::array<std::array<Rat, 3>, 3>& mu) {
        for (int i = 0; i < rank; ++i) {
            star[static_cast<size_t>(i)] = b[static_cast<size_t>(i)];
            for (int j = 0; j < i; ++j) {
                Rat denom = dot(star[static_cast<size_t>(j)], star[static_cast<size_t>(j)], rank);
                mu[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    denom == 0 ? Rat(0) : dot(b[static_cast<size_t>(i)], star[static_cast<size_t>(j)], rank) / denom;
                for (int t = 0; t < rank; ++t)
                    star[static_cast<size_t>(i)][static_cast<size_t>(t)] -=
                        mu[static_cast<size_t>(i)][static_cast<size_t>(j)] * star[static_cast<size_t>(j)][static_cast<size_t>(t)];
            }
        }
    };
    std::array<Vec3, 3> star{};
    std::array<std::array<Rat, 3>, 3> mu{};
    gso(star, mu);
    int kdx = 1;
    int guard = 0;
    while (kdx < rank && guard++ < 10000) {
        for (int j = kdx - 1; j >= 0; --j) {
            Rat m = mu[static_cast<size_t>(kdx)][static_cast<size_t>(j)];
            Int r = floor_rat(m + Rat(1, 2));
            if (r != 0)
                for (int t = 0; t < rank; ++t)
                    b[static_cast<size_t>(kdx)][static_cast<size_t>(t)] -=
                        Rat(r) * b[static_cast<size_t>(j)][static_cast<size_t>(t)];
            gso(star, mu);
        }
        Rat lhs = dot(star[static_cast<size_t>(kdx)], star[static_cast<size_t>(kdx)], rank);
        Rat prev = dot(star[static_cast<size_t>(kdx - 1)], star[static_cast<size_t>(kdx - 1)], rank);
        Rat m = mu[static_cast<size_t>(kdx)][static_cast<size_t>(kdx - 1)];
        if (lhs >= (Rat(3, 4) - m * m) * prev) {
            ++kdx;
        } else {
            std::swap(b[static_cast<size_t>(kdx)], b[static_cast<size_t>(kdx - 1)]);
            gso(star, mu);
            kdx = std::max(1, kdx - 1);
        }
    }
}

struct EnumVec {
    Vec3 v;
    Rat norm;
    std::array<Int, 3> coeff;
};

// All nonzero lattice vectors with sup-norm <= R (up to sign: one of +-v).
std::vector<EnumVec> enumerate_ball(const std::array<Vec3, 3>& b, int rank, const Rat& R) {
    // coefficient bounds via the inverse basis: c = x B^{-1},
    // |c_i| <= R * sum_j |inv_{j i}|
    std::array<std::array<Rat, 3>, 3> m{};
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = b[static_cast<size_t>(i)][static_cast<size_t>(j)];
    Rat d = det3(m, rank);
    if (d == 0) throw std::invalid_argument("enumerate_ball: singular basis");
    std::array<std::array<Rat, 3>, 3> inv{};
    if (rank == 2) {
        inv[0][0] = m[1][1] / d;
        inv[0][1] = -m[0][1] / d;
        inv[1][0] = -m[1][0] / d;
        inv[1][1] = m[0][0] / d;
    } else {
        auto co = [&](int i, int j) {
            int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            if (i1 > i2) std::swap(i1, i2);
            if (j1 > j2) std::swap(j1, j2);
            return m[static_cast<size_t>(i1)][static_cast<size_t>(j1)] * m[static_cast<size_t>(i2)][static_cast<size_t>(j2)] -
                   m[static_cast<size_t>(i1)][static_cast<size_t>(j2)] * m[static_cast<size_t>(i2)][static_cast<size_t>(j1)];
        };
        // inv = adj^T / det with sign pattern
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Rat c = co(j, i);
                if ((i + j) % 2 == 1) c = -c;
                inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = c / d;
            }
    }
    std::array<Int, 3> bound{};
    for (int i = 0; i < rank; ++i) {
        Rat s = 0;
        for (int j = 0; j < rank; ++j) s += rat_abs(inv[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        bound[static_cast<size_t>(i)] = floor_rat(R * s);
    }
    std::vector<EnumVec> out;
    std::array<Int, 3> c{};
    auto push = [&]() {
        Vec3 v{Rat(0), Rat(0), Rat(0)};
        for (int i = 0; i < rank; ++i)
            for (int t = 0; t < rank; ++t)
                v[static_cast<size_t>(t)] += Rat(c[static_cast<size_t>(i)]) * b[static_cast<size_t>(i)][static_cast<size_t>(t)];
        Rat n = sup_norm(v, rank);
        if (n > 0 && n <= R) out.push_back({v, n, c});
    };
    for (Int c0 = 0; c0 <= bound[0]; ++c0)
        for (Int c1 = -bound[1]; c1 <= bound[1]; ++c1) {
            if (rank == 2) {
                if (c0 == 0 && c1 < 0) continue; // dedup +-v
                c = {c0, c1, Int(0)};
                push();
                continue;
            }
            for (Int c2 = -bound[2]; c2 <= bound[2]; ++c2) {
                if (c0 == 0 && (c1 < 0 || (c1 == 0 && c2 < 0))) continue;
                c = {c0, c1, c2};
                push();
            }
        }
    std::sort(out.begin(), out.end(), [rank](const EnumVec& a, const EnumVec& bb) {
        if (a.norm != bb.norm) return a.norm < bb.norm;
        for (int t = 0; t < rank; ++t)
            if (a.v[static_cast<size_t>(t)] != bb.v[static_cast<size_t>(t)])
                return a.v[static_cast<size_t>(t)] < bb.v[static_cast<size_t>(t)];
        return false;
    });
    return out;
}

bool independent(const std::vector<Vec3>& chosen, const Vec3& v, int rank) {
    // rank test over Q via determinant minors
    std::vector<Vec3> all = chosen;
    all.push_back(v);
    size_t r = all.size();
    if (r == 1) return true;
    if (r == 2) {
        for (int i = 0; i < rank; ++i)
            for (int j = i + 1; j < rank; ++j) {
                Rat d = all[0][static_cast<size_t>(i)] * all[1][static_cast<size_t>(j)] -
                        all[0][static_cast<size_t>(j)] * all[1][static_cast<size_t>(i)];
                if (d != 0) return true;
            }
        return false;
    }
    std::array<std::array<Rat, 3>, 3> m{};
    for (size_t i = 0; i < 3; ++i)
        for (int j = 0; j < rank; ++j) m[i][static_cast<size_t>(j)] = all[i][static_cast<size_t>(j)];
    return det3(m, 3) != 0;
}

} // namespace

Rat IntLattice::determinant() const {
    if (rank != 2 && rank != 3) throw std::invalid_argument("IntLattice: rank 2 or 3");
    return rat_abs(det3(basis, rank));
}

MinimaResult successive_minima(const IntLattice& L) {
    if (L.rank != 2 && L.rank != 3) throw std::invalid_argument("successive_minima: rank 2 or 3");
    if (L.determinant() == 0) throw std::invalid_argument("successive_minima: singular basis");
    int rank = L.rank;
    std::array<Vec3, 3> b{};
    for (int i = 0; i < rank; ++i) b[static_cast<size_t>(i)] = L.basis[static_cast<size_t>(i)];
    lll_reduce(b, rank);
    Rat R = 0;
    for (int i = 0; i < rank; ++i) R = std::max(R, sup_norm(b[static_cast<size_t>(i)], rank));
    auto ball = enumerate_ball(b, rank, R);

    MinimaResult res;
    std::vector<Vec3> chosen;
    for (const auto& ev : ball) {
        if (static_cast<int>(chosen.size()) == rank) break;
        if (!independent(chosen, ev.v, rank)) continue;
        chosen.push_back(ev.v);
        res.minima.push_back(ev.norm);
        res.vectors.push_back(ev.v);
    }
    if (static_cast<int>(chosen.size()) != rank)
        throw std::logic_error("successive_minima: enumeration radius too small");

    // minima-attaining basis: search among vectors of norms exactly the
    // minima for a unimodular triple/pair (exists in rank <= 3)
    Rat detL = L.determinant();
    std::vector<std::vector<const EnumVec*>> layers(static_cast<size_t>(rank));
    for (const auto& ev : ball)
        for (int i = 0; i < rank; ++i)
            if (ev.norm == res.minima[static_cast<size_t>(i)]) layers[static_cast<size_t>(i)].push_back(&ev);
    bool found = false;
    if (rank == 2) {
        for (auto* u : layers[0]) {
            for (auto* v : layers[1]) {
                std::array<std::array<Rat, 3>, 3> m{};
                m[0] = u->v;
                m[1] = v->v;
                if (rat_abs(det3(m, 2)) == detL) {
                    res.reduced_basis = {u->v, v->v};
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    } else {
        for (auto* u : layers[0]) {
            for (auto* v : layers[1]) {
                for (auto* w : layers[2]) {
                    std::array<std::array<Rat, 3>, 3> m{};
                    m[0] = u->v;
                    m[1] = v->v;
                    m[2] = w->v;
                    if (rat_abs(det3(m, 3)) == detL) {
                        res.reduced_basis = {u->v, v->v, w->v};
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
    }
    if (!found)
        throw std::logic_error("successive_minima: no minima-attaining basis found");
    return res;
}

std::pair<IntLattice, MinimaResult> gamma_minima(const Int& M, const Int& B, const Int& r_num,
                                                 const Int& s_num) {
    if (M < 1 || B < 1) throw std::invalid_argument("gamma_minima: M, B >= 1");
    IntLattice L;
    L.rank = 3;
    L.basis = {{{Rat(M, B), Rat(0), Rat(0)},
                {Rat(0), Rat(M, B), Rat(0)},
                {Rat(-r_num, B), Rat(-s_num, B), Rat(1, B)}}};
    MinimaResult mr = successive_minima(L);
    return {L, mr};
}

std::vector<HistogramRow> minima_histogram(const BoxCover& cover, const Int& B) {
    std::map<long, Int> buckets;
    for (const auto& bx : cover.boxes) {
        auto [L, mr] = gamma_minima(cover.M, B, bx.v, bx.w);
        (void)L;
        Rat inv = Rat(1) / mr.minima[0];
        // dyadic level: 2^e <= inv < 2^(e+1)
        Int n = rat_num(inv), d = rat_den(inv);
        long e = 0;
        while ((d << (e + 1)) <= n) ++e;
        while ((d << e) > n) --e;
        buckets[e] += 1;
    }
    std::vector<HistogramRow> rows;
    double Bd = to_double(B);
    for (auto& [e, c] : buckets) {
        double Ld = std::ldexp(1.0, static_cast<int>(e));
        rows.push_back({e, c, Bd * Bd * std::log(Bd + 2.0) / (Ld * Ld)});
    }
    return rows;
}

std::string histogram_csv(const std::vector<HistogramRow>& rows) {
    std::ostringstream os;
    os << "L_exponent,count,bound_value\n";
    for (const auto& r : rows)
        os << r.L_exponent << "," << r.count.str() << "," << r.bound_value << "\n";
    return os.str();
}

} // namespace nearcurve
