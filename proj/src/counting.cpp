#include "nearcurve/counting.hpp"

#include "nearcurve/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nearcurve {

namespace {

using i128 = __int128;

constexpr int kMaxDeg = 24;

i128 to_i128(const Int& v) {
    bool neg = v < 0;
    Int a = abs_int(v);
    i128 hi = static_cast<i128>(to_i64(a >> 63));
    i128 lo = static_cast<i128>(to_i64(a & ((Int(1) << 63) - 1)));
    i128 w = (hi << 63) | lo;
    return neg ? -w : w;
}

// ---------------------------------------------------------------------------
// generic exact engine (arbitrary precision)

struct UniEval {
    std::vector<Int> c;
    int d = -1;

    void init(std::vector<Int> coeffs) {
        c = std::move(coeffs);
        while (!c.empty() && c.back() == 0) c.pop_back();
        d = static_cast<int>(c.size()) - 1;
    }
    bool is_const() const { return d <= 0; }
    Int const_value() const { return d < 0 ? Int(0) : c[0]; }
    Int eval(const Int& z) const {
        Int acc = 0;
        for (int i = d; i >= 0; --i) acc = acc * z + c[static_cast<size_t>(i)];
        return acc;
    }
    int sign_minus(const Int& z, const Int& t) const { return sign_int(eval(z) - t); }
    int sign(const Int& z) const { return sign_int(eval(z)); }
    UniEval derivative() const {
        std::vector<Int> dc;
        for (int i = 1; i <= d; ++i) dc.push_back(c[static_cast<size_t>(i)] * i);
        UniEval r;
        r.init(std::move(dc));
        return r;
    }
};

template <class Pred>
Int bsearch_last_true(Int a, Int b, const Pred& pred) {
    if (!pred(a)) return a - 1;
    if (pred(b)) return b;
    while (b - a > 1) {
        Int m = a + ((b - a) >> 1);
        if (pred(m)) a = m; else b = m;
    }
    return a;
}

void segment_crossing(const UniEval& q, const Int& a, const Int& b, std::vector<Int>& out) {
    int sa = q.sign(a);
    if (sa == 0) {
        out.push_back(a - 1);
        return;
    }
    int sb = q.sign(b);
    if (sa == sb) return;
    Int f = bsearch_last_true(a, b, [&](const Int& z) { return q.sign(z) == sa; });
    out.push_back(f);
}

// Monotone-segment markers: p is weakly monotone on the real hull of every
// integer range (m_i, m_{i+1}]. Markers of deeper derivative levels are
// propagated upward, which covers sign changes hiding strictly between
// consecutive integers.
std::vector<Int> monotone_markers(const std::vector<UniEval>& lev, const Int& A, const Int& B) {
    std::vector<Int> markers;
    for (size_t L = lev.size(); L-- > 1;) {
        const UniEval& q = lev[L];
        std::vector<Int> next = markers;
        if (q.d >= 1) {
            std::vector<Int> ms;
            for (const Int& m : markers)
                if (m >= A - 1 && m < B) ms.push_back(m);
            std::sort(ms.begin(), ms.end());
            ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
            Int prev = A - 1;
            for (const Int& m : ms) {
                if (m >= prev + 1) segment_crossing(q, prev + 1, m, next);
                prev = m;
            }
            if (B >= prev + 1) segment_crossing(q, prev + 1, B, next);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        markers = std::move(next);
    }
    return markers;
}

ZSolution sublevel_integers(std::vector<Int> coeffs, const Int& T, const Int& zlo, const Int& zhi) {
    ZSolution sol;
    if (zlo > zhi) return sol;
    std::vector<UniEval> lev;
    {
        UniEval p;
        p.init(std::move(coeffs));
        lev.push_back(p);
        while (lev.back().d > 1) lev.push_back(lev.back().derivative());
    }
    const UniEval& p = lev[0];
    if (p.is_const()) {
        sol.all_z = abs_int(p.const_value()) <= T;
        if (sol.all_z) sol.intervals.push_back({zlo, zhi});
        return sol;
    }
    auto markers = monotone_markers(lev, zlo, zhi);
    Int mT = -T;

    std::vector<std::pair<Int, Int>> raw;
    auto handle_segment = [&](const Int& a, const Int& b) {
        if (a > b) return;
        Int va = p.eval(a), vb = p.eval(b);
        if (va == vb) {
            if (abs_int(va) <= T) raw.push_back({a, b});
            return;
        }
        auto le = [&](const Int& z) { return p.sign_minus(z, T) <= 0; };
        auto ge = [&](const Int& z) { return p.sign_minus(z, mT) >= 0; };
        if (va < vb) {
            if (!ge(b) || !le(a)) return;
            Int first = bsearch_last_true(a, b, [&](const Int& z) { return !ge(z); }) + 1;
            Int last = bsearch_last_true(a, b, le);
            if (first <= last) raw.push_back({first, last});
        } else {
            if (!le(b) || !ge(a)) return;
            Int first = bsearch_last_true(a, b, [&](const Int& z) { return !le(z); }) + 1;
            Int last = bsearch_last_true(a, b, ge);
            if (first <= last) raw.push_back({first, last});
        }
    };
    Int prev = zlo - 1;
    for (const Int& m : markers) {
        if (m < zlo - 1 || m >= zhi) continue;
        handle_segment(prev + 1, m);
        prev = m;
    }
    handle_segment(prev + 1, zhi);

    std::sort(raw.begin(), raw.end());
    for (auto& iv : raw) {
        if (!sol.intervals.empty() && iv.first <= sol.intervals.back().second + 1)
            sol.intervals.back().second = std::max(sol.intervals.back().second, iv.second);
        else
            sol.intervals.push_back(iv);
    }
    return sol;
}

std::vector<Int> univariate_coeffs(const IntegerForm& F, int var, const Int& u, const Int& v) {
    std::vector<Int> c(F.degree() + 1, Int(0));
    int o0 = -1, o1 = -1;
    for (int t = 0; t < 3; ++t) {
        if (t == var) continue;
        if (o0 < 0) o0 = t; else o1 = t;
    }
    std::array<std::vector<Int>, 2> pw;
    pw[0].resize(F.degree() + 1);
    pw[1].resize(F.degree() + 1);
    pw[0][0] = 1;
    pw[1][0] = 1;
    for (unsigned i = 1; i <= F.degree(); ++i) {
        pw[0][i] = pw[0][i - 1] * u;
        pw[1][i] = pw[1][i - 1] * v;
    }
    for (const auto& [m, cc] : F.terms())
        c[m.e[static_cast<size_t>(var)]] +=
            cc * pw[0][m.e[static_cast<size_t>(o0)]] * pw[1][m.e[static_cast<size_t>(o1)]];
    return c;
}

// ---------------------------------------------------------------------------
// certified int128 fast engine
//
// Valid when k^k * (sum |coeff|) * B^k and the threshold fit well inside the
// int128 range: then every Horner intermediate of p and of all derivatives,
// and every comparison against +-T, is exact.

struct FastTerm {
    int e0, e1, e2;
    long long c;
};

struct FastForm {
    unsigned k = 0;
    std::vector<FastTerm> terms;

    static std::optional<FastForm> make(const IntegerForm& F, const Int& B, const Int& T) {
        FastForm ff;
        ff.k = F.degree();
        if (ff.k > 12) return std::nullopt;
        Int csum = 0;
        for (const auto& [m, c] : F.terms()) {
            if (!fits_i64(c)) return std::nullopt;
            csum += abs_int(c);
            ff.terms.push_back({static_cast<int>(m.e[0]), static_cast<int>(m.e[1]),
                                static_cast<int>(m.e[2]), to_i64(c)});
        }
        Int bound = csum * pow_int(std::max(B, Int(1)), ff.k);
        for (unsigned i = 0; i < ff.k; ++i) bound *= ff.k; // derivative factor k^k
        static const Int lim = Int(1) << 120;
        if (bound >= lim || abs_int(T) >= lim) return std::nullopt;
        if (!fits_i64(B)) return std::nullopt;
        return ff;
    }
};

struct Chain128 {
    int nlev = 0;
    int deg[14];
    i128 c[14][14];

    void init(const i128* pc, int d) {
        while (d > 0 && pc[d] == 0) --d;
        nlev = 1;
        deg[0] = d;
        for (int i = 0; i <= d; ++i) c[0][i] = pc[i];
        while (deg[nlev - 1] > 1) {
            int L = nlev, dm = deg[L - 1];
            deg[L] = dm - 1;
            for (int i = 1; i <= dm; ++i) c[L][i - 1] = c[L - 1][i] * i;
            ++nlev;
        }
    }
    i128 eval(int L, long long z) const {
        i128 acc = 0;
        for (int i = deg[L]; i >= 0; --i) acc = acc * z + c[L][i];
        return acc;
    }
    int sign(int L, long long z) const {
        i128 v = eval(L, z);
        return v == 0 ? 0 : (v > 0 ? 1 : -1);
    }
};

template <class Pred>
long long bsearch_last_true64(long long a, long long b, const Pred& pred) {
    if (!pred(a)) return a - 1;
    if (pred(b)) return b;
    while (b - a > 1) {
        long long m = a + ((b - a) >> 1);
        if (pred(m)) a = m; else b = m;
    }
    return a;
}

struct Markers64 {
    long long v[96];
    int n = 0;
    void push(long long m) {
        if (n < 96) v[n++] = m;
    }
};

void segment_crossing128(const Chain128& ch, int L, long long a, long long b, Markers64& out) {
    int sa = ch.sign(L, a);
    if (sa == 0) {
        out.push(a - 1);
        return;
    }
    if (sa == ch.sign(L, b)) return;
    long long f = bsearch_last_true64(a, b, [&](long long z) { return ch.sign(L, z) == sa; });
    out.push(f);
}

int markers128(const Chain128& ch, long long A, long long B, long long* out) {
    Markers64 markers;
    for (int L = ch.nlev - 1; L >= 1; --L) {
        Markers64 next = markers;
        if (ch.deg[L] >= 1) {
            long long tmp[96];
            int nt = 0;
            for (int i = 0; i < markers.n; ++i)
                if (markers.v[i] >= A - 1 && markers.v[i] < B) tmp[nt++] = markers.v[i];
            std::sort(tmp, tmp + nt);
            nt = static_cast<int>(std::unique(tmp, tmp + nt) - tmp);
            long long prev = A - 1;
            for (int i = 0; i < nt; ++i) {
                if (tmp[i] >= prev + 1) segment_crossing128(ch, L, prev + 1, tmp[i], next);
                prev = tmp[i];
            }
            if (B >= prev + 1) segment_crossing128(ch, L, prev + 1, B, next);
        }
        std::sort(next.v, next.v + next.n);
        next.n = static_cast<int>(std::unique(next.v, next.v + next.n) - next.v);
        markers = next;
    }
    for (int i = 0; i < markers.n; ++i) out[i] = markers.v[i];
    return markers.n;
}

// Emits the integer sublevel intervals of p within [zlo, zhi]; returns false
// for the constant-in-z case with |const| <= T (caller treats it as all-z).
template <class Emit>
bool fast_sublevel(const i128* pc, int dmax, i128 T, long long zlo, long long zhi,
                   const Emit& emit) {
    Chain128 ch;
    ch.init(pc, dmax);
    if (ch.deg[0] <= 0) {
        i128 v = ch.deg[0] < 0 ? 0 : ch.c[0][0];
        if (v < 0) v = -v;
        return !(v <= T); // false => all-z
    }
    long long mk[96];
    int nm = markers128(ch, zlo, zhi, mk);
    auto handle = [&](long long a, long long b) {
        if (a > b) return;
        i128 va = ch.eval(0, a), vb = ch.eval(0, b);
        auto le = [&](long long z) { return ch.eval(0, z) <= T; };
        auto ge = [&](long long z) { return ch.eval(0, z) >= -T; };
        if (va == vb) {
            i128 av = va < 0 ? -va : va;
            if (av <= T) emit(a, b);
            return;
        }
        if (va < vb) {
            if (!ge(b) || !le(a)) return;
            long long first = bsearch_last_true64(a, b, [&](long long z) { return !ge(z); }) + 1;
            long long last = bsearch_last_true64(a, b, le);
            if (first <= last) emit(first, last);
        } else {
            if (!le(b) || !ge(a)) return;
            long long first = bsearch_last_true64(a, b, [&](long long z) { return !le(z); }) + 1;
            long long last = bsearch_last_true64(a, b, ge);
            if (first <= last) emit(first, last);
        }
    };
    long long prev = zlo - 1;
    for (int i = 0; i < nm; ++i) {
        if (mk[i] < zlo - 1 || mk[i] >= zhi) continue;
        handle(prev + 1, mk[i]);
        prev = mk[i];
    }
    handle(prev + 1, zhi);
    return true;
}

} // namespace

CountQuery::CountQuery(IntegerForm f, Int b, Rat g)
    : F(std::move(f)), B(std::move(b)), gamma(std::move(g)) {
    if (F.nvars() != 3) throw std::invalid_argument("CountQuery: ternary form required");
    if (B < 1) throw std::invalid_argument("CountQuery: B >= 1 required");
    if (gamma < 0 || gamma >= Rat(F.degree()))
        throw std::invalid_argument("CountQuery: gamma in [0, k) required");
}

Int CountQuery::threshold() const { return floor_pow(B, rat_num(gamma), rat_den(gamma)); }

ZSolution solve_z_range(const IntegerForm& F, const Int& x, const Int& y, const Int& bound,
                        const Int& zlo, const Int& zhi) {
    if (F.nvars() != 3) throw std::invalid_argument("solve_z_range: ternary form required");
    return sublevel_integers(univariate_coeffs(F, 2, x, y), bound, zlo, zhi);
}

std::string CountReport::csv_header() {
    return "form_id,B,gamma,tau,N,N_star,excluded_total,overlap,strategy,wall_ms";
}

namespace {
std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r).str();
    if (rat_den(r) != 1) os << "/" << rat_den(r).str();
    return os.str();
}
} // namespace

std::string CountReport::csv_row() const {
    std::ostringstream os;
    os << form_id << "," << B.str() << "," << rat_str(gamma) << "," << tau_text << ","
       << N.str() << "," << (N_star ? N_star->str() : "") << "," << excluded_total.str() << ","
       << overlap.str() << "," << strategy << "," << wall_ms;
    return os.str();
}

namespace {

struct ChunkResult {
    Int N = 0;
    Int excluded = 0;
    Int overlap = 0;
    std::map<std::string, Int> per_line;
    std::vector<PrimitiveTriple> sols;
};

// shared per-solution bookkeeping; point already passed annulus+primitivity
void record_solution(const IntegerForm& F, const Int& T, const Int& x, const Int& y, const Int& z,
                     const TangentExclusion* excl, bool keep_solutions, ChunkResult& res) {
    std::array<Int, 3> p = {x, y, z};
    if (abs_int(F.evaluate(std::span<const Int>(p.data(), 3))) > T)
        throw std::logic_error("enumeration produced a non-solution");
    res.N += 1;
    if (keep_solutions) res.sols.push_back({x, y, z});
    if (excl && excl->on_any_tangent(x, y, z)) {
        res.excluded += 1;
        auto lines = excl->lines_through(x, y, z);
        if (lines.empty()) {
            res.per_line["conjugate-pair"] += 1;
        } else {
            for (const auto& lab : lines) res.per_line[lab] += 1;
            res.overlap += Int(static_cast<long long>(lines.size()) - 1);
        }
    }
}

void enumerate_core(const IntegerForm& F, const Int& B, const Int& T, bool annulus,
                    const TangentExclusion* excl, const CountOptions& opt, bool keep_solutions,
                    std::vector<ChunkResult>& chunks, std::string& strategy) {
    Int nx = 2 * B + 1;
    size_t nchunks = static_cast<size_t>(to_i64(nx));
    chunks.assign(nchunks, {});
    auto ff = FastForm::make(F, B, T);
    strategy = ff ? "root-isolated" : "root-isolated-bigint";

    if (ff) {
        long long Bi = to_i64(B);
        i128 Ti = to_i128(T);
        unsigned k = ff->k;
        parallel_for(nchunks, opt.threads, [&, Bi, Ti, k](size_t ci) {
            long long x = static_cast<long long>(ci) - Bi;
            ChunkResult& res = chunks[ci];
            i128 xp[14], yp[14];
            xp[0] = 1;
            for (unsigned i = 1; i <= k; ++i) xp[i] = xp[i - 1] * x;
            for (long long y = -Bi; y <= Bi; ++y) {
                yp[0] = 1;
                for (unsigned i = 1; i <= k; ++i) yp[i] = yp[i - 1] * y;
                i128 zc[14] = {};
                for (const auto& t : ff->terms)
                    zc[t.e2] += static_cast<i128>(t.c) * xp[t.e0] * yp[t.e1];
                long long ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
                long long mxy = std::max(ax, ay);
                auto emit = [&](long long zl, long long zh) {
                    for (long long z = zl; z <= zh; ++z) {
                        long long az = z < 0 ? -z : z;
                        long long mx = std::max(mxy, az);
                        if (annulus && !(2 * mx > Bi)) continue;
                        long long g = std::gcd(std::gcd(ax, ay), az);
                        if (g != 1) continue;
                        record_solution(F, T, Int(x), Int(y), Int(z), excl, keep_solutions, res);
                    }
                };
                if (!fast_sublevel(zc, static_cast<int>(k), Ti, -Bi, Bi, emit)) {
                    // constant-in-z fiber with |value| <= T: every z qualifies
                    emit(-Bi, Bi);
                }
            }
        });
        return;
    }

    parallel_for(nchunks, opt.threads, [&](size_t ci) {
        Int x = Int(static_cast<long long>(ci)) - B;
        ChunkResult& res = chunks[ci];
        for (Int y = -B; y <= B; ++y) {
            ZSolution zs = solve_z_range(F, x, y, T, -B, B);
            for (const auto& [l, h] : zs.intervals) {
                for (Int z = l; z <= h; ++z) {
                    Int mx = std::max({abs_int(x), abs_int(y), abs_int(z)});
                    if (annulus && !(2 * mx > B)) continue;
                    if (!is_primitive(x, y, z)) continue;
                    record_solution(F, T, x, y, z, excl, keep_solutions, res);
                }
            }
        }
    });
}

} // namespace

CountReport count_gamma(const CountQuery& q, const TangentExclusion* excl, const CountOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    CountReport rep;
    rep.B = q.B;
    rep.gamma = q.gamma;
    rep.tau_text = rat_str(q.tau());

    if (!opt.skip_singularity_check) {
        auto s = singularity_scan(q.F);
        if (s.verdict == SingularityVerdict::nonsingular_certified) {
            rep.singularity_note = "certified";
        } else if (opt.singularity_override) {
            rep.singularity_note = "override";
        } else {
            throw std::invalid_argument("count_gamma: form not certified nonsingular; "
                                        "pass singularity_override to proceed");
        }
    } else {
        rep.singularity_note = "caller-certified";
    }

    Int T = q.threshold();
    std::vector<ChunkResult> chunks;
    if (opt.naive) {
        chunks.assign(1, {});
        ChunkResult& res = chunks[0];
        for (Int x = -q.B; x <= q.B; ++x)
            for (Int y = -q.B; y <= q.B; ++y)
                for (Int z = -q.B; z <= q.B; ++z) {
                    Int mx = std::max({abs_int(x), abs_int(y), abs_int(z)});
                    if (!(2 * mx > q.B)) continue;
                    if (!is_primitive(x, y, z)) continue;
                    std::array<Int, 3> p = {x, y, z};
                    if (abs_int(q.F.evaluate(std::span<const Int>(p.data(), 3))) > T) continue;
                    record_solution(q.F, T, x, y, z, excl, false, res);
                }
        rep.strategy = "naive";
    } else {
        enumerate_core(q.F, q.B, T, true, excl, opt, false, chunks, rep.strategy);
    }
    for (const auto& c : chunks) {
        rep.N += c.N;
        rep.excluded_total += c.excluded;
        rep.overlap += c.overlap;
        for (const auto& [lab, n] : c.per_line) rep.per_line[lab] += n;
    }
    if (excl) rep.N_star = rep.N - rep.excluded_total;
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rep;
}

Int count_on_curve(const IntegerForm& F, const Int& B, const CountOptions& opt) {
    std::vector<ChunkResult> chunks;
    std::string strategy;
    enumerate_core(F, B, Int(0), false, nullptr, opt, false, chunks, strategy);
    Int n = 0;
    for (const auto& c : chunks) n += c.N;
    return n;
}

std::vector<PrimitiveTriple> enumerate_solutions(const CountQuery& q, const CountOptions& opt) {
    std::vector<ChunkResult> chunks;
    std::string strategy;
    enumerate_core(q.F, q.B, q.threshold(), true, nullptr, opt, true, chunks, strategy);
    std::vector<PrimitiveTriple> out;
    for (auto& c : chunks)
        for (auto& s : c.sols) out.push_back(std::move(s));
    return out;
}

Int count_parallelepiped(const IntegerForm& H, const Rat& B1, const Rat& B2, const Rat& B3,
                         const Rat& a, const Rat& b, const Rat& c) {
    if (H.nvars() != 3) throw std::invalid_argument("count_parallelepiped: ternary form required");
    if (H.is_zero()) throw std::invalid_argument("count_parallelepiped: zero form");
    if (B1 < 0 || B2 < 0 || B3 < 0)
        throw std::invalid_argument("count_parallelepiped: negative box size");
    Int n = 0;
    Rat bz = b - c * a;
    for (Int z = ceil_rat(-B3); z <= floor_rat(B3); ++z) {
        Rat xc = a * Rat(z);
        for (Int x = ceil_rat(xc - B1); x <= floor_rat(xc + B1); ++x) {
            Rat yc = bz * Rat(z) + c * Rat(x);
            Int ylo = ceil_rat(yc - B2), yhi = floor_rat(yc + B2);
            if (ylo > yhi) continue;
            ZSolution ys = sublevel_integers(univariate_coeffs(H, 1, x, z), Int(0), ylo, yhi);
            for (const auto& [l, h] : ys.intervals)
                for (Int y = l; y <= h; ++y) {
                    if (!is_primitive(x, y, z)) continue;
                    std::array<Int, 3> p = {x, y, z};
                    if (H.evaluate(std::span<const Int>(p.data(), 3)) != 0)
                        throw std::logic_error("count_parallelepiped: non-zero accepted");
                    n += 1;
                }
        }
    }
    return n;
}

} // namespace nearcurve
