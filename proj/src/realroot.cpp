#include "nearcurve/realroot.hpp"

#include "nearcurve/interval.hpp"

#include <stdexcept>

namespace nearcurve {

namespace {

int sign_variations(const IPoly& p) {
    int v = 0, last = 0;
    for (int i = 0; i <= p.deg(); ++i) {
        int s = sign_int(p[i]);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// Sign variations of (1+x)^d q(1/(1+x)): bounds the number of roots of q in
// the open interval (0,1); exact for counts 0 and 1.
int descartes_01(const IPoly& q) {
    IPoly r = reverse_poly(q, q.deg());
    r = taylor_shift(r, 1);
    return sign_variations(r);
}

void isolate01(const IPoly& q, const Rat& base, const Rat& scale,
               std::vector<RootInterval>& out, int depth) {
    if (depth > 4096) throw std::runtime_error("root isolation: depth cap exceeded");
    int v = descartes_01(q);
    if (v == 0) return;
    if (v == 1) {
        out.push_back({base, base + scale});
        return;
    }
    int d = q.deg();
    // left half: q0(x) = 2^d q(x/2); right half: q1(x) = q0(x+1) = 2^d q((x+1)/2)
    std::vector<Int> c0(q.coeffs());
    for (int i = 0; i <= d; ++i) c0[static_cast<size_t>(i)] <<= (d - i);
    IPoly q0{std::move(c0)};
    IPoly q1 = taylor_shift(q0, 1);
    Rat half = scale / 2;
    if (sign_int(q1[0]) == 0) out.push_back({base + half, base + half});
    isolate01(q0, base, half, out, depth + 1);
    isolate01(q1, base + half, half, out, depth + 1);
}

// True iff the unique root of p inside the open interval (iv.lo, iv.hi) lies
// to the right of t. Requires p(t) != 0 and p(iv.hi) != 0.
bool root_right_of(const IPoly& p, const RootInterval& iv, const Rat& t) {
    return sign_at(p, t) * sign_at(p, iv.hi) < 0;
}

} // namespace

std::vector<RootInterval> isolate_real_roots(const IPoly& p_in) {
    if (p_in.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    IPoly p = p_in;
    std::vector<RootInterval> out;
    if (p.deg() == 0) return out;
    if (p[0] == 0) {
        std::vector<Int> c(p.coeffs().begin() + 1, p.coeffs().end());
        p = IPoly(std::move(c));
        out.push_back({Rat(0), Rat(0)});
        if (p.deg() == 0) return out;
    }
    Int maxc = 0;
    for (int i = 0; i < p.deg(); ++i) maxc = std::max(maxc, abs_int(p[i]));
    Int lcav = abs_int(p.lc());
    Int bound = 2;
    while (bound * lcav <= maxc + lcav) bound <<= 1;
    {
        IPoly q = scale_arg(p, bound);
        isolate01(q, Rat(0), Rat(bound), out, 0);
    }
    {
        IPoly q = scale_arg(p, -bound);
        std::vector<RootInterval> neg;
        isolate01(q, Rat(0), Rat(bound), neg, 0);
        for (auto& r : neg) out.push_back({-r.hi, -r.lo});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) {
        return a.lo < b.lo;
    });

    // An open interval's endpoint may coincide with an exact rational root of
    // p found at a subdivision point. Divide all exact roots out of p (the
    // zero root was already stripped); the quotient p_work is nonzero at every
    // endpoint and still has each interval root as its unique interior root,
    // which lets us shrink the offending endpoint with an exact sign bracket.
    IPoly p_work = p;
    for (const auto& r : out) {
        if (!r.exact() || r.lo == 0) continue;
        IPoly lin = IPoly::linear(-rat_num(r.lo), rat_den(r.lo));
        p_work = poly_exact_div(p_work, lin);
    }
    for (auto& r : out) {
        if (r.exact()) continue;
        if (sign_at(p_in, r.hi) == 0) {
            for (int j = 2;; ++j) {
                Rat t = r.hi - (r.hi - r.lo) / pow_int(2, static_cast<unsigned>(j));
                if (sign_at(p_in, t) == 0) { r = {t, t}; break; }
                if (sign_at(p_work, t) * sign_at(p_work, r.lo) < 0) { r.hi = t; break; }
            }
        }
        if (r.exact()) continue;
        if (sign_at(p_in, r.lo) == 0) {
            for (int j = 2;; ++j) {
                Rat t = r.lo + (r.hi - r.lo) / pow_int(2, static_cast<unsigned>(j));
                if (sign_at(p_in, t) == 0) { r = {t, t}; break; }
                if (sign_at(p_work, t) * sign_at(p_work, r.hi) < 0) { r.lo = t; break; }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) {
        return a.lo < b.lo;
    });
    return out;
}

std::vector<RootInterval> isolate_real_roots_in(const IPoly& p, const Rat& lo, const Rat& hi) {
    auto all = isolate_real_roots(p);
    std::vector<RootInterval> out;
    for (auto& r0 : all) {
        RootInterval q = r0;
        bool keep = false;
        while (true) {
            if (q.exact()) { keep = (q.lo >= lo && q.lo <= hi); break; }
            if (q.lo >= lo && q.hi <= hi) { keep = true; break; }
            if (q.hi <= lo || q.lo >= hi) { keep = false; break; }
            if (q.lo < lo && q.hi > lo) {
                if (sign_at(p, lo) == 0) { q = {lo, lo}; continue; }
                if (root_right_of(p, q, lo)) q.lo = lo; else q.hi = lo;
                continue;
            }
            if (q.lo < hi && q.hi > hi) {
                if (sign_at(p, hi) == 0) { q = {hi, hi}; continue; }
                if (root_right_of(p, q, hi)) q.lo = hi; else q.hi = hi;
                continue;
            }
            refine_root(p, q, q.width() / 4);
        }
        if (keep) out.push_back(q);
    }
    return out;
}

void refine_root(const IPoly& p, RootInterval& r, const Rat& width) {
    if (r.exact()) return;
    int slo = sign_at(p, r.lo);
    int shi = sign_at(p, r.hi);
    if (slo == 0 || shi == 0)
        throw std::logic_error("refine_root: endpoint is a root");
    while (r.width() > width) {
        Rat m = r.mid();
        int sm = sign_at(p, m);
        if (sm == 0) {
            r = {m, m};
            return;
        }
        if (sm == slo) r.lo = m; else r.hi = m;
    }
}

AlgebraicNumber::AlgebraicNumber(IPoly defining, RootInterval iv)
    : p_(std::move(defining)), iv_(std::move(iv)) {
    if (p_.is_zero()) throw std::invalid_argument("AlgebraicNumber: zero polynomial");
    if (p_.lc() < 0) p_ = -p_;
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rat& v) {
    IPoly p = IPoly::linear(-rat_num(v), rat_den(v));
    return AlgebraicNumber(p, {v, v});
}

void AlgebraicNumber::refine() const {
    if (iv_.exact()) return;
    RootInterval r = iv_;
    refine_root(p_, r, r.width() / 2);
    iv_ = r;
}

void AlgebraicNumber::refine_below(const Rat& width) const {
    if (iv_.exact()) return;
    RootInterval r = iv_;
    refine_root(p_, r, width);
    iv_ = r;
}

int AlgebraicNumber::sign_of(const IPoly& q) const {
    if (q.is_zero()) return 0;
    if (iv_.exact()) return sign_at(q, iv_.lo);
    IPoly g = poly_gcd(p_, q);
    if (g.deg() > 0) {
        int a = sign_at(g, iv_.lo), b = sign_at(g, iv_.hi);
        if (a == 0 || b == 0)
            throw std::logic_error("AlgebraicNumber::sign_of: endpoint root of gcd");
        if (a != b) return 0;
    }
    // q(alpha) != 0 here; certify the sign by interval evaluation
    RootInterval r = iv_;
    while (true) {
        RatInterval v = eval_interval(q, {r.lo, r.hi});
        if (v.positive()) { iv_ = r; return 1; }
        if (v.negative()) { iv_ = r; return -1; }
        refine_root(p_, r, r.width() / 4);
        if (r.exact()) { iv_ = r; return sign_at(q, r.lo); }
    }
}

int AlgebraicNumber::compare(const Rat& r) const {
    if (iv_.exact()) return iv_.lo < r ? -1 : (iv_.lo > r ? 1 : 0);
    if (r <= iv_.lo) return 1;
    if (r >= iv_.hi) return -1;
    if (sign_at(p_, r) == 0) return 0; // the unique interior root is alpha
    RootInterval iv = iv_;
    if (sign_at(p_, r) * sign_at(p_, iv.hi) < 0) iv.lo = r; else iv.hi = r;
    iv_ = iv;
    return r <= iv.lo ? 1 : -1;
}

int AlgebraicNumber::compare(const AlgebraicNumber& o) const {
    if (o.is_rational()) return compare(o.rational_value());
    if (is_rational()) return -o.compare(rational_value());
    Rat olo = std::max(iv_.lo, o.iv_.lo), ohi = std::min(iv_.hi, o.iv_.hi);
    if (olo < ohi) {
        IPoly g = poly_gcd(p_, o.p_);
        if (g.deg() > 0) {
            // g divides both defining polynomials, so g is nonzero at all four
            // isolating endpoints and every root interval refines to a strict
            // in/out decision.
            for (auto rv : isolate_real_roots_in(g, olo, ohi)) {
                while (!rv.exact() &&
                       !((rv.lo > iv_.lo && rv.hi < iv_.hi) || rv.hi <= iv_.lo || rv.lo >= iv_.hi))
                    refine_root(g, rv, rv.width() / 4);
                bool in_a = rv.lo > iv_.lo && (rv.exact() ? rv.lo < iv_.hi : rv.hi < iv_.hi);
                if (!in_a) continue;
                while (!rv.exact() &&
                       !((rv.lo > o.iv_.lo && rv.hi < o.iv_.hi) || rv.hi <= o.iv_.lo || rv.lo >= o.iv_.hi))
                    refine_root(g, rv, rv.width() / 4);
                bool in_b = rv.lo > o.iv_.lo && (rv.exact() ? rv.lo < o.iv_.hi : rv.hi < o.iv_.hi);
                if (in_b) return 0; // common root lies inside both intervals
            }
        }
    }
    RootInterval a = iv_, b = o.iv_;
    while (!(a.hi <= b.lo || b.hi <= a.lo)) {
        refine_root(p_, a, a.width() / 4);
        refine_root(o.p_, b, b.width() / 4);
        if (a.exact()) { iv_ = a; return -o.compare(a.lo); }
        if (b.exact()) { o.iv_ = b; return compare(b.lo); }
    }
    iv_ = a;
    o.iv_ = b;
    return a.hi <= b.lo ? -1 : 1;
}

double AlgebraicNumber::to_double() const {
    refine_below(Rat(1, Int(1) << 60));
    return nearcurve::to_double(iv_.exact() ? iv_.lo : iv_.mid());
}

std::pair<Rat, Rat> AlgebraicNumber::enclosure(const Rat& w) const {
    refine_below(w);
    if (iv_.exact()) return {iv_.lo, iv_.lo};
    return {iv_.lo, iv_.hi};
}

std::vector<AlgebraicNumber> real_roots_of(const IPoly& p) {
    IPoly sf = squarefree_part(p);
    std::vector<AlgebraicNumber> out;
    if (sf.deg() <= 0) return out;
    for (auto& r : isolate_real_roots(sf)) {
        if (r.exact()) out.push_back(AlgebraicNumber::from_rational(r.lo));
        else out.emplace_back(sf, r);
    }
    return out;
}

std::vector<AlgebraicNumber> real_roots_in(const IPoly& p, const Rat& lo, const Rat& hi) {
    std::vector<AlgebraicNumber> out;
    for (auto& a : real_roots_of(p)) {
        if (a.compare(lo) >= 0 && a.compare(hi) <= 0) out.push_back(a);
    }
    return out;
}

} // namespace nearcurve
