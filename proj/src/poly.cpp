#include "rigver/poly.hpp"

#include <algorithm>

namespace rigver {

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Int& IntPoly::leading() const {
    if (coeffs_.empty()) throw Error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

Rat IntPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

Int IntPoly::eval_int(const Int& x) const {
    Int acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> cs(coeffs_);
    for (auto& c : cs) c = -c;
    return IntPoly(std::move(cs));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) cs[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) cs[i] += b.coeffs_[i];
    return IntPoly(std::move(cs));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> cs(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(cs));
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return IntPoly();
    std::vector<Int> cs(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) cs[k - 1] = coeffs_[k] * Int(k);
    return IntPoly(std::move(cs));
}

IntPoly IntPoly::shift(const Int& x0) const {
    // Repeated synthetic division by (x - x0): each pass peels off one Taylor
    // coefficient at x0. Exact and fast for the small degrees used here.
    std::vector<Int> res(coeffs_.size(), Int(0));
    std::vector<Int> cur(coeffs_);
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        Int rem(0);
        std::vector<Int> quot(cur.size() > 1 ? cur.size() - 1 : 0, Int(0));
        for (size_t i = cur.size(); i-- > 0;) {
            Int next = cur[i] + rem * x0;
            if (i > 0)
                quot[i - 1] = next;
            else
                res[k] = next;
            rem = next;
        }
        cur = std::move(quot);
        if (cur.empty()) break;
    }
    return IntPoly(std::move(res));
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return *this;
    Int g(0);
    for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
    if (g == 0 || g == 1) return *this;
    std::vector<Int> cs(coeffs_);
    for (auto& c : cs) c /= g;
    return IntPoly(std::move(cs));
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        Int c = coeff(k);
        if (c == 0) continue;
        if (!s.empty()) s += c > 0 ? " + " : " - ";
        else if (c < 0) s += "-";
        Int a = c < 0 ? Int(-c) : c;
        bool unit = (a == 1 && k > 0);
        if (!unit) s += a.str();
        if (k > 0) {
            if (!unit) s += "*";
            s += var;
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

namespace {

// Rational-coefficient polynomials are only needed internally for Sturm
// chains; a minimal dense representation suffices.
using RatPoly = std::vector<Rat>;

RatPoly to_rat(const IntPoly& p) {
    RatPoly q;
    q.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) q.emplace_back(c);
    return q;
}

void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Rat rp_eval(const RatPoly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Remainder of a by b (degrees small, exact arithmetic).
RatPoly rp_rem(RatPoly a, const RatPoly& b) {
    rp_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        rp_trim(a);
    }
    return a;
}

RatPoly rp_derivative(const RatPoly& p) {
    if (p.size() <= 1) return {};
    RatPoly d(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * Rat((long long)k);
    return d;
}

std::vector<RatPoly> sturm_chain(const IntPoly& p) {
    std::vector<RatPoly> chain;
    RatPoly f0 = to_rat(p);
    rp_trim(f0);
    if (f0.empty()) return chain;
    chain.push_back(f0);
    RatPoly f1 = rp_derivative(f0);
    rp_trim(f1);
    while (!f1.empty()) {
        chain.push_back(f1);
        RatPoly r = rp_rem(chain[chain.size() - 2], f1);
        for (auto& c : r) c = -c;
        f1 = std::move(r);
        rp_trim(f1);
    }
    return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
    int vars = 0, last = 0;
    for (const auto& f : chain) {
        int s = rp_eval(f, x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++vars;
        last = s;
    }
    return vars;
}

}  // namespace

Rat root_bound(const IntPoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rat(1);
    Rat lead = Rat(p.leading()).abs();
    Rat maxc(0);
    for (const auto& c : p.coeffs()) {
        Rat a = Rat(c).abs();
        if (a > maxc) maxc = a;
    }
    return Rat(1) + maxc / lead;
}

int count_real_roots(const IntPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw Error("root counting on the zero polynomial");
    if (!(a < b)) return 0;
    auto chain = sturm_chain(p);
    // Sturm counts distinct roots in (a, b]; subtract a root exactly at b.
    int n = sign_variations(chain, a) - sign_variations(chain, b);
    if (p.eval(b).is_zero()) --n;
    return n;
}

namespace {

RatPoly rp_divexact(RatPoly a, const RatPoly& b) {
    rp_trim(a);
    RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        q[a.size() - b.size()] = f;
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        rp_trim(a);
    }
    if (!a.empty()) throw Error("inexact polynomial division");
    return q;
}

RatPoly rp_gcd(RatPoly a, RatPoly b) {
    rp_trim(a);
    rp_trim(b);
    while (!b.empty()) {
        RatPoly r = rp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

IntPoly rp_to_int(const RatPoly& p) {
    Int l(1);
    for (const auto& c : p) l = boost::multiprecision::lcm(l, c.den());
    std::vector<Int> cs;
    cs.reserve(p.size());
    for (const auto& c : p) cs.push_back(c.num() * (l / c.den()));
    return IntPoly(std::move(cs)).primitive_part();
}

void isolate_rec(const std::vector<RatPoly>& chain, const Rat& lo, const Rat& hi,
                 int nroots, std::vector<std::pair<Rat, Rat>>& out) {
    if (nroots == 0) return;
    if (nroots == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    Rat mid = (lo + hi) / Rat(2);
    int left = sign_variations(chain, lo) - sign_variations(chain, mid);
    isolate_rec(chain, lo, mid, left, out);
    isolate_rec(chain, mid, hi, nroots - left, out);
}

// Given an isolating interval (lo, hi] of a squarefree h holding exactly one
// (simple) root, returns sample points strictly left and right of the root at
// which h is nonzero. The right sample is kept below the next root.
std::pair<Rat, Rat> bracket_root(const std::vector<RatPoly>& chain, const IntPoly& h,
                                 Rat lo, Rat hi) {
    for (int it = 0; it < 512; ++it) {
        bool lo_root = h.eval(lo).is_zero();
        bool hi_root = h.eval(hi).is_zero();
        if (!lo_root && !hi_root) {
            if (h.eval(lo).sign() != h.eval(hi).sign()) return {lo, hi};
            // No interior sign change: the lone root must sit outside (lo,hi),
            // which contradicts isolation; tighten defensively.
            hi = (lo + hi) / Rat(2);
            continue;
        }
        if (hi_root) {
            // Root exactly at hi: extend right past it without crossing the
            // next root, then the pair (lo-or-refined, t) brackets it.
            Rat t = hi + (hi - lo);
            while (sign_variations(chain, hi) - sign_variations(chain, t) != 0)
                t = (hi + t) / Rat(2);
            if (lo_root) lo = (lo + hi) / Rat(2);  // (lo, hi) is root-free
            return {lo, t};
        }
        // lo is a root (shared endpoint with the previous interval): move right.
        Rat mid = (lo + hi) / Rat(2);
        if (h.eval(mid).is_zero()) {
            // mid is this interval's root; (lo,mid) and (mid,hi) are root-free.
            return {(lo + mid) / Rat(2), (mid + hi) / Rat(2)};
        }
        int left = sign_variations(chain, lo) - sign_variations(chain, mid);
        if (left == 1)
            hi = mid;
        else
            lo = mid;
    }
    throw Error("root isolation failed to converge");
}

// Complete decision of sign-constancy of p on [x0, infinity).
// Returns +1 if p >= 0 there, -1 if p <= 0, 0 if it changes sign.
int tail_sign(const IntPoly& p, const Int& x0) {
    if (p.is_zero()) return +1;  // both hold; callers treat 0 as 'mixed'
    IntPoly g = p.shift(x0);     // question becomes: sign of g on [0, inf)
    bool all_nonneg = true, all_nonpos = true;
    for (const auto& c : g.coeffs()) {
        if (c < 0) all_nonneg = false;
        if (c > 0) all_nonpos = false;
    }
    if (all_nonneg) return +1;
    if (all_nonpos) return -1;

    // Mixed coefficients: decide exactly. The sign of g can only change at a
    // root, so sampling g at 0, between consecutive positive roots and beyond
    // the last root settles the question. Roots are isolated on the
    // squarefree part, whose sign changes are strict.
    RatPoly f = to_rat(g.primitive_part());
    RatPoly h_rat = rp_divexact(f, rp_gcd(f, rp_derivative(f)));
    IntPoly h = rp_to_int(h_rat);
    auto chain = sturm_chain(h);
    Rat zero(0), bound = root_bound(h);
    int nroots = sign_variations(chain, zero) - sign_variations(chain, bound);
    std::vector<Rat> samples{zero, bound + Rat(1)};
    if (nroots > 0) {
        std::vector<std::pair<Rat, Rat>> iso;
        isolate_rec(chain, zero, bound, nroots, iso);
        for (auto& [lo, hi] : iso) {
            auto [l, r] = bracket_root(chain, h, lo, hi);
            samples.push_back(l);
            samples.push_back(r);
        }
    }
    bool any_pos = false, any_neg = false;
    for (const auto& s : samples) {
        if (s < zero) continue;
        int sg = g.eval(s).sign();
        if (sg > 0) any_pos = true;
        if (sg < 0) any_neg = true;
    }
    if (any_pos && any_neg) return 0;
    return any_neg ? -1 : +1;
}

}  // namespace

bool nonneg_on_tail(const IntPoly& p, const Int& x0) {
    if (p.is_zero()) return true;
    return tail_sign(p, x0) == +1;
}

bool nonpos_on_tail(const IntPoly& p, const Int& x0) {
    if (p.is_zero()) return true;
    return tail_sign(p, x0) == -1;
}

bool no_root_on_tail(const IntPoly& p, const Int& x0) {
    if (p.is_zero()) return false;
    if (p.eval(Rat(Int(x0))).is_zero()) return false;
    Rat lo{Int(x0)};
    Rat bound = root_bound(p);
    if (!(lo < bound)) return true;
    return count_real_roots(p, lo, bound) == 0 && !p.eval(bound).is_zero();
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    IntPoly g = rp_to_int(rp_gcd(to_rat(a), to_rat(b)));
    if (g.is_zero()) return IntPoly::constant(1);
    if (g.leading() < 0) g = -g;
    return g;
}

IntPoly poly_divexact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    RatPoly q = rp_divexact(to_rat(a), to_rat(b));
    // The quotient of integer polynomials by an exact divisor is integral up
    // to the divisor's content, which poly_gcd strips beforehand; clear any
    // residual denominators defensively.
    Int l(1);
    for (const auto& c : q) l = boost::multiprecision::lcm(l, c.den());
    if (l != 1) throw Error("inexact polynomial quotient");
    std::vector<Int> cs;
    cs.reserve(q.size());
    for (const auto& c : q) cs.push_back(c.num());
    return IntPoly(std::move(cs));
}

}  // namespace rigver
