#include "rigver/optimize.hpp"

#include "rigver/interval.hpp"
#include "rigver/poly.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace rigver {

TriangleRegion TriangleRegion::region_5theta_2nu() {
    TriangleRegion r;
    r.halves.push_back({Rat(1), Rat(0), Rat(3), "nu<=3"});
    r.halves.push_back({Rat(-2), Rat(5), Rat(0), "5theta<=2nu"});
    return r;
}

TriangleRegion TriangleRegion::region_2theta_nu() {
    TriangleRegion r;
    r.halves.push_back({Rat(1), Rat(0), Rat(3), "nu<=3"});
    r.halves.push_back({Rat(-1), Rat(2), Rat(0), "2theta<=nu"});
    return r;
}

namespace {

const QuadExt kTwoRoot2(Rat(0), Rat(2));  // 2*sqrt2, the clamp switch nu^2 = 8

QuadExt g_theta(const QuadExt& th) { return th * th / (th - QuadExt(1)); }

QuadExt g_prime(const QuadExt& th) {
    QuadExt d = th - QuadExt(1);
    return (th * th - QuadExt(2) * th) / (d * d);
}

// One smooth convex piece of the objective.
//   flat: f = 8 + g(theta)            (clamped branch nu^2 <= 8)
//   else: f = nu^2 + g(theta)
// split: 0 none, -1 adds nu <= 2*sqrt2, +1 adds nu >= 2*sqrt2.
struct Piece {
    bool flat = false;
    int split = 0;
};

QuadExt piece_value(const Piece& p, const QuadExt& nu, const QuadExt& th) {
    return (p.flat ? QuadExt(8) : nu * nu) + g_theta(th);
}

bool in_closed_region(const TriangleRegion& r, const QuadExt& nu, const QuadExt& th) {
    if ((th - QuadExt(1)).sign() < 0) return false;
    for (const auto& h : r.halves) {
        QuadExt lhs = QuadExt(h.a) * nu + QuadExt(h.b) * th;
        if ((lhs - QuadExt(h.c)).sign() > 0) return false;
    }
    return true;
}

bool in_piece(const Piece& p, const QuadExt& nu) {
    if (p.split == 0) return true;
    int s = (nu - kTwoRoot2).sign();
    return p.split < 0 ? s <= 0 : s >= 0;
}

struct Cand {
    QuadExt nu, th;
};

// Pairwise boundary intersections of the closed region (rational points).
std::vector<std::pair<Rat, Rat>> region_vertices(const TriangleRegion& r) {
    struct Line {
        Rat a, b, c;
    };
    std::vector<Line> lines;
    for (const auto& h : r.halves) lines.push_back({h.a, h.b, h.c});
    lines.push_back({Rat(0), Rat(1), Rat(1)});  // theta = 1 (closure boundary)
    std::vector<std::pair<Rat, Rat>> vs;
    for (size_t i = 0; i < lines.size(); ++i) {
        for (size_t j = i + 1; j < lines.size(); ++j) {
            Rat det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
            if (det.is_zero()) continue;
            Rat nu = (lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det;
            Rat th = (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det;
            if (in_closed_region(r, QuadExt(nu), QuadExt(th))) vs.emplace_back(nu, th);
        }
    }
    return vs;
}

bool region_bounded(const TriangleRegion& r) {
    // Recession direction d must satisfy a*d_nu + b*d_th <= 0 for every half
    // and d_th >= 0 (from theta >= 1). A nontrivial cone in the plane has an
    // extreme ray on some constraint boundary, so testing the perpendiculars
    // of every normal is exhaustive.
    std::vector<std::pair<Rat, Rat>> normals;
    for (const auto& h : r.halves) normals.emplace_back(h.a, h.b);
    normals.emplace_back(Rat(0), Rat(-1));  // theta >= 1  ->  -theta <= -1
    auto admissible = [&](const Rat& dn, const Rat& dt) {
        if (dn.is_zero() && dt.is_zero()) return false;
        for (const auto& [a, b] : normals)
            if ((a * dn + b * dt).sign() > 0) return false;
        return true;
    };
    for (const auto& [a, b] : normals) {
        if (admissible(b, -a) || admissible(-b, a)) return false;
    }
    return true;
}

// Exact roots of an integer polynomial that are representable in Q(sqrt2).
// Rational roots are peeled off by divisor search; the residual quadratic is
// solved when its discriminant is q^2 or 2 q^2. Unrepresentable roots are
// simply not reported (the KKT gate keeps the final result sound).
void representable_roots(const IntPoly& p, std::vector<QuadExt>& out) {
    IntPoly f = p.primitive_part();
    if (f.is_zero() || f.degree() == 0) return;
    if (f.degree() == 1) {
        out.emplace_back(Rat(-f.coeff(0), f.coeff(1)));
        return;
    }
    if (f.degree() == 2) {
        Rat a(f.coeff(2)), b(f.coeff(1)), c(f.coeff(0));
        Rat disc = b * b - Rat(4) * a * c;
        if (disc.sign() < 0) return;
        Rat root;
        if (disc.exact_sqrt(root)) {
            out.emplace_back((-b + root) / (Rat(2) * a));
            out.emplace_back((-b - root) / (Rat(2) * a));
        } else if ((disc / Rat(2)).exact_sqrt(root)) {
            // sqrt(disc) = root * sqrt2
            QuadExt s(Rat(0), root);
            QuadExt den(Rat(2) * a);
            out.push_back((QuadExt(-b) + s) / den);
            out.push_back((QuadExt(-b) - s) / den);
        }
        return;
    }
    // Degree >= 3: peel integer-divisor rational roots while possible.
    Int a0 = f.coeff(0), an = f.leading();
    if (a0 == 0) {
        out.emplace_back(Rat(0));
        std::vector<Int> cs(f.coeffs().begin() + 1, f.coeffs().end());
        representable_roots(IntPoly(std::move(cs)), out);
        return;
    }
    const Int cap(1000000);
    Int A = boost::multiprecision::abs(a0), N = boost::multiprecision::abs(an);
    if (A > cap || N > cap) return;
    auto divisors = [](const Int& v) {
        std::vector<Int> ds;
        for (Int d = 1; d * d <= v; ++d) {
            if (v % d != 0) continue;
            ds.push_back(d);
            if (d * d != v) ds.push_back(v / d);
        }
        return ds;
    };
    for (const Int& pd : divisors(A)) {
        for (const Int& qd : divisors(N)) {
            for (int sgn : {1, -1}) {
                Rat cand(pd * sgn, qd);
                if (!f.eval(cand).is_zero()) continue;
                // Synthetic division by (x - cand), then clear denominators
                // and recurse on the quotient.
                std::vector<Rat> q(f.degree(), Rat(0));
                Rat carry(0);
                for (int i = f.degree(); i >= 1; --i) {
                    carry = Rat(f.coeff(i)) + carry * cand;
                    q[i - 1] = carry;
                }
                Int l(1);
                for (const auto& qc : q) l = boost::multiprecision::lcm(l, qc.den());
                std::vector<Int> qi;
                qi.reserve(q.size());
                for (const auto& qc : q) qi.push_back(qc.num() * (l / qc.den()));
                out.emplace_back(cand);
                representable_roots(IntPoly(std::move(qi)), out);
                return;
            }
        }
    }
}

// Critical points of the objective restricted to the boundary line
// a nu + b theta = c of a half (or to the clamp split line).
void edge_criticals(const Piece& piece, const Rat& a, const Rat& b, const Rat& c,
                    std::vector<Cand>& out) {
    if (b.is_zero()) {
        // Vertical edge nu = c/a: only g varies; critical at theta = 2.
        out.push_back({QuadExt(c / a), QuadExt(2)});
        return;
    }
    if (a.is_zero()) {
        // Horizontal edge theta = c/b: nu^2 is minimized at nu = 0.
        if (!piece.flat) out.push_back({QuadExt(0), QuadExt(c / b)});
        return;
    }
    if (piece.flat) {
        // f = 8 + g(theta): critical at theta = 2, nu from the line.
        out.push_back({QuadExt((c - Rat(2) * b) / a), QuadExt(2)});
        return;
    }
    // nu(theta) = (c - b theta)/a; d/dtheta [nu^2 + g] = 0 becomes the cubic
    //   -2 b (c - b theta) (theta-1)^2 + a^2 theta (theta - 2) = 0
    // after clearing a^2 (theta-1)^2.
    Int l = boost::multiprecision::lcm(boost::multiprecision::lcm(a.den(), b.den()), c.den());
    Int ai = a.num() * (l / a.den());
    Int bi = b.num() * (l / b.den());
    Int ci = c.num() * (l / c.den());
    IntPoly theta = IntPoly::x();
    IntPoly lin = IntPoly::constant(ci) - IntPoly::constant(bi) * theta;  // c - b theta (scaled)
    IntPoly sq = (theta - IntPoly::constant(1)) * (theta - IntPoly::constant(1));
    IntPoly cubic = IntPoly::constant(-2 * bi) * lin * sq +
                    IntPoly::constant(ai * ai) * theta * (theta - IntPoly::constant(2));
    std::vector<QuadExt> roots;
    representable_roots(cubic, roots);
    for (const auto& th : roots) {
        QuadExt nu = (QuadExt(c) - QuadExt(b) * th) / QuadExt(a);
        out.push_back({nu, th});
    }
}

struct ActiveConstraint {
    QuadExt na, nb;  // gradient of the <= form
    std::string id;
};

// Exact first-order check: -grad f lies in the cone of the active normals.
// Two unknowns, so single constraints and pairs are exhaustive.
bool kkt_holds(const Piece& piece, const TriangleRegion& region, const QuadExt& nu,
               const QuadExt& th, std::vector<std::string>* active_out) {
    QuadExt gnu = piece.flat ? QuadExt(0) : QuadExt(2) * nu;
    QuadExt gth = g_prime(th);

    std::vector<ActiveConstraint> act;
    for (const auto& h : region.halves) {
        QuadExt lhs = QuadExt(h.a) * nu + QuadExt(h.b) * th;
        if ((lhs - QuadExt(h.c)).sign() == 0) act.push_back({QuadExt(h.a), QuadExt(h.b), h.id});
    }
    if (piece.split != 0 && (nu - kTwoRoot2).sign() == 0) {
        if (piece.split < 0)
            act.push_back({QuadExt(1), QuadExt(0), "nu<=2*sqrt2"});
        else
            act.push_back({QuadExt(-1), QuadExt(0), "nu>=2*sqrt2"});
    }
    if (active_out) {
        active_out->clear();
        for (const auto& a : act) active_out->push_back(a.id);
    }

    if (gnu.is_zero() && gth.is_zero()) return true;
    // Single active constraint: grad f + lambda n = 0.
    for (const auto& a1 : act) {
        QuadExt lambda;
        if (!a1.na.is_zero())
            lambda = -gnu / a1.na;
        else if (!a1.nb.is_zero())
            lambda = -gth / a1.nb;
        else
            continue;
        if (lambda.sign() < 0) continue;
        if ((gnu + lambda * a1.na).is_zero() && (gth + lambda * a1.nb).is_zero()) return true;
    }
    // Pairs (Caratheodory suffices in the plane).
    for (size_t i = 0; i < act.size(); ++i) {
        for (size_t j = i + 1; j < act.size(); ++j) {
            QuadExt det = act[i].na * act[j].nb - act[j].na * act[i].nb;
            if (det.is_zero()) continue;
            QuadExt l1 = (-gnu * act[j].nb + gth * act[j].na) / det;
            QuadExt l2 = (-act[i].na * gth + act[i].nb * gnu) / det;
            if (l1.sign() >= 0 && l2.sign() >= 0) return true;
        }
    }
    return false;
}

// Outward-rounded lower bound of g over [tlo, thi] (intersected with
// theta > 1); uses the exact shape of g: decreasing on (1,2], increasing
// beyond, with minimum value 4 at theta = 2.
double g_lower(double tlo, double thi) {
    tlo = std::max(tlo, 1.0);
    if (thi <= tlo) thi = tlo;
    double t;
    if (thi <= 2.0)
        t = thi;
    else if (tlo >= 2.0)
        t = tlo;
    else
        return 4.0;
    if (t <= 1.0) return HUGE_VAL;
    Ival ti = Ival::point(t);
    Ival num = ti.sqr();
    Ival den = ti - Ival::point(1.0);
    if (den.lo <= 0.0) return HUGE_VAL;  // arbitrarily large near theta = 1
    return Ival::down(num.lo / den.hi);
}

struct Box {
    double nlo, nhi, tlo, thi;
};

// Branch-and-bound witness: verifies no feasible point beats best - 1e-9 and
// reports the achieved global lower bound.
std::pair<double, long> interval_witness(ObjectiveId obj, const TriangleRegion& region,
                                         const std::vector<std::pair<Rat, Rat>>& vertices,
                                         double best) {
    double nlo = HUGE_VAL, nhi = -HUGE_VAL, tlo = HUGE_VAL, thi = -HUGE_VAL;
    for (const auto& [vn, vt] : vertices) {
        Ival n = Ival::from_rat(vn), t = Ival::from_rat(vt);
        nlo = std::min(nlo, n.lo);
        nhi = std::max(nhi, n.hi);
        tlo = std::min(tlo, t.lo);
        thi = std::max(thi, t.hi);
    }
    const double target = best - 1e-9;
    double lower = HUGE_VAL;
    long boxes = 0;
    std::deque<Box> work{{nlo, nhi, std::max(tlo, 1.0), thi}};
    std::vector<Ival> ha, hb, hc;
    for (const auto& h : region.halves) {
        ha.push_back(Ival::from_rat(h.a));
        hb.push_back(Ival::from_rat(h.b));
        hc.push_back(Ival::from_rat(h.c));
    }
    while (!work.empty()) {
        if (++boxes > 2000000) return {-HUGE_VAL, boxes};  // witness failed
        Box b = work.front();
        work.pop_front();
        if (b.thi <= 1.0) continue;  // entirely outside theta > 1
        Ival nu{b.nlo, b.nhi}, th{std::max(b.tlo, 1.0), b.thi};
        bool infeasible = false;
        for (size_t i = 0; i < ha.size() && !infeasible; ++i) {
            Ival lhs = ha[i] * nu + hb[i] * th;
            if (lhs.lo > hc[i].hi) infeasible = true;
        }
        if (infeasible) continue;
        double fnu = obj == ObjectiveId::ClampedNF ? std::max(nu.sqr().lo, 8.0) : nu.sqr().lo;
        double lb = fnu + g_lower(th.lo, th.hi);
        if (lb >= target) {
            lower = std::min(lower, lb);
            continue;
        }
        double nw = b.nhi - b.nlo, tw = b.thi - std::max(b.tlo, 1.0);
        if (nw < 1e-12 && tw < 1e-12) {
            // Cannot refine further; the witness fails conservatively.
            return {lb, boxes};
        }
        if (nw >= tw) {
            double mid = 0.5 * (b.nlo + b.nhi);
            work.push_front({b.nlo, mid, b.tlo, b.thi});
            work.push_front({mid, b.nhi, b.tlo, b.thi});
        } else {
            double mid = 0.5 * (std::max(b.tlo, 1.0) + b.thi);
            work.push_front({b.nlo, b.nhi, b.tlo, mid});
            work.push_front({b.nlo, b.nhi, mid, b.thi});
        }
    }
    return {lower, boxes};
}

}  // namespace

MinResult min_on_triangle(ObjectiveId obj, const TriangleRegion& region) {
    auto vertices = region_vertices(region);
    if (vertices.empty()) throw EmptyRegion("region has no closure points");
    bool above = false;
    for (const auto& [vn, vt] : vertices)
        if (vt > Rat(1)) above = true;
    if (!above) throw EmptyRegion("region does not meet {theta > 1}");
    if (!region_bounded(region)) throw Error("region must be bounded");

    std::vector<Piece> pieces;
    if (obj == ObjectiveId::PlainNF)
        pieces.push_back({false, 0});
    else {
        pieces.push_back({true, -1});
        pieces.push_back({false, +1});
    }

    bool all_verified = true;
    std::optional<MinResult> best;
    for (const auto& piece : pieces) {
        std::vector<Cand> cands;
        for (const auto& [vn, vt] : vertices) cands.push_back({QuadExt(vn), QuadExt(vt)});
        // Clamp split intersections with every boundary line, plus the
        // critical point of g along the split line itself.
        if (piece.split != 0) {
            for (const auto& h : region.halves) {
                if (h.b.is_zero()) continue;
                QuadExt th = (QuadExt(h.c) - QuadExt(h.a) * kTwoRoot2) / QuadExt(h.b);
                cands.push_back({kTwoRoot2, th});
            }
            cands.push_back({kTwoRoot2, QuadExt(2)});
        }
        // Interior critical point of nu^2 + g: (0, 2). For the flat piece the
        // whole line theta = 2 is critical; its boundary meets are added per
        // edge below.
        cands.push_back({QuadExt(0), QuadExt(2)});
        for (const auto& h : region.halves) edge_criticals(piece, h.a, h.b, h.c, cands);

        std::optional<Cand> win;
        QuadExt win_val;
        for (const auto& c : cands) {
            if ((c.th - QuadExt(1)).sign() <= 0) continue;
            if (!in_closed_region(region, c.nu, c.th) || !in_piece(piece, c.nu)) continue;
            QuadExt v = piece_value(piece, c.nu, c.th);
            if (!win || v < win_val) {
                win = c;
                win_val = v;
            }
        }
        if (!win) continue;  // piece does not meet the region
        std::vector<std::string> active;
        bool kkt = kkt_holds(piece, region, win->nu, win->th, &active);
        all_verified = all_verified && kkt;
        if (!best || win_val < best->value) {
            MinResult r;
            r.value = win_val;
            r.argmin_nu = win->nu;
            r.argmin_theta = win->th;
            r.active = std::move(active);
            best = std::move(r);
        }
    }
    if (!best) throw EmptyRegion("no admissible point with theta > 1");

    auto [lower, boxes] = interval_witness(obj, region, vertices,
                                           Ival::up(best->value.to_double()));
    best->interval_lower = lower;
    best->boxes_explored = boxes;
    best->verified = all_verified && lower >= best->value.to_double() - 1e-9;
    return *best;
}

QuadMinResult min_quadratic_on_hyperplane(const std::vector<Rat>& weights, const Rat& C,
                                          const Rat& nu1) {
    if (weights.empty()) throw DegenerateWeights("no weights");
    for (const auto& w : weights)
        if (w.sign() < 0) throw DegenerateWeights("weights must be nonnegative");
    Rat tail(0);
    for (size_t i = 1; i < weights.size(); ++i) tail += weights[i];
    if (tail.is_zero()) throw DegenerateWeights("sum of tail weights is zero");
    QuadMinResult r;
    r.theta = (C - weights[0] * nu1) / tail;
    r.min_value = weights[0] * nu1 * nu1 + tail * r.theta * r.theta;
    return r;
}

// ---------------------------------------------------------------------------
// Counting-multiplicities polynomial identities.
// ---------------------------------------------------------------------------

MPoly phi_counting_difference(PhiCase c, const Rat& m1, const Rat& m2) {
    MPoly s = MPoly::var("s"), t0 = MPoly::var("t0"), t1 = MPoly::var("t1"),
          t2 = MPoly::var("t2");
    if (c == PhiCase::ThreeLevel) {
        MPoly lhs = (s + t0 + t1 + t2) * (s * MPoly(m1) + (t0 + t1) * MPoly(m2));
        MPoly rhs = (MPoly(3) * s + MPoly(3) * t0 + MPoly(2) * t1 + t2).pow(2);
        return lhs - rhs;
    }
    MPoly t3 = MPoly::var("t3");
    MPoly lhs = (s + t0 + t1 + t2 + t3) * (s * MPoly(m1) + (t0 + t1 + t2) * MPoly(m2));
    MPoly rhs = (MPoly(4) * s + MPoly(4) * t0 + MPoly(3) * t1 + MPoly(2) * t2 + t3).pow(2);
    return lhs - rhs;
}

MPoly phi_three_level_form() {
    MPoly s = MPoly::var("s"), t0 = MPoly::var("t0"), t1 = MPoly::var("t1"),
          t2 = MPoly::var("t2");
    return (s - t2).pow(2) + MPoly(6) * s * t0 + MPoly(5) * t0 * t0 + MPoly(4) * t0 * t1 +
           MPoly(2) * t0 * t2;
}

bool check_phi_identity(PhiCase c, PhiReport* report) {
    PhiReport local;
    PhiReport& rep = report ? *report : local;
    if (c == PhiCase::ThreeLevel) {
        rep.difference = phi_counting_difference(c, Rat(8), Rat(4));
        rep.ok = (rep.difference == -phi_three_level_form());
        rep.detail = rep.ok ? "difference equals -Phi(s,t0,t1,t2)"
                            : "difference does not match -Phi";
        return rep.ok;
    }
    rep.difference = phi_counting_difference(c, Rat(12), Rat(4));
    MPoly s = MPoly::var("s"), t3 = MPoly::var("t3");
    MPoly square = (MPoly(2) * s - t3).pow(2);
    rep.remainder = -rep.difference - square;
    rep.ok = rep.remainder.all_coeffs_nonneg();
    rep.detail = rep.ok ? "-(difference) = (2s-t3)^2 + [" + rep.remainder.str() + "]"
                        : "remainder has a negative coefficient: " + rep.remainder.str();
    return rep.ok;
}

// ---------------------------------------------------------------------------
// Constant-propagation pipelines.
// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, std::vector<PipelineStep>>& pipelines() {
    static const std::map<std::string, std::vector<PipelineStep>> table = [] {
        std::map<std::string, std::vector<PipelineStep>> t;
        // Multiplicity growth along the two hyperplane-section restrictions,
        // then the hypertangent kick-off factor 3/2.
        t["sec1_5"] = {
            {"first restriction: 4/3*(l+m) at l > m gives 8/3*m",
             Rat(4, 3) * (Rat(1) + Rat(1)), Rat(8, 3)},
            {"second restriction: 8/3 + 2/3*(2 - 4/3) = 28/9",
             Rat(8, 3) + Rat(2, 3) * (Rat(2) - Rat(4, 3)), Rat(28, 9)},
            {"tangent-cone intersection: 3/2 * 28/9 = 14/3", Rat(3, 2) * Rat(28, 9),
             Rat(14, 3)},
        };
        // Quadratic-point ratio: 3/2 * 2*nu/m at nu > 3/2*m.
        t["prop1_3"] = {
            {"3/2 * (2 * 3/2) = 9/2", Rat(3, 2) * (Rat(2) * Rat(3, 2)) / Rat(1), Rat(9, 2)},
        };
        t["identity"] = {
            {"1 = 1", Rat(1), Rat(1)},
        };
        return t;
    }();
    return table;
}

}  // namespace

bool check_bound_pipeline(const std::string& id) {
    auto it = pipelines().find(id);
    if (it == pipelines().end()) throw UnknownPipeline("unknown pipeline: " + id);
    for (const auto& step : it->second)
        if (step.lhs != step.rhs) return false;
    return true;
}

std::vector<std::string> pipeline_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : pipelines()) names.push_back(k);
    return names;
}

std::vector<PipelineStep> pipeline_steps(const std::string& id) {
    auto it = pipelines().find(id);
    if (it == pipelines().end()) throw UnknownPipeline("unknown pipeline: " + id);
    return it->second;
}

}  // namespace rigver
