#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigver/dsl.hpp"
#include "rigver/interval.hpp"
#include "rigver/optimize.hpp"

#include <cmath>
#include <random>

using namespace rigver;

namespace {
QuadExt plain_nf(const QuadExt& nu, const QuadExt& th) {
    return nu * nu + th * th / (th - QuadExt(1));
}
QuadExt clamped_nf(const QuadExt& nu, const QuadExt& th) {
    QuadExt sq = nu * nu;
    QuadExt head = (sq - QuadExt(8)).sign() >= 0 ? sq : QuadExt(8);
    return head + th * th / (th - QuadExt(1));
}
}  // namespace

TEST_CASE("minimum of the plain objective on the steep triangle") {
    MinResult r = min_on_triangle(ObjectiveId::PlainNF, TriangleRegion::region_5theta_2nu());
    CHECK(r.value == QuadExt(Rat(81, 5)));
    CHECK(r.argmin_nu == QuadExt(3));
    CHECK(r.argmin_theta == QuadExt(Rat(6, 5)));
    CHECK(r.verified);
    CHECK(std::abs(r.interval_lower - 16.2) <= 1e-9 + 1e-12);
    CHECK(r.interval_lower >= 16.2 - 1e-9);
}

TEST_CASE("minimum of the clamped objective lands in Q(sqrt2)") {
    MinResult r = min_on_triangle(ObjectiveId::ClampedNF, TriangleRegion::region_2theta_nu());
    CHECK(r.value == QuadExt(Rat(10), Rat(2)));           // 10 + 2*sqrt2
    CHECK(r.argmin_nu == QuadExt(Rat(0), Rat(2)));        // 2*sqrt2
    CHECK(r.argmin_theta == QuadExt::sqrt2());
    CHECK(r.verified);
    CHECK(r.interval_lower >= 12.82842712 - 1e-6);
    CHECK(r.interval_lower >= r.value.to_double() - 1e-9);
}

TEST_CASE("single-point region evaluates the objective") {
    TriangleRegion point;
    point.halves.push_back({Rat(1), Rat(0), Rat(3), "nu<=3"});
    point.halves.push_back({Rat(-1), Rat(0), Rat(-3), "nu>=3"});
    point.halves.push_back({Rat(0), Rat(1), Rat(6, 5), "theta<=6/5"});
    point.halves.push_back({Rat(0), Rat(-1), Rat(-6, 5), "theta>=6/5"});
    MinResult r = min_on_triangle(ObjectiveId::PlainNF, point);
    CHECK(r.value == QuadExt(Rat(81, 5)));
    CHECK(r.verified);
}

TEST_CASE("empty regions are reported") {
    TriangleRegion bad;
    bad.halves.push_back({Rat(0), Rat(1), Rat(1, 2), "theta<=1/2"});  // below theta > 1
    CHECK_THROWS_AS(min_on_triangle(ObjectiveId::PlainNF, bad), EmptyRegion);
    TriangleRegion none;
    none.halves.push_back({Rat(1), Rat(0), Rat(0), "nu<=0"});
    none.halves.push_back({Rat(-1), Rat(0), Rat(-1), "nu>=1"});
    CHECK_THROWS_AS(min_on_triangle(ObjectiveId::PlainNF, none), EmptyRegion);
}

TEST_CASE("sampling check: no region point beats the reported minimum") {
    std::mt19937 rng(5150);
    MinResult plain = min_on_triangle(ObjectiveId::PlainNF, TriangleRegion::region_5theta_2nu());
    MinResult clamp =
        min_on_triangle(ObjectiveId::ClampedNF, TriangleRegion::region_2theta_nu());
    // Draw rational points from tight boxes around each triangle and keep
    // the admissible ones until 10^4 samples per objective are checked.
    std::uniform_int_distribution<int> nu_pl(2000, 3000), th_pl(1001, 1200);
    std::uniform_int_distribution<int> nu_cl(1800, 3000), th_cl(1001, 1500);
    int kept_plain = 0, kept_clamp = 0;
    while (kept_plain < 10000 || kept_clamp < 10000) {
        if (kept_plain < 10000) {
            Rat nu(nu_pl(rng), Int(1000)), th(th_pl(rng), Int(1000));
            if (th > Rat(1) && nu <= Rat(3) && Rat(5) * th <= Rat(2) * nu) {
                ++kept_plain;
                CHECK((plain_nf(QuadExt(nu), QuadExt(th)) - plain.value).sign() >= 0);
            }
        }
        if (kept_clamp < 10000) {
            Rat nu(nu_cl(rng), Int(1000)), th(th_cl(rng), Int(1000));
            if (th > Rat(1) && nu <= Rat(3) && Rat(2) * th <= nu) {
                ++kept_clamp;
                CHECK((clamped_nf(QuadExt(nu), QuadExt(th)) - clamp.value).sign() >= 0);
            }
        }
    }
    CHECK(kept_plain == 10000);
    CHECK(kept_clamp == 10000);
}

TEST_CASE("homogeneity of the un-normalized objective") {
    // Clearing the pole: Q(nu, theta, n) = nu^2 (theta - n) + n theta^2
    // satisfies Q(n nu, n theta, n) = n^3 Q(nu, theta, 1) identically.
    MPoly nu = MPoly::var("nu"), th = MPoly::var("theta"), n = MPoly::var("n");
    MPoly Q = nu * nu * (th - n) + n * th * th;
    MPoly lhs = Q.subst("nu", n * nu).subst("theta", n * th);
    MPoly rhs = n.pow(3) * Q.subst("n", MPoly(1));
    CHECK(lhs == rhs);
    // Spot check the original rational form at random rational points.
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> pick(2, 40);
    for (int t = 0; t < 200; ++t) {
        Rat nv(pick(rng), 7), tv(pick(rng), 5), scale(pick(rng), 11);
        if (!(tv > Rat(1))) continue;
        Rat unnorm = (scale * nv) * (scale * nv) +
                     scale * (scale * tv) * (scale * tv) / (scale * tv - scale);
        Rat norm = nv * nv + tv * tv / (tv - Rat(1));
        CHECK(unnorm == scale * scale * norm);
    }
}

TEST_CASE("hyperplane quadratic minimum: closed form") {
    QuadMinResult a = min_quadratic_on_hyperplane({Rat(1), Rat(1), Rat(1)}, Rat(6), Rat(2));
    CHECK(a.theta == Rat(2));
    CHECK(a.min_value == Rat(12));
    QuadMinResult b = min_quadratic_on_hyperplane({Rat(2), Rat(1), Rat(1)}, Rat(10), Rat(3));
    CHECK(b.theta == Rat(2));
    CHECK(b.min_value == Rat(26));
    CHECK_THROWS_AS(min_quadratic_on_hyperplane({Rat(1)}, Rat(3), Rat(1)), DegenerateWeights);
    CHECK_THROWS_AS(min_quadratic_on_hyperplane({Rat(1), Rat(0), Rat(0)}, Rat(3), Rat(1)),
                    DegenerateWeights);
}

TEST_CASE("hyperplane quadratic minimum matches a projected-gradient oracle") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> wnum(1, 9), cnum(-20, 20);
    for (int t = 0; t < 200; ++t) {
        int k = 2 + t % 7;
        std::vector<Rat> w;
        std::vector<double> wd;
        for (int i = 0; i < k; ++i) {
            int v = wnum(rng);
            w.push_back(Rat(v));
            wd.push_back(v);
        }
        Rat C(cnum(rng)), nu1(cnum(rng), 4);
        QuadMinResult exact = min_quadratic_on_hyperplane(w, C, nu1);

        // Numeric oracle: project the gradient of sum w_i x_i^2 onto the
        // hyperplane sum w_i x_i = C - w_1 nu1 and iterate.
        double target = C.to_double() - wd[0] * nu1.to_double();
        std::vector<double> x(k - 1, 0.0);
        double wsum = 0;
        for (int i = 1; i < k; ++i) wsum += wd[i];
        for (int i = 1; i < k; ++i) x[i - 1] = target / wsum;  // feasible start
        for (int it = 0; it < 4000; ++it) {
            std::vector<double> grad(k - 1);
            for (int i = 1; i < k; ++i) grad[i - 1] = 2 * wd[i] * x[i - 1];
            // project gradient onto {sum w_i dx_i = 0}
            double lam = 0, den = 0;
            for (int i = 1; i < k; ++i) {
                lam += grad[i - 1] * wd[i];
                den += wd[i] * wd[i];
            }
            lam /= den;
            double step = 0.02;
            for (int i = 1; i < k; ++i) x[i - 1] -= step * (grad[i - 1] - lam * wd[i]);
        }
        double val = wd[0] * nu1.to_double() * nu1.to_double();
        for (int i = 1; i < k; ++i) val += wd[i] * x[i - 1] * x[i - 1];
        CHECK(std::abs(val - exact.min_value.to_double()) <= 1e-9 * (1 + std::abs(val)));
    }
}

TEST_CASE("three-level counting identity") {
    PhiReport rep;
    REQUIRE(check_phi_identity(PhiCase::ThreeLevel, &rep));
    CHECK(rep.difference == -phi_three_level_form());
    // Perturbed substitution no longer matches the closed form.
    CHECK(phi_counting_difference(PhiCase::ThreeLevel, Rat(9), Rat(4)) !=
          -phi_three_level_form());
}

TEST_CASE("three-level identity pins the estimate below zero on the orthant") {
    // With the substituted values, lhs - rhs = -Phi <= 0 whenever all
    // variables are nonnegative; spot-verify on random points.
    MPoly diff = phi_counting_difference(PhiCase::ThreeLevel, Rat(8), Rat(4));
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> v(0, 60);
    for (int t = 0; t < 1000; ++t) {
        std::map<std::string, Rat> pt{{"s", Rat(v(rng), 7)},
                                      {"t0", Rat(v(rng), 7)},
                                      {"t1", Rat(v(rng), 7)},
                                      {"t2", Rat(v(rng), 7)}};
        CHECK(diff.eval(pt) <= Rat(0));
    }
}

TEST_CASE("four-level counting identity: square plus nonnegative remainder") {
    PhiReport rep;
    REQUIRE(check_phi_identity(PhiCase::FourLevel, &rep));
    CHECK(rep.remainder.all_coeffs_nonneg());
    CHECK(!rep.remainder.is_zero());
    // Audit: reconstruct -(difference) from the square and the remainder.
    MPoly s = MPoly::var("s"), t3 = MPoly::var("t3");
    MPoly square = (MPoly(2) * s - t3).pow(2);
    CHECK(-rep.difference == square + rep.remainder);
}

TEST_CASE("outward-rounded intervals always contain the real result") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> val(-50.0, 50.0);
    for (int t = 0; t < 5000; ++t) {
        double a = val(rng), b = val(rng);
        Ival ia = Ival::point(a), ib = Ival::point(b);
        CHECK((ia + ib).contains(a + b));
        CHECK((ia - ib).contains(a - b));
        CHECK((ia * ib).contains(a * b));
        CHECK(ia.sqr().contains(a * a));
        CHECK(ia.sqr().lo >= 0.0);
        CHECK(Ival::max_with(ia, 8.0).contains(std::max(a, 8.0)));
    }
    // Rational conversion brackets the true value.
    Rat third(1, 3);
    Ival it = Ival::from_rat(third);
    CHECK(it.lo < 1.0 / 3.0 + 1e-15);
    CHECK(it.hi > 1.0 / 3.0 - 1e-15);
    CHECK(it.lo <= it.hi);
}

TEST_CASE("bound-propagation pipelines") {
    CHECK(check_bound_pipeline("sec1_5"));
    CHECK(check_bound_pipeline("prop1_3"));
    CHECK(check_bound_pipeline("identity"));
    CHECK_THROWS_AS(check_bound_pipeline("nope"), UnknownPipeline);
    for (const auto& name : pipeline_names())
        for (const auto& step : pipeline_steps(name)) CHECK(step.lhs == step.rhs);
}
