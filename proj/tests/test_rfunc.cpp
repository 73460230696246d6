#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigver/dsl.hpp"
#include "rigver/poly.hpp"
#include "rigver/rfunc.hpp"

using namespace rigver;

TEST_CASE("evaluation of parametric coefficients") {
    ParamCoeff c = parse_param_coeff("8*M/(3*(M-2))");
    CHECK(c.eval_at(15) == Rat(40, 13));
    ParamCoeff d = parse_param_coeff("2*M/(M-2)");
    CHECK(d.eval_at(4) == Rat(4));
    ParamCoeff e = parse_param_coeff("4*M/(M-3)");
    CHECK_THROWS_AS(e.eval_at(3), DomainError);
}

TEST_CASE("limits at infinity") {
    CHECK(*parse_param_coeff("8*M/(3*(M-2))").limit_at_infinity() == Rat(8, 3));
    CHECK(*parse_param_coeff("7*(M-2)/(6*M)").limit_at_infinity() == Rat(7, 6));
    CHECK(!parse_param_coeff("(M-4)*(M-3)/2").limit_at_infinity().has_value());
    CHECK(*parse_param_coeff("5/(M*M)").limit_at_infinity() == Rat(0));
}

TEST_CASE("monotonicity certificates") {
    CHECK(certify_monotone(parse_param_coeff("8*M/(3*(M-2))"), 3) ==
          Monotone::DecreasingOnTail);
    CHECK(certify_monotone(parse_param_coeff("M"), 1) == Monotone::IncreasingOnTail);
    CHECK(certify_monotone(parse_param_coeff("7*(M-2)/(6*M)"), 1) ==
          Monotone::IncreasingOnTail);
    // Constants certify weakly in both directions; the reported direction is
    // the nonincreasing one.
    CHECK(certify_monotone(parse_param_coeff("3"), 4) == Monotone::DecreasingOnTail);
    // A pole inside the tail is an error.
    CHECK_THROWS_AS(certify_monotone(parse_param_coeff("2*M/(M-2)"), 1), DomainError);
    // Non-monotone on the tail: (M-10)^2 turns around at M=10.
    CHECK(certify_monotone(parse_param_coeff("(M-10)*(M-10)"), 4) == Monotone::NotCertified);
    CHECK(certify_monotone(parse_param_coeff("(M-10)*(M-10)"), 10) ==
          Monotone::IncreasingOnTail);
}

TEST_CASE("certified decrease implies pointwise decrease") {
    auto decreasing = {parse_param_coeff("8*M/(3*(M-2))"), parse_param_coeff("2*M/(M-2)"),
                       parse_param_coeff("4*M/(M-3)"), parse_param_coeff("10*M/(3*(M-2))"),
                       parse_param_coeff("4*M/(M-1)")};
    for (const auto& c : decreasing) {
        REQUIRE(certify_monotone(c, 4) == Monotone::DecreasingOnTail);
        Rat prev = c.eval_at(4);
        for (int m = 5; m < 60; ++m) {
            Rat cur = c.eval_at(m);
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("certified-monotone values approach the limit") {
    ParamCoeff c = parse_param_coeff("8*M/(3*(M-2))");
    Rat limit = *c.limit_at_infinity();
    Rat gap = c.eval_at(10) - limit;
    for (int m = 11; m < 200; m += 7) {
        Rat g = c.eval_at(m) - limit;
        CHECK(g >= Rat(0));
        CHECK(g <= gap);
        gap = g;
    }
}

TEST_CASE("coefficient field operations") {
    ParamCoeff a = parse_param_coeff("2*M/(M-2)");
    ParamCoeff b = parse_param_coeff("4/(M-2)");
    CHECK(a - b == parse_param_coeff("2"));
    CHECK(a * parse_param_coeff("(M-2)/(2*M)") == parse_param_coeff("1"));
    CHECK((a / b).eval_at(6) == Rat(3));
    CHECK(parse_param_coeff("9*(M-1)/(8*M)") == parse_param_coeff("9/8 * (1 - 1/M)"));
}

TEST_CASE("tail sign certification handles roots and touch points") {
    // (M-10)^2 touches zero at 10 but never goes negative.
    IntPoly touch = parse_param_coeff("(M-10)*(M-10)").num();
    CHECK(nonneg_on_tail(touch, 4));
    CHECK(!nonpos_on_tail(touch, 4));
    // (M-10)^2 (M-20) crosses at 20; sign is mixed on [4, inf) but settled
    // beyond the last root.
    IntPoly crossing = parse_param_coeff("(M-10)*(M-10)*(M-20)").num();
    CHECK(!nonneg_on_tail(crossing, 4));
    CHECK(!nonpos_on_tail(crossing, 4));
    CHECK(nonneg_on_tail(crossing, 20));
    CHECK(nonpos_on_tail(crossing, Int(-50)) == false);
    // Root exactly at the tail start is fine for weak sign claims.
    IntPoly at_start = parse_param_coeff("(M-4)*(M+1)").num();
    CHECK(nonneg_on_tail(at_start, 4));
    CHECK(no_root_on_tail(at_start, 5));
    CHECK(!no_root_on_tail(at_start, 4));
    CHECK(!no_root_on_tail(at_start, 3));
    // Dense root clusters are counted exactly.
    IntPoly many = parse_param_coeff("(M-5)*(M-6)*(M-7)*(M-8)").num();
    CHECK(count_real_roots(many, Rat(4), Rat(9)) == 4);
    CHECK(count_real_roots(many, Rat(5), Rat(7)) == 1);  // open interval keeps only the 6
    CHECK(nonneg_on_tail(many, 8));
}

TEST_CASE("max coefficients resolve by exact comparison") {
    dsl::Lexer lx("max(3, 8*M/(3*(M-2)))");
    auto no_vars = [](const std::string&) { return false; };
    auto reject = [](const dsl::Token&) { throw Error("unexpected variable"); };
    dsl::LinForm f = dsl::parse_expression(lx, no_vars, reject);
    REQUIRE(f.const_mx.has_value());
    CoeffExpr ce;
    ce.mx = *f.const_mx;
    CHECK(ce.eval_at(15) == Rat(40, 13));  // fraction branch above 3
    CHECK(ce.eval_at(18) == Rat(3));       // branches tie at 18
    CHECK(ce.eval_at(30) == Rat(3));  // constant branch wins
    CHECK(*ce.limit_at_infinity() == Rat(3));
    MonotoneFlags fl = ce.monotone(4);
    CHECK(fl.nonincreasing);
    CHECK(!fl.nondecreasing);
}
