#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigver/arith.hpp"
#include "rigver/dsl.hpp"

#include <random>

using namespace rigver;

namespace {
std::mt19937 rng(12345);

Rat random_rat() {
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 30);
    return Rat(num(rng), den(rng));
}

QuadExt random_qext() { return QuadExt(random_rat(), random_rat()); }
}  // namespace

TEST_CASE("rationals are canonical") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK(Rat(6, 3).is_integer());
    CHECK(Rat(1, 3).den() == 3);
    CHECK_THROWS_AS(Rat(Int(1), Int(0)), DomainError);
    CHECK(Rat::parse("40/13") == Rat(40, 13));
    CHECK(Rat::parse("-7") == Rat(-7));
    CHECK(Rat(40, 13).str() == "40/13");
}

TEST_CASE("rational arithmetic is exact: associativity and distributivity") {
    for (int t = 0; t < 500; ++t) {
        Rat a = random_rat(), b = random_rat(), c = random_rat();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("quadratic extension products") {
    QuadExt one_plus(Rat(1), Rat(1));
    QuadExt one_minus(Rat(1), Rat(-1));
    CHECK(one_plus * one_minus == QuadExt(Rat(-1), Rat(0)));  // conjugate norm
    CHECK(QuadExt::sqrt2() * QuadExt::sqrt2() == QuadExt(2));
    QuadExt c(Rat(10), Rat(2));  // 10 + 2*sqrt2
    CHECK(c * QuadExt(1) == c);
    CHECK(c.str() == "10 + 2*sqrt2");
}

TEST_CASE("quadratic extension comparison against rational bounds") {
    QuadExt c(Rat(10), Rat(2));
    // 2*sqrt2 > 2 because 8 > 4; 2*sqrt2 < 3 because 8 < 9.
    CHECK(cmp(c, QuadExt(12)) == Ord::GT);
    CHECK(cmp(c, QuadExt(13)) == Ord::LT);
    CHECK(cmp(QuadExt(5), QuadExt(5)) == Ord::EQ);
}

TEST_CASE("comparison is a total order: reflexive, antisymmetric, transitive") {
    for (int t = 0; t < 300; ++t) {
        QuadExt x = random_qext(), y = random_qext(), z = random_qext();
        CHECK(cmp(x, x) == Ord::EQ);
        if (cmp(x, y) == Ord::LT) CHECK(cmp(y, x) == Ord::GT);
        if (cmp(x, y) != Ord::GT && cmp(y, z) != Ord::GT) CHECK(cmp(x, z) != Ord::GT);
    }
}

TEST_CASE("exact sign agrees with floating evaluation away from zero") {
    int checked = 0;
    for (int t = 0; t < 10000; ++t) {
        QuadExt x = random_qext();
        double approx = x.to_double();
        if (std::abs(approx) < 1e-9) continue;  // too close to call in floating point
        ++checked;
        CHECK(x.sign() == (approx > 0 ? 1 : -1));
    }
    CHECK(checked > 9000);
}

TEST_CASE("field inverses in Q(sqrt2)") {
    for (int t = 0; t < 200; ++t) {
        QuadExt x = random_qext();
        if (x.is_zero()) continue;
        CHECK(x * x.inv() == QuadExt(1));
    }
    CHECK_THROWS_AS(QuadExt().inv(), DomainError);
}

TEST_CASE("scalar syntax round trip") {
    for (int t = 0; t < 200; ++t) {
        QuadExt x = random_qext();
        CHECK(parse_quadext(x.str()) == x);
    }
    CHECK(parse_quadext("10 + 2*sqrt2") == QuadExt(Rat(10), Rat(2)));
    CHECK(parse_quadext("-1/2") == QuadExt(Rat(-1, 2)));
    CHECK(parse_quadext("sqrt2") == QuadExt::sqrt2());
}
