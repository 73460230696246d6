#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigver/chains.hpp"

#include <random>

using namespace rigver;

namespace {
const std::string kData = RIGVER_TEST_DATA_DIR;
ChainSpec load(const std::string& name) {
    return parse_chain_file(kData + "/chains/" + name + ".chain");
}
}  // namespace

TEST_CASE("telescoping products collapse to (end+1)/start") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> lo(2, 150), len(0, 50);
    for (int t = 0; t < 400; ++t) {
        int a = lo(rng), b = a + len(rng) - 1;  // b = a-1 is the empty product
        Telescope tel{ParamCoeff(Rat(a)), ParamCoeff(Rat(b))};
        ChainSpec c;
        c.name = "t";
        c.initial = ParamCoeff(Rat(1));
        c.factors.push_back(tel);
        c.m_domain = MDomain{Int(4), std::nullopt};
        Rat direct(1);
        for (int i = a; i <= b; ++i) direct *= Rat(i + 1, i);
        CHECK(chain_value(c, 10) == direct);
        CHECK(chain_value(c, 10) == Rat(b + 1, a));
    }
}

TEST_CASE("the point-multiplicity chain is 9/8 for every admissible M") {
    ChainSpec c = load("prop3_1");
    for (int m : {5, 6, 14, 100, 500}) CHECK(chain_value(c, m) == Rat(9, 8));
    CHECK(chain_closed_form(c) == parse_param_coeff("9/8"));
}

TEST_CASE("codimension-2 chain is 3/2") {
    ChainSpec c = load("prop3_2");
    for (int m : {4, 5, 17, 80}) CHECK(chain_value(c, m) == Rat(3, 2));
}

TEST_CASE("section chains have the recorded closed forms") {
    ChainSpec j1 = load("prop3_3_j1");
    CHECK(chain_closed_form(j1) == parse_param_coeff("9/8 * (1 - 1/M)"));
    ChainSpec j2 = load("prop3_3_j2");
    CHECK(chain_closed_form(j2) == parse_param_coeff("9/8 * (1 - 2/M)"));
    CHECK(chain_value(j2, 18) == Rat(1));
}

TEST_CASE("quadratic-point chain: closed form and the threshold 14") {
    ChainSpec c = load("sec1_5");
    CHECK(chain_closed_form(c) == parse_param_coeff("7*(M-2)/(6*M)"));
    CHECK(chain_value(c, 14) == Rat(1));  // 7*12/(6*14)
    ChainThreshold th = threshold_m(c);
    REQUIRE(th.first_ge.has_value());
    CHECK(*th.first_ge == 14);
    REQUIRE(th.first_gt.has_value());
    CHECK(*th.first_gt == 15);
    CHECK(th.tail_certified);
    CHECK(th.method == "monotone");
}

TEST_CASE("regularity-count expression reaches 1 at M = 13") {
    ChainSpec c = load("cor1_1");
    ChainThreshold th = threshold_m(c);
    REQUIRE(th.first_ge.has_value());
    CHECK(*th.first_ge == 13);
    CHECK(th.tail_certified);
    CHECK(chain_value(c, 13) == Rat(1));
    CHECK(chain_value(c, 12) == Rat(-4));
}

TEST_CASE("independent scan oracle fixes the section-chain threshold") {
    // Direct integer scan over the closed form, no chain machinery.
    ParamCoeff closed = parse_param_coeff("9/8 * (1 - 2/M)");
    int first = 0;
    for (int m = 6; m <= 4000 && !first; ++m)
        if (closed.eval_at(m) >= Rat(1)) first = m;
    CHECK(first == 18);
    ChainThreshold th = threshold_m(load("prop3_3_j2"));
    REQUIRE(th.first_ge.has_value());
    CHECK(Int(first) == *th.first_ge);
}

TEST_CASE("closed form equals the factored value on the scanned domain") {
    for (const char* name : {"prop3_1", "prop3_2", "prop3_3_j1", "prop3_3_j2", "sec1_5",
                             "prop1_3", "cor1_1"}) {
        ChainSpec c = load(name);
        ParamCoeff cf = chain_closed_form(c);
        for (Int m = c.m_domain.lo; m < c.m_domain.lo + 40; ++m)
            CHECK(cf.eval_at(m) == chain_value(c, m));
    }
}

TEST_CASE("threshold consistency under certified growth") {
    ChainSpec c = load("sec1_5");
    ChainThreshold th = threshold_m(c);
    REQUIRE(th.first_ge.has_value());
    Int t = *th.first_ge;
    CHECK(chain_value(c, t - 1) < *c.bound);
    CHECK(chain_value(c, t) >= *c.bound);
}

TEST_CASE("degenerate and error paths") {
    ChainSpec c = load("prop3_3_j2");
    CHECK_THROWS_AS(chain_value(c, 5), DomainError);  // below the domain
    ChainSpec empty;
    empty.name = "empty";
    empty.initial = ParamCoeff(Rat(1));
    Telescope tel{ParamCoeff(Rat(5)), ParamCoeff(Rat(2))};
    empty.factors.push_back(tel);
    empty.m_domain = MDomain{Int(4), std::nullopt};
    CHECK_THROWS_AS(chain_value(empty, 10), EmptyRange);
    ChainSpec nobound = load("prop1_3");
    CHECK_THROWS_AS(threshold_m(nobound), Error);
}

TEST_CASE("non-regularity codimension count") {
    CHECK(codim_nonreg(1) == Rat(3));
    CHECK(codim_nonreg(4) == Rat(12));
    CHECK(codim_nonreg(10) == Rat(57));
    CHECK_THROWS_AS(codim_nonreg(0), DomainError);
}
