#include "doctest.h"

#include <cmath>

#include "ftlab/lorentz.hpp"
#include "ftlab/piecewise.hpp"
#include "ftlab/rearrangement.hpp"
#include "test_support.hpp"

using namespace ftlab;

namespace {
PiecewiseConstantFn two_piece() {
    return PiecewiseConstantFn({Piece{0, 3, 1}, Piece{5, 6, 2}});
}
} // namespace

TEST_CASE("distribution of a two-piece function") {
    const auto f = two_piece();
    CHECK(distribution(f, 1.5) == 1.0);
    CHECK(distribution(f, 0.5) == 4.0);
    CHECK(distribution(f, 2.5) == 0.0);
    CHECK_THROWS_AS(distribution(f, 0.0), DomainError);
    CHECK_THROWS_AS(distribution(f, -1.0), DomainError);
}

TEST_CASE("disjoint-support additivity of distribution functions") {
    const auto psi1 = PiecewiseConstantFn::indicator(0, 1);
    const auto psi2 = PiecewiseConstantFn::indicator(2, 3, 3.0);
    const auto sum = psi1 + psi2;
    CHECK(distribution(sum, 2.0) == distribution(psi1, 2.0) + distribution(psi2, 2.0));
    CHECK(distribution(sum, 2.0) == 1.0);

    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = testing::random_pc_in(rng, -10, -5);
        const auto b = testing::random_pc_in(rng, -4, 1);
        const auto c = testing::random_pc_in(rng, 2, 9);
        const auto s = a + b + c;
        for (double tau : {0.25, 0.5, 1.0, 2.0, 4.9}) {
            const double lhs = distribution(s, tau);
            const double rhs = distribution(a, tau) + distribution(b, tau) + distribution(c, tau);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
    }
}

TEST_CASE("canonical form") {
    // Adjacent equal values merge; zero values vanish; pieces sort by lo.
    const PiecewiseConstantFn f({Piece{1, 2, 3}, Piece{0, 1, 3}, Piece{4, 5, 0}});
    REQUIRE(f.size() == 1);
    CHECK(f.pieces()[0].lo == 0.0);
    CHECK(f.pieces()[0].hi == 2.0);
    CHECK(f.pieces()[0].value == 3.0);
    CHECK_THROWS_AS(PiecewiseConstantFn({Piece{0, 2, 1}, Piece{1, 3, 2}}), ValidationError);
    CHECK(PiecewiseConstantFn().is_zero());
}

TEST_CASE("pointwise evaluation and sums") {
    const auto f = two_piece();
    CHECK(f.value_at(0.0) == 1.0);
    CHECK(f.value_at(2.999) == 1.0);
    CHECK(f.value_at(3.0) == 0.0);
    CHECK(f.value_at(5.5) == 2.0);
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = testing::random_pc(rng);
        const auto h = testing::random_pc(rng);
        const auto s = g + h;
        for (int i = 0; i < 20; ++i) {
            const double x = rng.uniform(-11, 11);
            CHECK(s.value_at(x) == doctest::Approx(g.value_at(x) + h.value_at(x)).epsilon(1e-13));
        }
    }
}

TEST_CASE("dilation") {
    const auto f = PiecewiseConstantFn::indicator(0, 4);
    const auto f2 = dilate(f, 2.0);
    REQUIRE(f2.size() == 1);
    CHECK(f2.pieces()[0].hi == 2.0);
    CHECK(dilate(f, 1.0) == f);
    CHECK_THROWS_AS(dilate(f, 0.0), DomainError);
    CHECK_THROWS_AS(dilate(f, -2.0), DomainError);
}

TEST_CASE("dilation commutes with rearrangement: (F_c)^*(s) = F^*(c^d s)") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = testing::random_pc(rng);
        const double c = std::exp(rng.uniform(-2.0, 2.0));
        const auto rc = rearrange(dilate(f, c));
        const auto r = rearrange(f);
        for (int i = 0; i < 10; ++i) {
            const double s = rng.uniform(0.0, 25.0);
            CHECK(rc.value_at(s) == doctest::Approx(r.value_at(c * s)).epsilon(1e-13));
        }
    }
}

TEST_CASE("dilation in dimension two") {
    const BoxFn unit(2, {{Box{{{0, 1}, {0, 1}}}, 1.0}});
    const BoxFn half = dilate(unit, 2.0);
    const auto r = rearrange(half);
    REQUIRE(r.steps() == 1);
    CHECK(r.ends()[0] == doctest::Approx(0.25).epsilon(1e-15)); // step at measure 1/4
    // (F_c)^*(s) = F^*(c^d s) with c^d = 4.
    const auto r0 = rearrange(unit);
    CHECK(r.value_at(0.2) == r0.value_at(0.8));
    CHECK(r.value_at(0.3) == r0.value_at(1.2));
}

TEST_CASE("restriction") {
    const auto f = two_piece();
    const auto g = f.restricted(2, 5.5);
    CHECK(g.support_measure() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(g.value_at(2.5) == 1.0);
    CHECK(g.value_at(5.25) == 2.0);
    CHECK(g.value_at(5.75) == 0.0);
}
