#include "doctest.h"

#include <cmath>
#include <limits>

#include "ftlab/lorentz.hpp"
#include "ftlab/rearrangement.hpp"
#include "ftlab/sinc.hpp"
#include "test_support.hpp"

using namespace ftlab;

TEST_CASE("Lorentz norm of an indicator rearrangement in closed form") {
    const StepRearrangement R({4.0}, {1.0});
    // (r/s)^{1/s} m^{1/r} with r = 3, s = 1.5, m = 4 -> 2^{4/3}.
    CHECK(lorentz_norm(R, LorentzIndex(3.0, 1.5)) ==
          doctest::Approx(std::pow(2.0, 4.0 / 3.0)).epsilon(1e-14));
    CHECK(lorentz_norm(StepRearrangement(), LorentzIndex(3.0, 1.5)) == 0.0);
}

TEST_CASE("(p,p) Lorentz norm equals the L^p norm") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = testing::random_pc(rng);
        for (double p : {1.0, 1.25, 1.5, 2.0, 3.0}) {
            const double direct = lp_norm(f, p);
            const double viaR = lorentz_norm(rearrange(f), LorentzIndex(p, p));
            CHECK(direct == doctest::Approx(viaR).epsilon(1e-12));
        }
    }
}

TEST_CASE("weak norm takes the sup at right endpoints") {
    const StepRearrangement R({1.0, 4.0}, {2.0, 1.0});
    const double expected = std::max(std::pow(1.0, 1.0 / 3.0) * 2.0, std::pow(4.0, 1.0 / 3.0));
    CHECK(lorentz_norm(R, LorentzIndex(3.0, std::numeric_limits<double>::infinity())) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("L^p norms of the scaled indicators") {
    // ||f_a||_p = (2/a)^{1/p}; a = 2, p = 1.5 gives 1.
    const auto f2 = PiecewiseConstantFn::indicator(-0.5, 0.5);
    CHECK(lp_norm(f2, 1.5) == doctest::Approx(1.0).epsilon(1e-14));
    for (double a : {1.0, 2.0, 10.0, 100.0}) {
        for (double p : {1.25, 1.5, 1.75}) {
            const auto fa = PiecewiseConstantFn::indicator(-1.0 / a, 1.0 / a);
            CHECK(lp_norm(fa, p) == doctest::Approx(std::pow(2.0 / a, 1.0 / p)).epsilon(1e-13));
            // ||g_a||_p = 1 for the normalized test function.
            const auto ga = fa.scaled(std::pow(2.0 / a, -1.0 / p));
            CHECK(lp_norm(ga, p) == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
    CHECK(lp_norm(PiecewiseConstantFn(), 1.5) == 0.0);
    CHECK_THROWS_AS(lp_norm(f2, 0.5), DomainError);
}

TEST_CASE("positive homogeneity") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = testing::random_pc(rng);
        const double lam = std::exp(rng.uniform(-2, 2));
        const auto g = f.scaled(lam);
        CHECK(lp_norm(g, 1.5) == doctest::Approx(lam * lp_norm(f, 1.5)).epsilon(1e-12));
        const auto idx = LorentzIndex::dual_pair(1.5);
        CHECK(lorentz_norm(rearrange(g), idx) ==
              doctest::Approx(lam * lorentz_norm(rearrange(f), idx)).epsilon(1e-12));
    }
}

TEST_CASE("triangle inequality for the (p',p) norm, 1 < p < 2") {
    Rng rng(47);
    for (double p : {1.2, 1.5, 1.8}) {
        const auto idx = LorentzIndex::dual_pair(p);
        for (int trial = 0; trial < 120; ++trial) {
            const auto f = testing::random_pc(rng);
            const auto g = testing::random_pc(rng);
            const double both = lorentz_norm(rearrange(f + g), idx);
            const double split = lorentz_norm(rearrange(f), idx) + lorentz_norm(rearrange(g), idx);
            CHECK(both <= split + 1e-10);
        }
    }
}

TEST_CASE("enclosure norms: degenerate, empty window, feature gate") {
    const std::vector<double> vals = {2.0, 1.0, 0.5};
    const GridEnclosure g = GridEnclosure::uniform(3.0, vals, vals, 0.0);
    const auto encl = rearrange_enclosure(g);
    const auto idx = LorentzIndex::dual_pair(1.5);
    const Bracket b = lorentz_norm(encl, idx);
    CHECK(b.width() <= 1e-12);
    CHECK(b.mid() == doctest::Approx(lorentz_norm(encl.upper, idx)).epsilon(1e-13));

    const Bracket outside = lorentz_norm(encl, idx, Window{10.0, 20.0});
    CHECK(outside.lo == 0.0);
    CHECK(outside.hi == 0.0);

    CHECK_THROWS_AS(
        lorentz_norm(encl, LorentzIndex(3.0, std::numeric_limits<double>::infinity()),
                     Window{0.5, 1.0}),
        FeatureError);
}

namespace {

GridEnclosure sinc_f1_grid(double X, std::size_t cells) {
    std::vector<double> b(cells + 1), lo(cells), hi(cells);
    for (std::size_t i = 0; i <= cells; ++i)
        b[i] = X * (static_cast<double>(i) / static_cast<double>(cells));
    for (std::size_t i = 0; i < cells; ++i) {
        const ValueRange r = sinc_abs_range(b[i], b[i + 1]);
        lo[i] = r.lo;
        hi[i] = r.hi;
    }
    return GridEnclosure(std::move(b), std::move(lo), std::move(hi), 2.0);
}

} // namespace

TEST_CASE("enclosure bracket contains the sort-based quadrature oracle") {
    const double p = 1.5;
    const auto idx = LorentzIndex::dual_pair(p);
    const Bracket bracket = lorentz_norm(rearrange_enclosure(sinc_f1_grid(200.0, 20000)), idx);

    // Oracle: rearrangement by sorting 10x midpoint samples, then direct
    // power-rule quadrature of the step profile; truncation ignored.
    const double X = 200.0;
    const std::size_t n = 200000;
    const double w = X / static_cast<double>(n);
    std::vector<std::pair<double, double>> masses(n);
    for (std::size_t i = 0; i < n; ++i)
        masses[i] = {std::abs(sinc2((static_cast<double>(i) + 0.5) * w)), 2.0 * w};
    const StepRearrangement oracleR = StepRearrangement::from_level_masses(std::move(masses));
    double oracle_pow = 0.0;
    double start = 0.0;
    const double e = p / conjugate_exponent(p);
    for (std::size_t k = 0; k < oracleR.steps(); ++k) {
        oracle_pow += std::pow(oracleR.values()[k], p) *
                      (std::pow(oracleR.ends()[k], e) - std::pow(start, e)) / e;
        start = oracleR.ends()[k];
    }
    const double oracle = std::pow(oracle_pow, 1.0 / p);

    const double pad = 0.03; // oracle truncation at X plus sampling error
    CHECK(bracket.lo <= oracle + pad);
    CHECK(bracket.hi >= oracle - pad);
    CHECK(bracket.width() < 0.15);
}

TEST_CASE("window and refinement monotonicity of enclosure brackets") {
    const auto idx = LorentzIndex::dual_pair(1.5);
    const auto coarse = rearrange_enclosure(sinc_f1_grid(100.0, 4000));
    const auto fine = rearrange_enclosure(sinc_f1_grid(100.0, 8000));
    const Bracket bc = lorentz_norm(coarse, idx);
    const Bracket bf = lorentz_norm(fine, idx);
    CHECK(bf.lo >= bc.lo - 1e-12);
    CHECK(bf.hi <= bc.hi + 1e-12);

    const Bracket narrow = lorentz_norm(coarse, idx, Window{1.0, 5.0});
    const Bracket wide = lorentz_norm(coarse, idx, Window{0.5, 9.0});
    CHECK(narrow.lo <= wide.lo + 1e-12);
    CHECK(narrow.hi <= wide.hi + 1e-12);
}

TEST_CASE("sequence Lorentz norms") {
    const auto idx = LorentzIndex::dual_pair(1.5);

    // A single entry is its own norm.
    CHECK(sequence_lorentz_norm({{3.7}, 0.0}, idx).lo == doctest::Approx(3.7));
    CHECK(sequence_lorentz_norm({{3.7}, 0.0}, idx).width() == 0.0);

    // Flat head vs direct summation.
    for (int K : {1, 5, 40}) {
        MagnitudeSequence seq;
        seq.head.assign(static_cast<std::size_t>(K), 1.0);
        double direct = 0.0;
        for (int k = 1; k <= K; ++k)
            direct += std::pow(std::pow(static_cast<double>(k), 1.0 / 3.0 - 1.0 / 1.5), 1.5);
        const Bracket b = sequence_lorentz_norm(seq, idx);
        CHECK(b.lo == doctest::Approx(std::pow(direct, 1.0 / 1.5)).epsilon(1e-13));
        CHECK(b.width() == 0.0);
    }

    // Ranked-tail contract: c = (1,...,1, 5/11, 5/12, ...) with a 10-entry head.
    MagnitudeSequence seq;
    seq.head.assign(10, 1.0);
    seq.tail_T = 5.0;
    const Bracket b = sequence_lorentz_norm(seq, idx);
    double exact = 0.0;
    for (int k = 1; k <= 10; ++k) exact += std::pow(static_cast<double>(k), 1.5 / 3.0 - 1.0);
    for (int m = 11; m <= 2000000; ++m)
        exact += std::pow(static_cast<double>(m), 1.5 / 3.0 - 1.0) *
                 std::pow(5.0 / static_cast<double>(m), 1.5);
    const double exact_norm = std::pow(exact, 1.0 / 1.5);
    CHECK(b.lo <= exact_norm);
    CHECK(b.hi >= exact_norm);

    // Longer heads only tighten the bracket.
    MagnitudeSequence longer;
    longer.head.assign(10, 1.0);
    for (int m = 11; m <= 200; ++m) longer.head.push_back(5.0 / static_cast<double>(m));
    longer.tail_T = 5.0;
    const Bracket b2 = sequence_lorentz_norm(longer, idx);
    CHECK(b2.lo >= b.lo - 1e-13);
    CHECK(b2.hi <= b.hi + 1e-13);
    CHECK(b2.lo <= exact_norm);
    CHECK(b2.hi >= exact_norm);
}
