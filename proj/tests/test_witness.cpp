#include "doctest.h"

#include <cmath>

#include "ftlab/lorentz.hpp"
#include "ftlab/witness.hpp"

using namespace ftlab;

namespace {

// Small fast policy for unit tests; acceptance runs the full resolution.
BuildPolicy test_policy() {
    BuildPolicy policy;
    policy.cp_X = 400.0;
    policy.cp_cells = std::size_t{1} << 16;
    policy.win_cells = std::size_t{1} << 18;
    return policy;
}

} // namespace

TEST_CASE("admissible eta meets both time-side inequalities") {
    const double p = 1.5;
    for (double gamma : {0.5, 0.125, 0.03}) {
        const double eta = admissible_eta(p, gamma);
        CHECK(eta > 0.0);
        CHECK(eta < 1.0);
        // ||g_1 chi_G||_p = (1-eta)^{1/p} and ||g_1 chi_E||_p = eta^{1/p}.
        CHECK(std::pow(1.0 - eta, 1.0 / p) >= 1.0 - gamma);
        CHECK(std::pow(eta, 1.0 / p) <= gamma);
        // And on the exact piecewise level:
        const double s = std::pow(2.0, -1.0 / p);
        const auto g_inner = PiecewiseConstantFn::indicator(-eta, eta, s);
        const auto g_outer = PiecewiseConstantFn::indicator(-1, -eta, s) +
                             PiecewiseConstantFn::indicator(eta, 1, s);
        CHECK(lp_norm(g_outer, p) >= 1.0 - gamma);
        CHECK(lp_norm(g_inner, p) <= gamma);
    }
    // The binding constraint for p > 1 is eta <= gamma^p; the looser cap
    // 1 - (1-gamma)^p evaluates to 0.18152 at gamma = 0.125.
    CHECK(1.0 - std::pow(0.875, 1.5) == doctest::Approx(0.18152).epsilon(1e-4));
    CHECK(admissible_eta(1.5, 0.125) == doctest::Approx(0.99 * std::pow(0.125, 1.5)));
    // gamma -> 0 sends eta -> 0.
    CHECK(admissible_eta(1.5, 1e-6) < 1e-8);
    CHECK_THROWS_AS(admissible_eta(2.5, 0.1), DomainError);
    CHECK_THROWS_AS(admissible_eta(1.5, 0.0), DomainError);
    CHECK_THROWS_AS(admissible_eta(1.5, 1.0), DomainError);
}

TEST_CASE("frequency window certifies both sides of the budget") {
    const double p = 1.5;
    const ReferenceProfile cp_prof = reference_profile(p, 400.0, 1 << 16);
    const ReferenceProfile win_prof = reference_profile(p, 600.0, 1 << 18);

    const double gamma = 0.125;
    const auto fw = frequency_window(p, gamma, win_prof, cp_prof.cp);
    CHECK(fw.nu_lo > 0.0);
    CHECK(fw.nu_lo < fw.nu_hi);
    CHECK(fw.off_upper.hi <= cp_prof.cp.lo * gamma / 2.0);
    // Complementary inequality at the (1 - gamma/2) level.
    CHECK(fw.in_window.lo >= cp_prof.cp.hi * (1.0 - gamma / 2.0));

    // Halving gamma strictly enlarges the window on both sides.
    const auto fw2 = frequency_window(p, gamma / 2.0, win_prof, cp_prof.cp);
    CHECK(fw2.nu_lo < fw.nu_lo);
    CHECK(fw2.nu_hi > fw.nu_hi);

    // Degenerate gamma = 1 certifies immediately with a small window.
    const auto fw1 = frequency_window(p, 1.0, win_prof, cp_prof.cp);
    CHECK(fw1.nu_hi <= 64.0);
}

TEST_CASE("rearrangement window reaches the (1 - gamma) target") {
    const double p = 1.5;
    const ReferenceProfile cp_prof = reference_profile(p, 400.0, 1 << 16);
    const ReferenceProfile win_prof = reference_profile(p, 600.0, 1 << 18);
    const double gamma = 0.125;
    const auto fw = frequency_window(p, gamma, win_prof, cp_prof.cp);
    const XRange band{fw.nu_lo, fw.nu_hi};
    const auto encl =
        rearrange_restricted(win_prof.grid, std::span<const XRange>(&band, 1), win_prof.order);
    const auto rw = rearrangement_window(p, gamma, encl, fw, cp_prof.cp);
    CHECK(rw.delta_lo > 0.0);
    CHECK(rw.delta_lo < rw.delta_hi);
    CHECK(rw.delta_hi < 2.0 * (fw.nu_hi - fw.nu_lo));
    CHECK(rw.windowed.lo >= cp_prof.cp.hi * (1.0 - gamma));

    // Re-derive at doubled resolution: the certified value only improves.
    const ReferenceProfile finer = reference_profile(p, 600.0, 1 << 19);
    const auto encl2 =
        rearrange_restricted(finer.grid, std::span<const XRange>(&band, 1), finer.order);
    const Bracket again = lorentz_norm(encl2, LorentzIndex::dual_pair(p),
                                       Window{rw.delta_lo, rw.delta_hi});
    CHECK(again.lo >= rw.windowed.lo - 1e-12);
}

TEST_CASE("next scale dominates the threshold ratios") {
    WitnessLevel prev;
    prev.j = 1;
    prev.a = BigRational(1);
    prev.eta = 1.0 - 1e-9; // unit-threshold degenerate case
    prev.freq.nu_hi = 1.0;
    prev.rear.delta_hi = 1.0;
    const BigRational a2 = next_scale(prev, 0.5, 1.0, 1.0, 1.0 + 1e-6, 1 << 16);
    CHECK(to_double(a2) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(a2 > BigRational(1));

    WitnessLevel real;
    real.j = 1;
    real.a = BigRational(1);
    real.eta = 0.18152; // the looser time-side cap at gamma = 0.125
    real.freq.nu_hi = 40.0;
    real.rear.delta_hi = 70.0;
    const BigRational a3 = next_scale(real, 0.05, 2.0, 1.0, 1.001, 1);
    CHECK(to_double(a3) >= 70.0); // at least max{1/eta, 20, 70}
    CHECK(boost::multiprecision::denominator(a3) == 1); // integer scales

    CHECK_THROWS_AS(next_scale(real, 0.5, 2.0, 1.0, 1.001, 1), DomainError); // eta grows
    CHECK_THROWS_AS(next_scale(real, 0.05, 2.0, 1.0, 0.999, 1), DomainError);
}

TEST_CASE("family construction certifies every level and stays disjoint") {
    const auto fam = build_family(1.5, 0.25, 2, test_policy());
    CHECK(fam.certified);
    REQUIRE(fam.count() == 2);
    CHECK(fam.levels[0].a == BigRational(1));
    CHECK(fam.levels[1].a > fam.levels[0].a);
    for (const auto& lv : fam.levels) {
        CHECK(lv.margin_time_g > 0.0);
        CHECK(lv.margin_time_e > 0.0);
        CHECK(lv.margin_off > 0.0);
        CHECK(lv.margin_window > 0.0);
    }
    // Monotone thresholds across levels.
    CHECK(fam.levels[1].eta < fam.levels[0].eta);
    CHECK(fam.levels[1].freq.nu_lo < fam.levels[0].freq.nu_lo);
    CHECK(fam.levels[1].freq.nu_hi > fam.levels[0].freq.nu_hi);
    CHECK(verify_disjoint(fam));

    CHECK_THROWS_AS(build_family(1.5, 0.25, 0, test_policy()), DomainError);
    CHECK_THROWS_AS(build_family(2.5, 0.25, 1, test_policy()), DomainError);
}

TEST_CASE("single-level family matches the threshold searches") {
    const auto fam = build_family(1.5, 0.25, 1, test_policy());
    REQUIRE(fam.count() == 1);
    CHECK(fam.levels[0].a == BigRational(1));
    CHECK(fam.levels[0].gamma == doctest::Approx(0.125));
    CHECK(fam.levels[0].eta == doctest::Approx(admissible_eta(1.5, 0.125)));
}

TEST_CASE("reverify at doubled resolution preserves margins") {
    const auto fam = build_family(1.5, 0.25, 2, test_policy());
    const auto fam2 = reverify(fam, 2.0);
    CHECK(fam2.certified);
    for (int j = 0; j < fam.count(); ++j) {
        CHECK(fam2.levels[j].margin_off > 0.0);
        CHECK(fam2.levels[j].margin_window > 0.0);
        // Finer certificates are at least as strong.
        CHECK(fam2.levels[j].freq.off_upper.hi <= fam.levels[j].freq.off_upper.hi + 1e-12);
        CHECK(fam2.levels[j].rear.windowed.lo >= fam.levels[j].rear.windowed.lo - 1e-12);
    }
}

TEST_CASE("certificate serialization round-trips") {
    const auto fam = build_family(1.5, 0.25, 2, test_policy());
    const auto doc = family_to_json(fam);
    CHECK(doc.at("kind") == "witness-certificate");
    const auto back = family_from_json(nlohmann::json::parse(doc.dump()));
    CHECK(back.certified);
    CHECK(back.p == fam.p);
    CHECK(back.epsilon == fam.epsilon);
    REQUIRE(back.count() == fam.count());
    for (int j = 0; j < fam.count(); ++j) {
        CHECK(back.levels[j].a == fam.levels[j].a);
        CHECK(back.levels[j].eta == fam.levels[j].eta);
        CHECK(back.levels[j].freq.nu_hi == fam.levels[j].freq.nu_hi);
        CHECK(back.levels[j].rear.windowed.lo == fam.levels[j].rear.windowed.lo);
    }
}
