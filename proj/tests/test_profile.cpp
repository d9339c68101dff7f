#include "doctest.h"

#include <cmath>

#include "ftlab/profile.hpp"

using namespace ftlab;

TEST_CASE("reference profile resolves c_p below 1e-2 and nests under refinement") {
    const ReferenceProfile prof = reference_profile(1.5, 400.0, 1 << 16);
    CHECK(prof.cp.width() < 1e-2);
    CHECK(prof.cp.lo > 0.0);

    const ReferenceProfile finer = reference_profile(1.5, 800.0, 1 << 17);
    CHECK(prof.cp.contains(finer.cp)); // larger X and finer cells only tighten
    CHECK(finer.cp.width() <= prof.cp.width());

    const ReferenceProfile more_cells = reference_profile(1.5, 400.0, 1 << 17);
    CHECK(prof.cp.contains(more_cells.cp));
}

TEST_CASE("unresolved tolerance raises with the achieved width") {
    CHECK_THROWS_AS(reference_profile(1.5, 50.0, 64, ProfileOptions{1e-6, false}),
                    UnresolvedError);
    try {
        reference_profile(1.5, 50.0, 64, ProfileOptions{1e-6, false});
    } catch (const UnresolvedError& e) {
        CHECK(e.achieved > 1e-6);
    }
}

TEST_CASE("boundary mode p = 2 reproduces the Parseval value") {
    CHECK_THROWS_AS(reference_profile(2.0, 100.0, 1024), DomainError);
    const ProfileOptions boundary{0.0, true};
    const ReferenceProfile prof = reference_profile(2.0, 1500.0, 1 << 21, boundary);
    // c_2 = 2^{-1/2} ||F f_1||_2 = sqrt(2 pi).
    const double c2 = std::sqrt(2.0 * 3.14159265358979323846);
    CHECK(prof.cp.contains(c2));
    CHECK(prof.cp.width() < 2e-3);
}

TEST_CASE("scale invariance: independently rescaled brackets intersect") {
    const ReferenceProfile prof = reference_profile(1.5, 400.0, 1 << 16);
    CHECK(scaled_norm_bracket(1.5, 1.0, prof).contains(prof.cp));
    for (double a : {0.25, 32.0}) {
        const Bracket b = scaled_norm_bracket(1.5, a, prof);
        CHECK(b.intersects(prof.cp));
        CHECK(b.width() < 1e-2);
    }
}

TEST_CASE("profile serialization carries the certificate fields") {
    const ReferenceProfile prof = reference_profile(1.5, 100.0, 4096);
    const auto j = profile_to_json(prof);
    CHECK(j["p"] == 1.5);
    CHECK(j["X"] == 100.0);
    CHECK(j["cells"] == 4096);
    CHECK(j["tail_constant"] == doctest::Approx(2.0 * std::pow(0.5, 1.0 / 1.5)));
    CHECK(double(j["cp"]["lo"]) <= double(j["cp"]["hi"]));
}

TEST_CASE("two-dimensional cube estimate stays near the certified 1-d value") {
    // Labeled low-resolution estimate; only sanity-checked for finiteness and
    // rough magnitude against the 1-d constant.
    const double est = estimate_cp_cube(1.5, 2, 60.0, 1500);
    CHECK(std::isfinite(est));
    CHECK(est > 1.0);
    CHECK(est < 30.0);
}
