#pragma once

#include <cstddef>

#include "ftlab/bracket.hpp"
#include "ftlab/lorentz.hpp"
#include "ftlab/rearrangement.hpp"
#include "ftlab/sinc.hpp"

#include "json.hpp"

namespace ftlab {

struct ProfileOptions {
    double tolerance = 0.0;      // > 0: fail with UnresolvedError if cp is wider
    bool allow_boundary = false; // permit p = 2 (Parseval sanity anchor)
};

// Certified reference computation at scale a = 1: enclosure of |F g_1| on
// [0, X] plus the bracket for c_p = ||F g_1||_{p',p}.  All frequency-side
// witness quantities are derived from this object and transferred to other
// scales through the exact scaling laws.
struct ReferenceProfile {
    double p;
    double X;
    std::size_t cells;
    GridEnclosure grid;
    GridOrder order;
    RearrangementEnclosure full;
    Bracket cp;

    LorentzIndex index() const { return LorentzIndex::dual_pair(p); }
};

ReferenceProfile reference_profile(double p, double X, std::size_t cells,
                                   ProfileOptions opts = {});

// ||F g_a||_{p',p} recomputed from a fresh grid at scale a (independent
// sampling; does not invoke the scale identity).  Brackets for different a
// must pairwise intersect.
Bracket scaled_norm_bracket(double p, double a, const ReferenceProfile& ref,
                            ProfileOptions opts = {});

nlohmann::ordered_json profile_to_json(const ReferenceProfile& profile);

// Point estimate of ||F g_1||_{p',p} for the d-dimensional cube test function
// (tensor point grid, truncated, no certification).  d > 1 rearrangement
// enclosures are out of scope; this is a labeled low-resolution estimate.
double estimate_cp_cube(double p, int d, double X, std::size_t cells_per_axis);

} // namespace ftlab
