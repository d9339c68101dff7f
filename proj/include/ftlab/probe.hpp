#pragma once

#include <cstdint>
#include <vector>

#include "ftlab/bracket.hpp"
#include "ftlab/piecewise.hpp"
#include "ftlab/rng.hpp"
#include "ftlab/witness.hpp"

namespace ftlab {

struct CoefficientVector {
    std::vector<double> alpha;

    double lq_norm(double q) const; // (sum |alpha_j|^q)^{1/q}
    double l1_weighted(const std::vector<double>& weights) const;
    bool is_zero() const;
};

CoefficientVector random_sphere_point(Rng& rng, int k, double p);

// Exact piecewise-constant representation of sum_j alpha_j g_{a_j} (nested
// symmetric plateaus, at most 2 J + 1 pieces).
PiecewiseConstantFn assemble(const WitnessFamily& family, const CoefficientVector& coeffs);

// Exact ||f||_p of the assembled function; the theorem guarantees
// upper_estimate <= A (1 + eps) for every coefficient vector.
double upper_estimate(const WitnessFamily& family, const CoefficientVector& coeffs);

// Certified lower bound on ||F f||_{p',p} along the proof chain: disjoint
// windowed integrals summed with l^p weights minus the certified off-window
// remainders.  The bracket encloses the chain expression; .lo is the bound.
Bracket chain_lower_bound(const WitnessFamily& family, const CoefficientVector& coeffs);

// Direct enclosure of ||sum_j alpha_j F g_{a_j}||_{p',p} on a logarithmic
// multi-scale grid.  Intended for small families (the scale spread limits
// the grid); wide but certified.
struct DirectGridPolicy {
    double growth = 1.0 + 1e-3;   // geometric cell ratio
    double x_min = 1e-3;          // end of the single linear cell at the origin
    double span_factor = 1.25;    // grid reaches span_factor * max_j(nu_hi a_j)
    std::size_t max_cells = 500000;
    int max_levels = 3;
};
Bracket direct_lorentz_norm(const WitnessFamily& family, const CoefficientVector& coeffs,
                            DirectGridPolicy policy = {});

enum class TargetNorm { lorentz, lebesgue };

struct RatioReport {
    int k = 0;
    TargetNorm target = TargetNorm::lorentz;
    double min_ratio = 0.0;
    CoefficientVector argmin;
    std::uint64_t seed = 0;
    int budget = 0;
    bool converged = false;
    bool model = false; // uses synthetic levels beyond the built family
};

// Minimum of ||F f||_target / ||f||_p over the l^p coefficient sphere of
// span{g_{a_1}, ..., g_{a_k}}, by multi-start coordinate descent.  Numerators
// are the certified lower-bound machinery per target; k beyond the built
// family extends it by the synthetic disjoint-support model (reported as
// model = true).
RatioReport min_ratio(const WitnessFamily& family, int k, TargetNorm target, int budget,
                      std::uint64_t seed);

// Least-squares slope of log(min_ratio) against log(k).
double decay_exponent(const std::vector<RatioReport>& reports);

} // namespace ftlab
