#pragma once

#include <vector>

#include "ftlab/bracket.hpp"
#include "ftlab/lorentz.hpp"
#include "ftlab/piecewise.hpp"
#include "ftlab/rearrangement.hpp"

namespace ftlab {

// Fourier coefficient of the normalized test function g_a on the torus:
// (F g_a)_m = 2 (a/2)^{1/p} sin(m/a)/m for m != 0, and (2/a)^{1/p'} at m = 0.
// Integer scales keep the support inside [-pi, pi].
double fourier_coefficient(long a, double p, long m);

// Coefficient magnitudes over |m| <= cutoff (the zero mode once, each pair
// twice) with the ranked-tail constant T = 2 * 2 (a/2)^{1/p} justified by the
// |coefficient| <= 2 (a/2)^{1/p} / |m| envelope.
MagnitudeSequence coefficient_sequence(long a, double p, long cutoff);

// Even unit-cell step extension of the coefficient sequence: value on
// [m, m+1) is (F g_a)_m for 0 <= m < cells, mirrored to negative x.
struct StepExtension {
    long a = 1;
    double p = 1.5;
    PiecewiseConstantFn fn;
};
StepExtension step_extension(long a, double p, long cells);

// Reverse scaling T_a f = a^{1/p'} f(a x): an exact isometry of
// ||.||_{p',p} that carries F g_a to F g_1 and the step extension to the
// 1/a-grid sampling of F g_1.
PiecewiseConstantFn reverse_scale(const PiecewiseConstantFn& f, long a, double p);

// Exact integral of (psi(t)^{1/p'-1/p} R(t))^p dt against the staircase
// psi = k on [(k-1) w, k w); sweeps both step families jointly.
double staircase_weighted_integral(const StepRearrangement& R, double cell_width, double p);

// Certified sup bound on |F g_1(x) - T_a(step extension)(x)| over the line
// (Lipschitz padding of the 1/a sampling grid).
double uniform_closeness_bound(long a, double p);

// Certified bracket of | ||F g_a||_{p',p} - ||{(F g_a)_m}||_{p',p} |:
// the continuous term is the scale-invariant c_p bracket, the sequence term
// a truncated sum with the ranked-tail remainder.  cutoff = 0 picks
// max(64 a, 4096).
Bracket discrepancy(long a, double p, const Bracket& cp, long cutoff = 0);

struct StudyRow {
    long a = 0;
    Bracket continuous{0.0, 0.0};
    Bracket sequence{0.0, 0.0};
    double discrepancy_upper = 0.0;
};

std::vector<StudyRow> convergence_study(double p, const std::vector<long>& scales,
                                        const Bracket& cp, long cutoff = 0);

// Least tested scale whose certified discrepancy is <= gamma, or 0 if none.
long first_scale_within(const std::vector<StudyRow>& rows, double gamma);

} // namespace ftlab
