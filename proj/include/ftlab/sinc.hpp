#pragma once

#include <span>

#include "ftlab/rearrangement.hpp"

namespace ftlab {

// 2 sin(u)/u with the removable singularity evaluated as 2.
double sinc2(double u);

// Certified range of |2 sin(u)/u| on [u0, u1], 0 <= u0 < u1.  Exact up to
// endpoint evaluation except on cells meeting a zero (min clamped to 0) or a
// local maximizer (max bounded by 2/sqrt(1+u0^2), the value profile of the
// maximizers); cells wider than pi/4 fall back to the 2 min(1, 1/u) envelope.
struct ValueRange {
    double lo;
    double hi;
};
ValueRange sinc_abs_range(double u0, double u1);

// Derivative bound: |d/du 2 sin(u)/u| <= 2 min(u/3, 1/2, (u+1)/u^2).
// max over [u0, u1], usable as a cell Lipschitz constant.
double sinc2_lipschitz(double u0, double u1);

// Fourier transform of the indicator of the cube [-1/a, 1/a]^d at x:
// prod_k 2 sin(x_k/a)/x_k, with limit 2/a at x_k = 0.
double eval_ft_indicator(double a, int d, std::span<const double> x);
inline double eval_ft_indicator(double a, double x) {
    return eval_ft_indicator(a, 1, std::span<const double>(&x, 1));
}

// Normalized test function transform F g_a = (2/a)^{-d/p} F f_a.
struct SincProfile {
    double a;
    double p;
    int d = 1;

    SincProfile(double a_, double p_, int d_ = 1);
    double normalization() const; // (2/a)^{-d/p}
    double eval(std::span<const double> x) const;
    double eval_abs(double x) const; // d = 1
    double max_value() const;        // |F g_a(0)| = (2/a)^{d/p'}
    double tail_constant() const;    // d = 1: |F g_a(x)| <= tail/|x| beyond any x
};

// Certified enclosure of |F g_a| on a uniform grid over [0, X] with the
// 2(a/2)^{1/p}/|x| tail contract.
GridEnclosure build_sinc_grid(double a, double p, double X, std::size_t cells);

} // namespace ftlab
