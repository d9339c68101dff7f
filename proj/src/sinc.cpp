#include "ftlab/sinc.hpp"

#include <algorithm>
#include <cmath>

namespace ftlab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
}

double sinc2(double u) {
    if (u == 0.0) return 2.0;
    return 2.0 * std::sin(u) / u;
}

ValueRange sinc_abs_range(double u0, double u1) {
    if (!(u0 >= 0.0) || !(u1 > u0)) throw DomainError("sinc_abs_range: need 0 <= u0 < u1");
    const double env = (u0 > 0.0) ? std::min(2.0, 2.0 / u0) : 2.0;
    if (u1 - u0 > kPi / 4.0 || u0 > 1e15) return {0.0, env};

    const double B0 = std::abs(sinc2(u0));
    const double B1 = std::abs(sinc2(u1));
    const double bmin = std::min(B0, B1);
    const double bmax = std::max(B0, B1);

    // Zeros sit at k*pi (k >= 1).  Local maximizers solve tan u = u; writing
    // c = k*pi + pi/2 - delta, tan c = cot(delta) < 1/delta forces
    // delta < 1/c < 1/(k*pi), so c lies in (k*pi + pi/2 - 1/(k*pi), k*pi + pi/2).
    // A cell narrower than pi/4 meets at most one feature.
    const long k_zero = static_cast<long>(std::ceil(u0 / kPi));
    const bool has_zero = k_zero >= 1 && static_cast<double>(k_zero) * kPi <= u1;
    bool has_crit = false;
    for (long k = static_cast<long>(std::floor(u0 / kPi)); k <= static_cast<long>(std::floor(u1 / kPi)); ++k) {
        if (k < 1) continue;
        const double kpi = static_cast<double>(k) * kPi;
        const double hi = kpi + kPi / 2.0;
        const double lo = hi - 1.0 / kpi;
        if (u0 < hi && u1 > lo) has_crit = true;
    }

    if (has_zero) return {0.0, std::min(bmax, env)};
    if (has_crit) {
        // If the maximizer lies inside the cell, the max is its profile value
        // 2/sqrt(1+c^2) <= 2/sqrt(1+u0^2); otherwise the cell is monotone and
        // the max sits at an endpoint.  Cover both cases.
        const double crit_profile = 2.0 / std::sqrt(1.0 + u0 * u0);
        return {bmin, std::min(std::max(bmax, crit_profile), env)};
    }
    return {bmin, std::min(bmax, env)}; // monotone between features
}

double sinc2_lipschitz(double u0, double u1) {
    // |(2 sin u / u)'| = 2|u cos u - sin u|/u^2; |u cos u - sin u| <= min(u^3/3, u^2/2, u+1).
    const double by_cubic = 2.0 * u1 / 3.0;
    if (u0 <= 0.0) return std::min(1.0, by_cubic);
    const double by_envelope = 2.0 * (u0 + 1.0) / (u0 * u0); // decreasing in u
    return std::min({1.0, by_cubic, by_envelope});
}

double eval_ft_indicator(double a, int d, std::span<const double> x) {
    if (!(a > 0.0)) throw DomainError("eval_ft_indicator: scale must be positive");
    if (d < 1 || static_cast<int>(x.size()) != d)
        throw DomainError("eval_ft_indicator: dimension mismatch");
    double prod = 1.0;
    for (double xk : x) prod *= sinc2(xk / a) / a;
    return prod;
}

SincProfile::SincProfile(double a_, double p_, int d_) : a(a_), p(p_), d(d_) {
    if (!(a > 0.0)) throw DomainError("SincProfile: scale must be positive");
    if (!(p > 1.0) || !(p < 2.0)) throw DomainError("SincProfile: p must lie in (1,2)");
    if (d < 1) throw DomainError("SincProfile: dimension must be positive");
}

double SincProfile::normalization() const {
    return std::pow(2.0 / a, -static_cast<double>(d) / p);
}

double SincProfile::eval(std::span<const double> x) const {
    return normalization() * eval_ft_indicator(a, d, x);
}

double SincProfile::eval_abs(double x) const {
    return normalization() * std::abs(sinc2(x / a)) / a;
}

double SincProfile::max_value() const {
    return std::pow(2.0 / a, static_cast<double>(d) * (1.0 - 1.0 / p));
}

double SincProfile::tail_constant() const {
    return 2.0 * std::pow(a / 2.0, 1.0 / p);
}

GridEnclosure build_sinc_grid(double a, double p, double X, std::size_t cells) {
    if (!(a > 0.0)) throw DomainError("build_sinc_grid: scale must be positive");
    if (!(p > 0.0)) throw DomainError("build_sinc_grid: p must be positive");
    if (!(X > 0.0) || cells < 2) throw DomainError("build_sinc_grid: need X > 0 and cells >= 2");

    const double scale = std::pow(2.0 / a, -1.0 / p) / a; // |F g_a| = scale * |2 sin(x/a)/(x/a)|
    std::vector<double> lower(cells), upper(cells);
    std::vector<double> b(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        b[i] = X * (static_cast<double>(i) / static_cast<double>(cells));
    for (std::size_t i = 0; i < cells; ++i) {
        const ValueRange r = sinc_abs_range(b[i] / a, b[i + 1] / a);
        lower[i] = scale * r.lo;
        upper[i] = scale * r.hi;
    }
    const double tail_C = 2.0 * std::pow(a / 2.0, 1.0 / p);
    return GridEnclosure(std::move(b), std::move(lower), std::move(upper), tail_C);
}

} // namespace ftlab
