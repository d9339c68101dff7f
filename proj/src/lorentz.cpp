#include "ftlab/lorentz.hpp"

#include <algorithm>
#include <cmath>

namespace ftlab {

namespace {

// integral over (t0, t1) of (t^{1/r} D/t)^s dt/t = D^s (t1^e - t0^e)/e, e = s/r - s.
// t1 may be infinity, in which case e < 0 is required.
double tail_term(double D, double t0, double t1, double r, double s) {
    if (D <= 0.0 || t1 <= t0) return 0.0;
    const double e = s / r - s;
    const double Ds = std::pow(D, s);
    if (std::isinf(t1)) {
        if (!(e < 0.0))
            throw FeatureError("lorentz_norm: divergent tail integral (need r > 1)");
        return -Ds * std::pow(t0, e) / e;
    }
    if (e == 0.0) return Ds * std::log(t1 / t0);
    return Ds * (std::pow(t1, e) - std::pow(t0, e)) / e;
}

double steps_integral(const StepRearrangement& R, double r, double s, double w_lo, double w_hi) {
    const double e = s / r;
    double acc = 0.0;
    double start = 0.0;
    double cached_t = -1.0;
    double cached_pow = 0.0;
    auto pow_e = [&](double t) {
        if (t != cached_t) {
            cached_t = t;
            cached_pow = std::pow(t, e);
        }
        return cached_pow;
    };
    const auto& ends = R.ends();
    const auto& values = R.values();
    for (std::size_t k = 0; k < ends.size(); ++k) {
        const double t0 = std::max(start, w_lo);
        const double t1 = std::min(ends[k], w_hi);
        if (t1 > t0 && values[k] > 0.0) {
            const double p0 = pow_e(t0);
            acc += std::pow(values[k], s) * (pow_e(t1) - p0);
        }
        start = ends[k];
        if (start >= w_hi) break;
    }
    return acc / e;
}

} // namespace

double lorentz_norm(const StepRearrangement& R, const LorentzIndex& idx) {
    if (R.is_zero()) return 0.0;
    if (idx.weak()) {
        double sup = 0.0;
        double start = 0.0;
        for (std::size_t k = 0; k < R.steps(); ++k) {
            // t^{1/r} v is increasing on each step, so the sup sits at the right end.
            sup = std::max(sup, std::pow(R.ends()[k], 1.0 / idx.r) * R.values()[k]);
            start = R.ends()[k];
        }
        (void)start;
        return sup;
    }
    const double total = steps_integral(R, idx.r, idx.s, 0.0, R.support_end());
    return std::pow(total, 1.0 / idx.s);
}

Bracket lorentz_norm(const RearrangementEnclosure& R, const LorentzIndex& idx,
                     std::optional<Window> window) {
    if (window) {
        if (idx.weak()) throw FeatureError("lorentz_norm: weak index with window unsupported");
        if (!(window->lo >= 0.0) || !(window->hi > window->lo))
            throw DomainError("lorentz_norm: invalid window");
    }
    if (idx.weak()) {
        double lo = lorentz_norm(R.lower, idx);
        double hi = lorentz_norm(R.upper, idx);
        if (R.tail_D > 0.0) {
            const double e = 1.0 / idx.r - 1.0;
            if (!(e < 0.0)) throw FeatureError("lorentz_norm: weak tail divergent (need r > 1)");
            hi = std::max(hi, R.tail_D * std::pow(R.tail_start, e));
        }
        return Bracket(std::min(lo, hi), hi);
    }
    const double w_lo = window ? window->lo : 0.0;
    const double w_hi = window ? window->hi : std::numeric_limits<double>::infinity();

    const double lower_int = steps_integral(R.lower, idx.r, idx.s, w_lo, w_hi);
    double upper_int = steps_integral(R.upper, idx.r, idx.s, w_lo, w_hi);
    if (R.tail_D > 0.0 && w_hi > R.tail_start)
        upper_int += tail_term(R.tail_D, std::max(w_lo, R.tail_start), w_hi, idx.r, idx.s);

    const double inv_s = 1.0 / idx.s;
    const double lo = std::pow(lower_int, inv_s);
    const double hi = std::pow(upper_int, inv_s);
    return Bracket(std::min(lo, hi), hi); // guard fp noise on degenerate enclosures
}

double lp_norm(const PiecewiseConstantFn& f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    double acc = 0.0;
    for (const Piece& piece : f.pieces())
        acc += std::pow(std::abs(piece.value), p) * (piece.hi - piece.lo);
    return std::pow(acc, 1.0 / p);
}

double lp_norm(const BoxFn& f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    double acc = 0.0;
    for (const auto& [box, value] : f.cells())
        acc += std::pow(std::abs(value), p) * box.volume();
    return std::pow(acc, 1.0 / p);
}

StepIntegralTable::StepIntegralTable(const StepRearrangement& R, const LorentzIndex& idx)
    : ends_(R.ends()), values_(R.values()), e_(idx.s / idx.r), s_(idx.s) {
    if (idx.weak()) throw FeatureError("StepIntegralTable: weak index unsupported");
    prefix_.resize(ends_.size());
    double acc = 0.0;
    double prev_pow = 0.0;
    for (std::size_t k = 0; k < ends_.size(); ++k) {
        const double end_pow = std::pow(ends_[k], e_);
        acc += std::pow(values_[k], s_) * (end_pow - prev_pow) / e_;
        prefix_[k] = acc;
        prev_pow = end_pow;
    }
}

double StepIntegralTable::partial_to(double t) const {
    if (ends_.empty() || t <= 0.0) return 0.0;
    if (t >= ends_.back()) return prefix_.back();
    const std::size_t k = static_cast<std::size_t>(
        std::upper_bound(ends_.begin(), ends_.end(), t) - ends_.begin());
    const double below = (k == 0) ? 0.0 : prefix_[k - 1];
    const double start_pow = (k == 0) ? 0.0 : std::pow(ends_[k - 1], e_);
    return below + std::pow(values_[k], s_) * (std::pow(t, e_) - start_pow) / e_;
}

double StepIntegralTable::integral(double t_lo, double t_hi) const {
    if (!(t_hi > t_lo)) return 0.0;
    return std::max(0.0, partial_to(t_hi) - partial_to(std::max(t_lo, 0.0)));
}

Bracket sequence_lorentz_norm(const MagnitudeSequence& c, const LorentzIndex& idx) {
    if (idx.weak()) throw FeatureError("sequence_lorentz_norm: s = infinity unsupported");
    if (!(c.tail_T >= 0.0)) throw DomainError("sequence_lorentz_norm: tail constant must be >= 0");
    std::vector<double> head = c.head;
    for (double v : head)
        if (!(v >= 0.0)) throw ValidationError("sequence_lorentz_norm: negative magnitude");
    std::sort(head.begin(), head.end(), std::greater<double>());

    const double r = idx.r;
    const double s = idx.s;
    double partial = 0.0;
    for (std::size_t k = 0; k < head.size(); ++k) {
        if (head[k] <= 0.0) break;
        partial += std::pow(std::pow(static_cast<double>(k + 1), 1.0 / r - 1.0 / s) * head[k], s);
    }

    double remainder = 0.0;
    if (c.tail_T > 0.0) {
        // sum_j (j^{1/r-1/s} T/(j+K))^s <= T^s int_0^inf x^{s/r-1} (x+K)^{-s} dx
        //                               =  T^s K^{s/r-s} B(s/r, s - s/r),
        // valid for r >= s where the summand is decreasing in j; otherwise the
        // first term is added separately before the integral comparison.
        const double a = s / r;
        const double b = s - a;
        if (!(b > 0.0))
            throw FeatureError("sequence_lorentz_norm: divergent tail (need r > 1)");
        const double K =
            static_cast<double>(std::max<std::size_t>(head.empty() ? 1 : head.size() - 1, 1));
        const double beta = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
        remainder = std::pow(c.tail_T, s) * std::pow(K, a - s) * beta;
        if (r < s) remainder += std::pow(c.tail_T / (1.0 + K), s);
    }

    const double inv_s = 1.0 / s;
    return Bracket(std::pow(partial, inv_s), std::pow(partial + remainder, inv_s));
}

} // namespace ftlab
