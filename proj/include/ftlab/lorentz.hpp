#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "ftlab/bracket.hpp"
#include "ftlab/piecewise.hpp"
#include "ftlab/rearrangement.hpp"

namespace ftlab {

// Lorentz indices (r, s); s may be infinity (weak type).
struct LorentzIndex {
    double r;
    double s;

    LorentzIndex(double r_, double s_) : r(r_), s(s_) {
        if (!(r > 0.0) || !(s > 0.0)) throw DomainError("LorentzIndex: indices must be positive");
    }
    bool weak() const { return std::isinf(s); }

    static LorentzIndex dual_pair(double p) { // (p', p) with 1/p + 1/p' = 1
        if (!(p > 1.0)) throw DomainError("LorentzIndex: conjugate needs p > 1");
        return LorentzIndex(p / (p - 1.0), p);
    }
};

inline double conjugate_exponent(double p) {
    if (!(p > 1.0)) throw DomainError("conjugate_exponent: need p > 1");
    return p / (p - 1.0);
}

// Integration window (w_lo, w_hi) in the measure variable.
struct Window {
    double lo;
    double hi;
};

// ( integral of (t^{1/r} R(t))^s dt/t )^{1/s}, exact per step; for s = inf,
// sup of t^{1/r} R(t), attained at right endpoints of steps.
double lorentz_norm(const StepRearrangement& R, const LorentzIndex& idx);

// Certified bracket of the same quantity for a rearrangement enclosure,
// optionally restricted to a window.  The lower bound integrates the lower
// step function over the covered breakpoints only; the upper bound folds the
// tail descriptor D/t beyond the last breakpoint.
Bracket lorentz_norm(const RearrangementEnclosure& R, const LorentzIndex& idx,
                     std::optional<Window> window = std::nullopt);

// Exact L^p norm of a piecewise-constant function; p < 1 is a DomainError.
double lp_norm(const PiecewiseConstantFn& f, double p);
double lp_norm(const BoxFn& f, double p);

// Finitely many unsorted magnitudes plus a ranked-tail contract: when the
// omitted entries are sorted descending, the j-th omitted entry is at most
// tail_T / (j + max(head.size() - 1, 1)).  The contract is the supplier's
// responsibility and is not checked here; tail_T = 0 asserts that the head
// is the entire sequence.
struct MagnitudeSequence {
    std::vector<double> head;
    double tail_T = 0.0;
};

// Sequence Lorentz norm ( sum_k (k^{1/r - 1/s} c_k^*)^s )^{1/s} with the
// truncation tail bracketed through the ranked-tail contract.  Requires
// finite s and s(1 - 1/r) > 0 when tail_T > 0.
Bracket sequence_lorentz_norm(const MagnitudeSequence& c, const LorentzIndex& idx);

// Exact prefix table of the integrand (t^{1/r} R(t))^s dt/t of one step
// rearrangement; window queries in O(log steps).  Finite s only.
class StepIntegralTable {
public:
    StepIntegralTable(const StepRearrangement& R, const LorentzIndex& idx);
    // integral over (t_lo, t_hi) of the step part, exact.
    double integral(double t_lo, double t_hi) const;

private:
    double partial_to(double t) const; // integral over (0, t)
    std::vector<double> ends_;
    std::vector<double> values_;
    std::vector<double> prefix_; // integral over (0, ends_[k]]
    double e_;
    double s_;
};

} // namespace ftlab
