#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftlab/piecewise.hpp"

namespace ftlab {

// Nonincreasing right-continuous step function on (0, infinity):
// value v_k on [t_{k-1}, t_k) with 0 = t_0 < t_1 < ... < t_K and
// v_1 >= v_2 >= ... >= v_K > 0; zero beyond t_K.
class StepRearrangement {
public:
    StepRearrangement() = default;
    StepRearrangement(std::vector<double> ends, std::vector<double> values);

    // From a multiset of (|value|, measure) pairs: sort descending, accumulate.
    static StepRearrangement from_level_masses(std::vector<std::pair<double, double>> masses);

    const std::vector<double>& ends() const { return ends_; }
    const std::vector<double>& values() const { return values_; }
    bool is_zero() const { return ends_.empty(); }
    std::size_t steps() const { return ends_.size(); }
    double support_end() const { return ends_.empty() ? 0.0 : ends_.back(); }

    double value_at(double t) const;
    double distribution(double tau) const; // mu{ R > tau }

    bool operator==(const StepRearrangement&) const = default;

private:
    std::vector<double> ends_;   // t_1 .. t_K
    std::vector<double> values_; // v_1 .. v_K
};

// Exact nonincreasing rearrangement of a piecewise-constant function.
StepRearrangement rearrange(const PiecewiseConstantFn& f);
StepRearrangement rearrange(const BoxFn& f);

// Enclosure of an even function |f| on the real line: per-cell bounds on a
// partition of [0, X] (each cell stands for itself and its mirror image, so
// it carries twice its width in measure), plus the tail contract
// |f(x)| <= tail_C / |x| for |x| > X.
class GridEnclosure {
public:
    GridEnclosure(std::vector<double> boundaries, std::vector<double> lower,
                  std::vector<double> upper, double tail_C);

    static GridEnclosure uniform(double X, std::vector<double> lower,
                                 std::vector<double> upper, double tail_C);

    const std::vector<double>& boundaries() const { return boundaries_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    double cutoff() const { return boundaries_.back(); }
    double tail_constant() const { return tail_C_; }
    std::size_t cells() const { return lower_.size(); }
    double cell_measure(std::size_t i) const {
        return 2.0 * (boundaries_[i + 1] - boundaries_[i]);
    }

private:
    std::vector<double> boundaries_; // 0 = b_0 < b_1 < ... < b_n = X
    std::vector<double> lower_, upper_;
    double tail_C_;
};

// Two-sided bracket of a nonincreasing rearrangement.  The upper descriptor
// is the step function on [0, tail_start) together with f^*(t) <= tail_D / t
// for t >= tail_start; the lower step function is conservative (tail = 0).
struct RearrangementEnclosure {
    StepRearrangement lower;
    StepRearrangement upper;
    double tail_D = 0.0;
    double tail_start = 0.0; // >= 2X whenever tail_D > 0

    double upper_at(double t) const;
    double lower_at(double t) const { return lower.value_at(t); }
};

RearrangementEnclosure rearrange_enclosure(const GridEnclosure& g);

// Restriction of the represented function to a union of symmetric bands
// { x : |x| in [lo, hi] }.  Ranges must be disjoint and sorted; hi may be
// infinity, in which case the beyond-cutoff tail is kept for the upper bound.
// Upper bounds count every cell meeting a range in full; lower bounds count
// only cells contained in a range.
struct XRange {
    double lo;
    double hi;
};

RearrangementEnclosure rearrange_restricted(const GridEnclosure& g,
                                            std::span<const XRange> keep);

// Precomputed descending orders of the grid's upper/lower cell bounds; lets
// window searches rebuild restricted rearrangements in linear time.
struct GridOrder {
    std::vector<std::uint32_t> by_upper;
    std::vector<std::uint32_t> by_lower;
};
GridOrder order_cells(const GridEnclosure& g);

RearrangementEnclosure rearrange_restricted(const GridEnclosure& g,
                                            std::span<const XRange> keep,
                                            const GridOrder& order);

// Conservative coarsening: every `factor` consecutive cells merge into one
// carrying the children's extreme bounds; the result encloses the same
// function on the same cutoff with the same tail constant.
GridEnclosure coarsen(const GridEnclosure& g, std::size_t factor);

} // namespace ftlab
