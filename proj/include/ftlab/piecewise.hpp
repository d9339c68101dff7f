#pragma once

#include <array>
#include <vector>

#include "ftlab/errors.hpp"

namespace ftlab {

// One constant piece on a half-open interval [lo, hi).
struct Piece {
    double lo;
    double hi;
    double value;

    bool operator==(const Piece&) const = default;
};

// Finitely supported piecewise-constant function on the real line.
// Canonical form: pieces sorted by left endpoint, pairwise disjoint,
// zero-value and empty pieces dropped, adjacent equal-value pieces merged.
// All interval conventions are half-open [lo, hi); norms do not depend on
// the convention at endpoints.
class PiecewiseConstantFn {
public:
    PiecewiseConstantFn() = default;
    explicit PiecewiseConstantFn(std::vector<Piece> pieces);

    static PiecewiseConstantFn indicator(double lo, double hi, double value = 1.0);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }

    double value_at(double x) const;
    double support_measure() const;

    // Pointwise sum; exact via breakpoint refinement.
    PiecewiseConstantFn operator+(const PiecewiseConstantFn& other) const;
    // Value scaling.
    PiecewiseConstantFn scaled(double factor) const;
    // Restriction to [lo, hi).
    PiecewiseConstantFn restricted(double lo, double hi) const;

    bool operator==(const PiecewiseConstantFn& other) const = default;

private:
    std::vector<Piece> pieces_;
};

// Distribution function mu{ |f| > tau }, exact.  tau <= 0 is a DomainError.
double distribution(const PiecewiseConstantFn& f, double tau);

// x -> f(c x).  c <= 0 is a DomainError.
PiecewiseConstantFn dilate(const PiecewiseConstantFn& f, double c);

// Axis-aligned box in d dimensions, half-open in every coordinate.
struct Box {
    std::vector<std::array<double, 2>> sides;
    double volume() const;
};

// Minimal d-dimensional analogue: disjoint constant boxes.  Supports exactly
// what the cube test functions need (dilation, rearrangement, L^p norms);
// box disjointness is the supplier's contract and is not validated.
class BoxFn {
public:
    BoxFn(int dim, std::vector<std::pair<Box, double>> cells);

    int dim() const { return dim_; }
    const std::vector<std::pair<Box, double>>& cells() const { return cells_; }

    static BoxFn cube_indicator(int dim, double halfwidth, double value = 1.0);

private:
    int dim_;
    std::vector<std::pair<Box, double>> cells_;
};

double distribution(const BoxFn& f, double tau);
BoxFn dilate(const BoxFn& f, double c);

} // namespace ftlab
