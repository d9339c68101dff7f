#pragma once

#include <algorithm>
#include <cmath>

#include "ftlab/errors.hpp"

namespace ftlab {

// Certified real enclosure [lo, hi].  Produced wherever discretization or
// truncation introduces error; closed-form quantities collapse to lo == hi.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    Bracket() = default;
    Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw ValidationError("Bracket: need finite lo <= hi");
    }
    static Bracket point(double v) { return Bracket(v, v); }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Bracket& b) const { return lo <= b.lo && b.hi <= hi; }
    bool intersects(const Bracket& b) const { return lo <= b.hi && b.lo <= hi; }
};

inline Bracket operator+(const Bracket& a, const Bracket& b) {
    return Bracket(a.lo + b.lo, a.hi + b.hi);
}

inline Bracket operator-(const Bracket& a, const Bracket& b) {
    return Bracket(a.lo - b.hi, a.hi - b.lo);
}

inline Bracket operator*(double c, const Bracket& b) {
    return c >= 0 ? Bracket(c * b.lo, c * b.hi) : Bracket(c * b.hi, c * b.lo);
}

// Enclosure of |x - y| for x in a, y in b.
inline Bracket abs_difference(const Bracket& a, const Bracket& b) {
    const double hi = std::max(a.hi - b.lo, b.hi - a.lo);
    const double lo = std::max({a.lo - b.hi, b.lo - a.hi, 0.0});
    return Bracket(lo, hi);
}

} // namespace ftlab
