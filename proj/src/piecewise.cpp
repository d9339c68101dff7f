#include "ftlab/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ftlab {

namespace {

void check_finite(const Piece& p) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !std::isfinite(p.value))
        throw ValidationError("PiecewiseConstantFn: non-finite piece");
    if (p.hi < p.lo)
        throw ValidationError("PiecewiseConstantFn: piece with hi < lo");
}

} // namespace

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<Piece> pieces) {
    for (const Piece& p : pieces) check_finite(p);
    std::erase_if(pieces, [](const Piece& p) { return p.hi <= p.lo || p.value == 0.0; });
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < pieces.size(); ++i)
        if (pieces[i].lo < pieces[i - 1].hi)
            throw ValidationError("PiecewiseConstantFn: overlapping pieces");
    // Merge adjacent pieces carrying the same value.
    for (const Piece& p : pieces) {
        if (!pieces_.empty() && pieces_.back().hi == p.lo && pieces_.back().value == p.value)
            pieces_.back().hi = p.hi;
        else
            pieces_.push_back(p);
    }
}

PiecewiseConstantFn PiecewiseConstantFn::indicator(double lo, double hi, double value) {
    return PiecewiseConstantFn({Piece{lo, hi, value}});
}

double PiecewiseConstantFn::value_at(double x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.lo; });
    if (it == pieces_.begin()) return 0.0;
    --it;
    return (x < it->hi) ? it->value : 0.0;
}

double PiecewiseConstantFn::support_measure() const {
    double m = 0.0;
    for (const Piece& p : pieces_) m += p.hi - p.lo;
    return m;
}

PiecewiseConstantFn PiecewiseConstantFn::operator+(const PiecewiseConstantFn& other) const {
    std::set<double> cuts;
    for (const Piece& p : pieces_) {
        cuts.insert(p.lo);
        cuts.insert(p.hi);
    }
    for (const Piece& p : other.pieces_) {
        cuts.insert(p.lo);
        cuts.insert(p.hi);
    }
    std::vector<Piece> out;
    double prev = 0.0;
    bool have_prev = false;
    for (double b : cuts) {
        if (have_prev && b > prev) {
            const double mid = prev + 0.5 * (b - prev);
            const double v = value_at(mid) + other.value_at(mid);
            if (v != 0.0) out.push_back(Piece{prev, b, v});
        }
        prev = b;
        have_prev = true;
    }
    return PiecewiseConstantFn(std::move(out));
}

PiecewiseConstantFn PiecewiseConstantFn::scaled(double factor) const {
    std::vector<Piece> out = pieces_;
    for (Piece& p : out) p.value *= factor;
    return PiecewiseConstantFn(std::move(out));
}

PiecewiseConstantFn PiecewiseConstantFn::restricted(double lo, double hi) const {
    std::vector<Piece> out;
    for (const Piece& p : pieces_) {
        const double a = std::max(p.lo, lo);
        const double b = std::min(p.hi, hi);
        if (b > a) out.push_back(Piece{a, b, p.value});
    }
    return PiecewiseConstantFn(std::move(out));
}

double distribution(const PiecewiseConstantFn& f, double tau) {
    if (!(tau > 0.0)) throw DomainError("distribution: tau must be positive");
    double m = 0.0;
    for (const Piece& p : f.pieces())
        if (std::abs(p.value) > tau) m += p.hi - p.lo;
    return m;
}

PiecewiseConstantFn dilate(const PiecewiseConstantFn& f, double c) {
    if (!(c > 0.0)) throw DomainError("dilate: scale must be positive");
    std::vector<Piece> out;
    out.reserve(f.size());
    for (const Piece& p : f.pieces()) out.push_back(Piece{p.lo / c, p.hi / c, p.value});
    return PiecewiseConstantFn(std::move(out));
}

double Box::volume() const {
    double v = 1.0;
    for (const auto& s : sides) v *= std::max(0.0, s[1] - s[0]);
    return v;
}

BoxFn::BoxFn(int dim, std::vector<std::pair<Box, double>> cells)
    : dim_(dim), cells_(std::move(cells)) {
    if (dim < 1) throw DomainError("BoxFn: dimension must be positive");
    for (const auto& [box, value] : cells_) {
        if (static_cast<int>(box.sides.size()) != dim)
            throw ValidationError("BoxFn: box dimension mismatch");
        if (!std::isfinite(value)) throw ValidationError("BoxFn: non-finite value");
    }
}

BoxFn BoxFn::cube_indicator(int dim, double halfwidth, double value) {
    Box box;
    box.sides.assign(static_cast<std::size_t>(dim), {-halfwidth, halfwidth});
    return BoxFn(dim, {{box, value}});
}

double distribution(const BoxFn& f, double tau) {
    if (!(tau > 0.0)) throw DomainError("distribution: tau must be positive");
    double m = 0.0;
    for (const auto& [box, value] : f.cells())
        if (std::abs(value) > tau) m += box.volume();
    return m;
}

BoxFn dilate(const BoxFn& f, double c) {
    if (!(c > 0.0)) throw DomainError("dilate: scale must be positive");
    std::vector<std::pair<Box, double>> out = f.cells();
    for (auto& [box, value] : out)
        for (auto& s : box.sides) {
            s[0] /= c;
            s[1] /= c;
        }
    return BoxFn(f.dim(), std::move(out));
}

} // namespace ftlab
