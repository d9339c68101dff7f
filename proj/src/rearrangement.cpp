#include "ftlab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ftlab {

StepRearrangement::StepRearrangement(std::vector<double> ends, std::vector<double> values)
    : ends_(std::move(ends)), values_(std::move(values)) {
    if (ends_.size() != values_.size())
        throw ValidationError("StepRearrangement: ends/values size mismatch");
    double prev_end = 0.0;
    double prev_val = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < ends_.size(); ++k) {
        if (!(ends_[k] > prev_end)) throw ValidationError("StepRearrangement: ends not increasing");
        if (!(values_[k] > 0.0)) throw ValidationError("StepRearrangement: values must be positive");
        if (values_[k] > prev_val) throw ValidationError("StepRearrangement: values must be nonincreasing");
        prev_end = ends_[k];
        prev_val = values_[k];
    }
}

StepRearrangement StepRearrangement::from_level_masses(
    std::vector<std::pair<double, double>> masses) {
    std::erase_if(masses, [](const auto& m) { return m.first <= 0.0 || m.second <= 0.0; });
    std::sort(masses.begin(), masses.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<double> ends, values;
    double acc = 0.0;
    for (const auto& [v, m] : masses) {
        acc += m;
        if (!values.empty() && values.back() == v)
            ends.back() = acc;
        else {
            values.push_back(v);
            ends.push_back(acc);
        }
    }
    return StepRearrangement(std::move(ends), std::move(values));
}

double StepRearrangement::value_at(double t) const {
    if (t < 0.0) throw DomainError("StepRearrangement: negative argument");
    auto it = std::upper_bound(ends_.begin(), ends_.end(), t);
    if (it == ends_.end()) return 0.0;
    return values_[static_cast<std::size_t>(it - ends_.begin())];
}

double StepRearrangement::distribution(double tau) const {
    if (!(tau > 0.0)) throw DomainError("distribution: tau must be positive");
    // values_ are sorted descending: find the last step still above tau.
    auto it = std::lower_bound(values_.begin(), values_.end(), tau,
                               [](double v, double t) { return v > t; });
    if (it == values_.begin()) return 0.0;
    return ends_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

StepRearrangement rearrange(const PiecewiseConstantFn& f) {
    std::vector<std::pair<double, double>> masses;
    masses.reserve(f.size());
    for (const Piece& p : f.pieces()) masses.emplace_back(std::abs(p.value), p.hi - p.lo);
    return StepRearrangement::from_level_masses(std::move(masses));
}

StepRearrangement rearrange(const BoxFn& f) {
    std::vector<std::pair<double, double>> masses;
    masses.reserve(f.cells().size());
    for (const auto& [box, value] : f.cells()) masses.emplace_back(std::abs(value), box.volume());
    return StepRearrangement::from_level_masses(std::move(masses));
}

GridEnclosure::GridEnclosure(std::vector<double> boundaries, std::vector<double> lower,
                             std::vector<double> upper, double tail_C)
    : boundaries_(std::move(boundaries)), lower_(std::move(lower)), upper_(std::move(upper)),
      tail_C_(tail_C) {
    if (boundaries_.size() < 2 || boundaries_.front() != 0.0)
        throw ValidationError("GridEnclosure: boundaries must start at 0");
    if (lower_.size() + 1 != boundaries_.size() || upper_.size() != lower_.size())
        throw ValidationError("GridEnclosure: cell count mismatch");
    for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i)
        if (!(boundaries_[i + 1] > boundaries_[i]))
            throw ValidationError("GridEnclosure: boundaries not increasing");
    for (std::size_t i = 0; i < lower_.size(); ++i)
        if (!(0.0 <= lower_[i]) || !(lower_[i] <= upper_[i]) || !std::isfinite(upper_[i]))
            throw ValidationError("GridEnclosure: inconsistent cell bounds");
    if (!(tail_C_ >= 0.0)) throw ValidationError("GridEnclosure: tail constant must be >= 0");
}

GridEnclosure GridEnclosure::uniform(double X, std::vector<double> lower,
                                     std::vector<double> upper, double tail_C) {
    const std::size_t n = lower.size();
    if (n == 0 || !(X > 0.0)) throw ValidationError("GridEnclosure: empty grid");
    std::vector<double> b(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        b[i] = X * (static_cast<double>(i) / static_cast<double>(n));
    return GridEnclosure(std::move(b), std::move(lower), std::move(upper), tail_C);
}

double RearrangementEnclosure::upper_at(double t) const {
    if (tail_D > 0.0 && t >= tail_start) return tail_D / t;
    return upper.value_at(t);
}

namespace {

// Measure contributed by the tail region {|x| > from_x, tail_C/|x| > tau}.
double tail_measure(double tail_C, double from_x, double tau) {
    if (tail_C <= 0.0 || tau <= 0.0) return 0.0;
    return 2.0 * std::max(0.0, tail_C / tau - from_x);
}

struct Selection {
    std::vector<std::uint32_t> upper_cells; // descending by upper bound
    std::vector<std::uint32_t> lower_cells; // descending by lower bound
    bool keep_tail = false;
    double tail_from_x = 0.0; // tail region starts at max(cutoff, range lo)
};

RearrangementEnclosure build_from_selection(const GridEnclosure& g, const Selection& sel) {
    RearrangementEnclosure out;

    { // Lower: plain sorted accumulation of contained cells, tail ignored.
        std::vector<double> ends, values;
        double acc = 0.0;
        for (std::uint32_t i : sel.lower_cells) {
            const double v = g.lower()[i];
            if (v <= 0.0) break; // descending order: the rest are zero too
            acc += g.cell_measure(i);
            if (!values.empty() && values.back() == v)
                ends.back() = acc;
            else {
                values.push_back(v);
                ends.push_back(acc);
            }
        }
        out.lower = StepRearrangement(std::move(ends), std::move(values));
    }

    const double C = sel.keep_tail ? g.tail_constant() : 0.0;
    const double Xt = sel.keep_tail ? sel.tail_from_x : 0.0;

    // Upper: the step value v is certified from T(v) onward, where
    // T(v) = mu{cells with bound > v} + mu{tail region above v}.
    std::vector<std::pair<double, double>> levels; // (value, T(value)), value descending
    const auto& cells = sel.upper_cells;
    const double v_first = cells.empty() ? 0.0 : g.upper()[cells.front()];
    if (C > 0.0 && C / Xt > v_first) levels.emplace_back(C / Xt, 0.0);
    double prefix = 0.0; // measure of cells strictly above the current group
    std::size_t idx = 0;
    while (idx < cells.size()) {
        const double v = g.upper()[cells[idx]];
        if (v <= 0.0) break;
        double group = 0.0;
        while (idx < cells.size() && g.upper()[cells[idx]] == v) {
            group += g.cell_measure(cells[idx]);
            ++idx;
        }
        levels.emplace_back(v, prefix + tail_measure(C, Xt, v));
        prefix += group;
    }
    double t_end;
    if (C > 0.0) {
        const double v_last = levels.back().first;
        t_end = std::max(prefix + tail_measure(C, Xt, v_last), 2.0 * Xt);
        out.tail_D = 2.0 * C;
        out.tail_start = t_end;
    } else {
        t_end = prefix;
        out.tail_D = 0.0;
        out.tail_start = t_end;
    }
    std::vector<double> ends, values;
    ends.reserve(levels.size());
    values.reserve(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double start = levels[k].second;
        const double end = (k + 1 < levels.size()) ? levels[k + 1].second : t_end;
        if (end > start) { // level k covers [T(v_k), T(v_{k+1}))
            ends.push_back(end);
            values.push_back(levels[k].first);
        }
    }
    out.upper = StepRearrangement(std::move(ends), std::move(values));
    return out;
}

bool intersects_cell(const GridEnclosure& g, std::uint32_t i, std::span<const XRange> keep) {
    const double lo = g.boundaries()[i];
    const double hi = g.boundaries()[i + 1];
    for (const XRange& r : keep)
        if (lo <= r.hi && hi > r.lo) return true;
    return false;
}

bool contains_cell(const GridEnclosure& g, std::uint32_t i, std::span<const XRange> keep) {
    const double lo = g.boundaries()[i];
    const double hi = g.boundaries()[i + 1];
    for (const XRange& r : keep)
        if (lo >= r.lo && hi <= r.hi) return true;
    return false;
}

Selection select(const GridEnclosure& g, std::span<const XRange> keep, const GridOrder& order) {
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (!(keep[k].lo >= 0.0) || !(keep[k].hi > keep[k].lo))
            throw ValidationError("rearrange_restricted: bad range");
        if (k > 0 && keep[k].lo < keep[k - 1].hi)
            throw ValidationError("rearrange_restricted: ranges must be disjoint and sorted");
    }
    Selection sel;
    if (!keep.empty() && std::isinf(keep.back().hi)) {
        sel.keep_tail = g.tail_constant() > 0.0;
        sel.tail_from_x = std::max(g.cutoff(), keep.back().lo);
    }
    sel.upper_cells.reserve(order.by_upper.size());
    for (std::uint32_t i : order.by_upper)
        if (intersects_cell(g, i, keep)) sel.upper_cells.push_back(i);
    sel.lower_cells.reserve(order.by_lower.size());
    for (std::uint32_t i : order.by_lower)
        if (contains_cell(g, i, keep)) sel.lower_cells.push_back(i);
    return sel;
}

} // namespace

GridOrder order_cells(const GridEnclosure& g) {
    GridOrder order;
    order.by_upper.resize(g.cells());
    order.by_lower.resize(g.cells());
    std::iota(order.by_upper.begin(), order.by_upper.end(), 0u);
    std::iota(order.by_lower.begin(), order.by_lower.end(), 0u);
    std::stable_sort(order.by_upper.begin(), order.by_upper.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return g.upper()[a] > g.upper()[b]; });
    std::stable_sort(order.by_lower.begin(), order.by_lower.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return g.lower()[a] > g.lower()[b]; });
    return order;
}

RearrangementEnclosure rearrange_restricted(const GridEnclosure& g,
                                            std::span<const XRange> keep,
                                            const GridOrder& order) {
    return build_from_selection(g, select(g, keep, order));
}

RearrangementEnclosure rearrange_restricted(const GridEnclosure& g,
                                            std::span<const XRange> keep) {
    const GridOrder order = order_cells(g);
    return rearrange_restricted(g, keep, order);
}

RearrangementEnclosure rearrange_enclosure(const GridEnclosure& g) {
    const XRange all{0.0, std::numeric_limits<double>::infinity()};
    return rearrange_restricted(g, std::span<const XRange>(&all, 1));
}

GridEnclosure coarsen(const GridEnclosure& g, std::size_t factor) {
    if (factor < 1) throw DomainError("coarsen: factor must be >= 1");
    const std::size_t n = g.cells();
    const std::size_t m = (n + factor - 1) / factor;
    std::vector<double> b(m + 1), lo(m), hi(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t first = k * factor;
        const std::size_t last = std::min(n, first + factor);
        b[k] = g.boundaries()[first];
        double l = g.lower()[first];
        double u = g.upper()[first];
        for (std::size_t i = first + 1; i < last; ++i) {
            l = std::min(l, g.lower()[i]);
            u = std::max(u, g.upper()[i]);
        }
        lo[k] = l;
        hi[k] = u;
    }
    b[m] = g.boundaries()[n];
    return GridEnclosure(std::move(b), std::move(lo), std::move(hi), g.tail_constant());
}

} // namespace ftlab
