#include "ftlab/torus.hpp"

#include <algorithm>
#include <cmath>

namespace ftlab {

namespace {

void validate_torus_args(long a, double p, const char* who) {
    if (a < 1) throw DomainError(std::string(who) + ": scale must be a positive integer");
    if (!(p > 1.0) || !(p < 2.0)) throw DomainError(std::string(who) + ": p must lie in (1,2)");
}

} // namespace

double fourier_coefficient(long a, double p, long m) {
    validate_torus_args(a, p, "fourier_coefficient");
    const double ad = static_cast<double>(a);
    if (m == 0) return std::pow(2.0 / ad, 1.0 / conjugate_exponent(p));
    const double md = static_cast<double>(m);
    return 2.0 * std::pow(ad / 2.0, 1.0 / p) * std::sin(md / ad) / md;
}

MagnitudeSequence coefficient_sequence(long a, double p, long cutoff) {
    validate_torus_args(a, p, "coefficient_sequence");
    if (cutoff < 1) throw DomainError("coefficient_sequence: cutoff must be positive");
    MagnitudeSequence seq;
    seq.head.reserve(static_cast<std::size_t>(2 * cutoff + 1));
    seq.head.push_back(std::abs(fourier_coefficient(a, p, 0)));
    for (long m = 1; m <= cutoff; ++m) {
        const double v = std::abs(fourier_coefficient(a, p, m));
        seq.head.push_back(v); // +m and -m carry the same magnitude
        seq.head.push_back(v);
    }
    seq.tail_T = 2.0 * 2.0 * std::pow(static_cast<double>(a) / 2.0, 1.0 / p);
    return seq;
}

StepExtension step_extension(long a, double p, long cells) {
    validate_torus_args(a, p, "step_extension");
    if (cells < 1) throw DomainError("step_extension: need at least one cell");
    std::vector<Piece> pieces;
    pieces.reserve(static_cast<std::size_t>(2 * cells));
    for (long m = 0; m < cells; ++m) {
        const double v = fourier_coefficient(a, p, m);
        const double md = static_cast<double>(m);
        pieces.push_back(Piece{md, md + 1.0, v});
        pieces.push_back(Piece{-md - 1.0, -md, v});
    }
    return StepExtension{a, p, PiecewiseConstantFn(std::move(pieces))};
}

PiecewiseConstantFn reverse_scale(const PiecewiseConstantFn& f, long a, double p) {
    validate_torus_args(a, p, "reverse_scale");
    const double ad = static_cast<double>(a);
    return dilate(f, ad).scaled(std::pow(ad, 1.0 / conjugate_exponent(p)));
}

double staircase_weighted_integral(const StepRearrangement& R, double cell_width, double p) {
    if (!(cell_width > 0.0)) throw DomainError("staircase_weighted_integral: bad cell width");
    if (!(p > 1.0) || !(p < 2.0))
        throw DomainError("staircase_weighted_integral: p must lie in (1,2)");
    const double exponent = p - 2.0; // p (1/p' - 1/p)
    double acc = 0.0;
    double t = 0.0;
    std::size_t step = 0;
    long cell = 1;
    while (step < R.steps()) {
        const double cell_end = cell_width * static_cast<double>(cell);
        const double seg_end = std::min(cell_end, R.ends()[step]);
        if (seg_end > t)
            acc += std::pow(static_cast<double>(cell), exponent) *
                   std::pow(R.values()[step], p) * (seg_end - t);
        t = seg_end;
        if (seg_end == cell_end) ++cell;
        if (seg_end == R.ends()[step]) ++step;
    }
    return acc;
}

double uniform_closeness_bound(long a, double p) {
    validate_torus_args(a, p, "uniform_closeness_bound");
    // T_a of the extension samples F g_1 on the 1/a grid; |(F g_1)'| <= 2^{-1/p}.
    return std::pow(2.0, -1.0 / p) / static_cast<double>(a);
}

Bracket discrepancy(long a, double p, const Bracket& cp, long cutoff) {
    validate_torus_args(a, p, "discrepancy");
    if (cutoff <= 0) cutoff = std::max(64L * a, 4096L);
    const Bracket seq = sequence_lorentz_norm(coefficient_sequence(a, p, cutoff),
                                              LorentzIndex::dual_pair(p));
    return abs_difference(cp, seq);
}

std::vector<StudyRow> convergence_study(double p, const std::vector<long>& scales,
                                        const Bracket& cp, long cutoff) {
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (scales[i] <= scales[i - 1])
            throw DomainError("convergence_study: scales must increase");
    std::vector<StudyRow> rows;
    rows.reserve(scales.size());
    for (long a : scales) {
        StudyRow row;
        row.a = a;
        row.continuous = cp;
        row.sequence = sequence_lorentz_norm(
            coefficient_sequence(a, p, cutoff > 0 ? cutoff : std::max(64L * a, 4096L)),
            LorentzIndex::dual_pair(p));
        const Bracket d = abs_difference(row.continuous, row.sequence);
        row.discrepancy_upper = d.hi;
        rows.push_back(std::move(row));
    }
    return rows;
}

long first_scale_within(const std::vector<StudyRow>& rows, double gamma) {
    for (const StudyRow& row : rows)
        if (row.discrepancy_upper <= gamma) return row.a;
    return 0;
}

} // namespace ftlab
