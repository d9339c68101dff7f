#include "ftlab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ftlab/lorentz.hpp"
#include "ftlab/sinc.hpp"

namespace ftlab {

double CoefficientVector::lq_norm(double q) const {
    double acc = 0.0;
    for (double a : alpha) acc += std::pow(std::abs(a), q);
    return std::pow(acc, 1.0 / q);
}

double CoefficientVector::l1_weighted(const std::vector<double>& weights) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) acc += std::abs(alpha[j]) * weights[j];
    return acc;
}

bool CoefficientVector::is_zero() const {
    for (double a : alpha)
        if (a != 0.0) return false;
    return true;
}

CoefficientVector random_sphere_point(Rng& rng, int k, double p) {
    CoefficientVector c;
    c.alpha.resize(static_cast<std::size_t>(k));
    double norm = 0.0;
    while (norm == 0.0) {
        for (double& a : c.alpha) a = rng.normal();
        norm = c.lq_norm(p);
    }
    for (double& a : c.alpha) a /= norm;
    return c;
}

namespace {

void check_length(const WitnessFamily& fam, const CoefficientVector& coeffs) {
    if (static_cast<int>(coeffs.alpha.size()) > fam.count())
        throw DomainError("coefficient vector longer than the family");
}

double level_height(const WitnessFamily& fam, const WitnessLevel& lv) {
    return std::pow(2.0 / lv.a_value, -1.0 / fam.p);
}

} // namespace

PiecewiseConstantFn assemble(const WitnessFamily& fam, const CoefficientVector& coeffs) {
    check_length(fam, coeffs);
    const std::size_t m = coeffs.alpha.size();
    if (m == 0) return PiecewiseConstantFn();
    // Levels are ordered by increasing scale, so radii 1/a_j decrease and the
    // supports nest; the shell between radii r_{j+1} and r_j carries the
    // partial sum of the first j terms.
    std::vector<double> radius(m), cumulative(m);
    double run = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        radius[j] = 1.0 / fam.levels[j].a_value;
        run += coeffs.alpha[j] * level_height(fam, fam.levels[j]);
        cumulative[j] = run;
    }
    std::vector<Piece> pieces;
    pieces.reserve(2 * m + 1);
    for (std::size_t j = 0; j + 1 < m; ++j)
        pieces.push_back(Piece{-radius[j], -radius[j + 1], cumulative[j]});
    pieces.push_back(Piece{-radius[m - 1], radius[m - 1], cumulative[m - 1]});
    for (std::size_t j = m - 1; j-- > 0;)
        pieces.push_back(Piece{radius[j + 1], radius[j], cumulative[j]});
    return PiecewiseConstantFn(std::move(pieces));
}

double upper_estimate(const WitnessFamily& fam, const CoefficientVector& coeffs) {
    return lp_norm(assemble(fam, coeffs), fam.p);
}

Bracket chain_lower_bound(const WitnessFamily& fam, const CoefficientVector& coeffs) {
    if (!fam.certified) throw ValidationError("chain_lower_bound: family not certified");
    check_length(fam, coeffs);
    const double p = fam.p;
    double sum_lo = 0.0;
    double sum_hi = 0.0;
    double off = 0.0;
    for (std::size_t j = 0; j < coeffs.alpha.size(); ++j) {
        const double aj = std::abs(coeffs.alpha[j]);
        if (aj == 0.0) continue;
        const double ap = std::pow(aj, p);
        const WitnessLevel& lv = fam.levels[j];
        sum_lo += ap * std::pow(lv.rear.windowed.lo, p);
        sum_hi += ap * std::pow(lv.rear.windowed.hi, p);
        off += aj * lv.freq.off_upper.hi;
    }
    const double lo = std::max(0.0, std::pow(sum_lo, 1.0 / p) - off);
    const double hi = std::max(lo, std::pow(sum_hi, 1.0 / p));
    return Bracket(lo, hi);
}

Bracket direct_lorentz_norm(const WitnessFamily& fam, const CoefficientVector& coeffs,
                            DirectGridPolicy policy) {
    check_length(fam, coeffs);
    const std::size_t m = coeffs.alpha.size();
    if (static_cast<int>(m) > policy.max_levels)
        throw DomainError("direct_lorentz_norm: too many levels for direct gridding");
    if (coeffs.is_zero() || m == 0) return Bracket(0.0, 0.0);
    const double p = fam.p;

    struct Term {
        double weight; // alpha_j * (2/a)^{-1/p}
        double a;
    };
    std::vector<Term> terms;
    double span = 0.0;
    double tail_C = 0.0; // |H(x)| <= tail_C / x everywhere
    for (std::size_t j = 0; j < m; ++j) {
        if (coeffs.alpha[j] == 0.0) continue;
        const WitnessLevel& lv = fam.levels[j];
        terms.push_back(Term{coeffs.alpha[j] * level_height(fam, lv), lv.a_value});
        span = std::max(span, lv.freq.nu_hi * lv.a_value);
        tail_C += 2.0 * std::abs(coeffs.alpha[j]) * level_height(fam, lv);
    }
    const double X = policy.span_factor * std::max(span, 8.0);

    auto eval = [&](double x) {
        double acc = 0.0;
        for (const Term& t : terms) acc += t.weight * sinc2(x / t.a) / t.a;
        return acc;
    };
    auto lipschitz = [&](double x0, double x1) {
        double acc = 0.0;
        for (const Term& t : terms)
            acc += std::abs(t.weight) * sinc2_lipschitz(x0 / t.a, x1 / t.a) / (t.a * t.a);
        return acc;
    };
    auto envelope = [&](double x) {
        double acc = 0.0;
        for (const Term& t : terms) acc += std::abs(t.weight) * std::min(2.0 / t.a, 2.0 / x);
        return acc;
    };

    // Logarithmic grid: one linear cell at the origin, then geometric cells.
    std::vector<double> boundaries;
    boundaries.push_back(0.0);
    for (double x = std::min(policy.x_min, X / 2.0); x < X; x *= policy.growth) {
        boundaries.push_back(x);
        if (boundaries.size() > policy.max_cells)
            throw UnresolvedError("direct_lorentz_norm: grid budget exhausted",
                                  static_cast<double>(boundaries.size()));
    }
    boundaries.push_back(X);

    const std::size_t n = boundaries.size() - 1;
    std::vector<double> lower(n), upper(n);
    double e_right = eval(boundaries[0]);
    for (std::size_t i = 0; i < n; ++i) {
        const double x0 = boundaries[i];
        const double x1 = boundaries[i + 1];
        const double e_left = e_right;
        e_right = eval(x1);
        const double pad = 0.5 * lipschitz(x0, x1) * (x1 - x0);
        const double hi_signed = std::max(e_left, e_right) + pad;
        const double lo_signed = std::min(e_left, e_right) - pad;
        double hi = std::max(std::abs(hi_signed), std::abs(lo_signed));
        double lo = 0.0;
        if (lo_signed > 0.0) lo = lo_signed;
        if (hi_signed < 0.0) lo = -hi_signed;
        if (x0 > 0.0) hi = std::min(hi, envelope(x0));
        lower[i] = lo;
        upper[i] = hi;
    }
    const GridEnclosure grid(std::move(boundaries), std::move(lower), std::move(upper), tail_C);
    return lorentz_norm(rearrange_enclosure(grid), LorentzIndex::dual_pair(p));
}

namespace {

struct LevelData {
    std::vector<double> w_lo;   // certified windowed integrals
    std::vector<double> u_hi;   // certified off-window remainders
    std::vector<double> leb_lo; // certified in-window Lebesgue values
    std::vector<double> leb_off;
    bool model = false;
};

LevelData extend_levels(const WitnessFamily& fam, int k) {
    LevelData data;
    const int J = fam.count();
    data.model = k > J;
    data.w_lo.resize(static_cast<std::size_t>(k));
    data.u_hi.resize(static_cast<std::size_t>(k));
    data.leb_lo.resize(static_cast<std::size_t>(k));
    data.leb_off.resize(static_cast<std::size_t>(k));
    const WitnessLevel& last = fam.levels.back();
    for (int j = 0; j < k; ++j) {
        const std::size_t js = static_cast<std::size_t>(j);
        if (j < J) {
            const WitnessLevel& lv = fam.levels[js];
            data.w_lo[js] = lv.rear.windowed.lo;
            data.u_hi[js] = lv.freq.off_upper.hi;
            data.leb_lo[js] = lv.freq.leb_in.lo;
            data.leb_off[js] = lv.freq.leb_off_upper;
        } else {
            // Synthetic continuation of the budget ladder gamma_j = eps 2^{-j}:
            // remainders keep shrinking geometrically, windowed integrals
            // approach the certified norm at the same relative rate.
            const double gamma_j = fam.epsilon * std::pow(2.0, -(j + 1));
            const double scale = gamma_j / last.gamma;
            data.w_lo[js] = last.rear.windowed.lo * (1.0 - gamma_j) / (1.0 - last.gamma);
            data.u_hi[js] = last.freq.off_upper.hi * scale;
            data.leb_lo[js] = last.freq.leb_in.lo;
            data.leb_off[js] = last.freq.leb_off_upper * scale;
        }
    }
    return data;
}

} // namespace

RatioReport min_ratio(const WitnessFamily& fam, int k, TargetNorm target, int budget,
                      std::uint64_t seed) {
    if (k < 1) throw DomainError("min_ratio: k must be positive");
    if (!fam.certified) throw ValidationError("min_ratio: family not certified");
    const double p = fam.p;
    const double pp = conjugate_exponent(p);
    const LevelData data = extend_levels(fam, k);

    int evals = 0;
    auto ratio = [&](const CoefficientVector& c) {
        ++evals;
        double num;
        if (target == TargetNorm::lorentz) {
            double acc = 0.0;
            for (int j = 0; j < k; ++j)
                acc += std::pow(std::abs(c.alpha[static_cast<std::size_t>(j)]), p) *
                       std::pow(data.w_lo[static_cast<std::size_t>(j)], p);
            num = std::pow(acc, 1.0 / p) - c.l1_weighted(data.u_hi);
        } else {
            double acc = 0.0;
            for (int j = 0; j < k; ++j)
                acc += std::pow(std::abs(c.alpha[static_cast<std::size_t>(j)]), pp) *
                       std::pow(data.leb_lo[static_cast<std::size_t>(j)], pp);
            num = std::pow(acc, 1.0 / pp) - c.l1_weighted(data.leb_off);
        }
        num = std::max(num, 0.0);
        const double den = data.model ? c.lq_norm(p) : upper_estimate(fam, c);
        return num / den;
    };

    Rng rng(seed);
    const int n_starts = 6;
    const int per_start = std::max(50, budget / n_starts);

    RatioReport report;
    report.k = k;
    report.target = target;
    report.seed = seed;
    report.budget = budget;
    report.min_ratio = std::numeric_limits<double>::infinity();
    report.converged = true;

    for (int s = 0; s < n_starts; ++s) {
        CoefficientVector c;
        c.alpha.assign(static_cast<std::size_t>(k), 0.0);
        if (s == 0) {
            c.alpha[0] = 1.0; // basis direction of the weakest level
        } else if (s == 1) {
            c.alpha.assign(static_cast<std::size_t>(k),
                           std::pow(static_cast<double>(k), -1.0 / p));
        } else {
            c = random_sphere_point(rng, k, p);
        }
        double best = ratio(c);
        double step = 0.5;
        const int start_cap = evals + per_start;
        while (step > 1e-4 && evals < start_cap) {
            bool improved = false;
            for (int j = 0; j < k && evals < start_cap; ++j) {
                for (double sign : {+1.0, -1.0}) {
                    CoefficientVector trial = c;
                    trial.alpha[static_cast<std::size_t>(j)] += sign * step;
                    const double norm = trial.lq_norm(p);
                    if (norm == 0.0) continue;
                    for (double& a : trial.alpha) a /= norm;
                    const double value = ratio(trial);
                    if (value < best - 1e-15) {
                        best = value;
                        c = trial;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (step > 1e-4) report.converged = false; // ran out of budget
        if (best < report.min_ratio) {
            report.min_ratio = best;
            report.argmin = c;
        }
    }
    report.model = data.model;
    return report;
}

double decay_exponent(const std::vector<RatioReport>& reports) {
    if (reports.size() < 3) throw DomainError("decay_exponent: need at least three reports");
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].target != reports[0].target)
            throw DomainError("decay_exponent: mixed targets");
        if (reports[i].k <= reports[i - 1].k)
            throw DomainError("decay_exponent: k must increase");
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& r : reports) {
        mx += std::log(static_cast<double>(r.k));
        my += std::log(r.min_ratio);
    }
    mx /= static_cast<double>(reports.size());
    my /= static_cast<double>(reports.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& r : reports) {
        const double dx = std::log(static_cast<double>(r.k)) - mx;
        sxy += dx * (std::log(r.min_ratio) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

} // namespace ftlab
