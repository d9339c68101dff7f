#include "ftlab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_p_interior(double p, const char* who) {
    if (!(p > 1.0) || !(p < 2.0)) throw DomainError(std::string(who) + ": p must lie in (1,2)");
}

// Closed-form upper bound of ||F g_1 chi_{|x| <= nu}||_{p',p}: the transform
// is bounded by its value at zero, 2^{1/p'}, on a set of measure 2 nu.
double inner_lorentz_upper(double p, double nu) {
    const double pp = conjugate_exponent(p);
    const double bmax = std::pow(2.0, 1.0 / pp);
    return bmax * std::pow(2.0 * nu, 1.0 / pp) * std::pow(pp / p, 1.0 / p);
}

double inner_lebesgue_upper(double p, double nu) {
    const double pp = conjugate_exponent(p);
    const double bmax = std::pow(2.0, 1.0 / pp);
    return bmax * std::pow(2.0 * nu, 1.0 / pp);
}

RearrangementEnclosure beyond_enclosure(const ReferenceProfile& prof, double x0) {
    const XRange beyond{x0, kInf};
    return rearrange_restricted(prof.grid, std::span<const XRange>(&beyond, 1), prof.order);
}

RearrangementEnclosure window_enclosure(const ReferenceProfile& prof, double lo, double hi) {
    const XRange band{lo, hi};
    return rearrange_restricted(prof.grid, std::span<const XRange>(&band, 1), prof.order);
}

} // namespace

double admissible_eta(double p, double gamma, double safety) {
    validate_p_interior(p, "admissible_eta");
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw DomainError("admissible_eta: gamma must lie in (0,1)");
    if (!(safety > 0.0) || safety > 1.0)
        throw DomainError("admissible_eta: safety must lie in (0,1]");
    const double by_g = 1.0 - std::pow(1.0 - gamma, p); // keeps ||g chi_G||_p >= 1-gamma
    const double by_e = std::pow(gamma, p);              // keeps ||g chi_E||_p <= gamma
    return safety * std::min(by_g, by_e);
}

FrequencyWindow frequency_window(double p, double gamma, const ReferenceProfile& prof,
                                 const Bracket& cp, std::size_t min_outer_index,
                                 double max_nu_lo, double inner_share) {
    validate_p_interior(p, "frequency_window");
    if (!(gamma > 0.0) || gamma > 1.0)
        throw DomainError("frequency_window: gamma must lie in (0,1]");
    if (!(inner_share > 0.0) || !(inner_share < 1.0))
        throw DomainError("frequency_window: inner_share must lie in (0,1)");
    if (!(cp.lo > 0.0)) throw DomainError("frequency_window: c_p bracket must be positive");

    const double budget = cp.lo * gamma / 2.0;
    const auto idx = LorentzIndex::dual_pair(p);
    const double pp = conjugate_exponent(p);
    const double bmax = std::pow(2.0, 1.0 / pp);

    FrequencyWindow fw;
    // Inner cut: solve the closed form for inner_share * budget, then shrink.
    fw.nu_lo = 0.5 * std::pow(inner_share * budget / (bmax * std::pow(pp / p, 1.0 / p)), pp);
    fw.nu_lo *= 0.995;
    fw.nu_lo = std::min(fw.nu_lo, prof.X / 16.0);
    if (max_nu_lo > 0.0) fw.nu_lo = std::min(fw.nu_lo, max_nu_lo);
    const double inner_up = inner_lorentz_upper(p, fw.nu_lo);

    const double outer_budget = budget - inner_up;
    if (!(outer_budget > 0.0))
        throw UnresolvedError("frequency_window: inner cut exhausted the budget", inner_up);

    // The outer search runs on a conservatively coarsened grid (whose upper
    // bounds dominate the fine ones, so any cut it certifies also certifies
    // at full resolution); only the final cut is re-evaluated on the profile.
    const std::size_t coarse_factor = std::max<std::size_t>(1, prof.grid.cells() >> 18);
    const GridEnclosure coarse = coarsen(prof.grid, coarse_factor);
    const GridOrder coarse_order = order_cells(coarse);
    const auto& b = coarse.boundaries();
    const std::size_t n = coarse.cells();
    const std::size_t start = static_cast<std::size_t>(
        std::lower_bound(b.begin(), b.end(),
                         std::max({2.0 * fw.nu_lo, 1.0,
                                   min_outer_index > 0
                                       ? prof.grid.boundaries()[min_outer_index] * (1.0 + 1e-12)
                                       : 0.0})) -
        b.begin());
    const std::size_t i0 = std::max<std::size_t>(start, 1);
    if (i0 > n)
        throw UnresolvedError("frequency_window: grid shorter than the search start", inner_up);

    auto coarse_outer_upper = [&](std::size_t i) {
        const XRange beyond{b[i], kInf};
        const auto encl =
            rearrange_restricted(coarse, std::span<const XRange>(&beyond, 1), coarse_order);
        return lorentz_norm(encl, idx).hi;
    };

    // Expand the outer cut geometrically, then bisect back to the smallest
    // passing coarse boundary.
    std::size_t lo_fail = 0;
    std::size_t hi_pass = 0;
    double best = kInf;
    for (std::size_t i = i0;;) {
        const double val = coarse_outer_upper(i);
        best = std::min(best, inner_up + val);
        if (val <= outer_budget) {
            hi_pass = i;
            break;
        }
        lo_fail = i;
        if (i == n)
            throw UnresolvedError("frequency_window: cutoff too small for the budget", best);
        i = std::min(n, 2 * i);
    }
    while (hi_pass > lo_fail + 1 && lo_fail >= i0) {
        const std::size_t mid = lo_fail + (hi_pass - lo_fail) / 2;
        if (coarse_outer_upper(mid) <= outer_budget)
            hi_pass = mid;
        else
            lo_fail = mid;
    }

    fw.nu_hi = b[hi_pass];
    const auto& fine_b = prof.grid.boundaries();
    fw.nu_hi_index = static_cast<std::size_t>(
        std::lower_bound(fine_b.begin(), fine_b.end(), fw.nu_hi) - fine_b.begin());
    // Certify the chosen cut at full resolution.
    const double outer_at_pass = lorentz_norm(beyond_enclosure(prof, fw.nu_hi), idx).hi;
    if (!(outer_at_pass <= outer_budget))
        throw UnresolvedError("frequency_window: full-resolution certification failed",
                              inner_up + outer_at_pass);
    fw.off_upper = Bracket(0.0, inner_up + outer_at_pass);

    const auto in_encl = window_enclosure(prof, fw.nu_lo, fw.nu_hi);
    Bracket in_win = lorentz_norm(in_encl, idx);
    // Strengthen by the reverse triangle inequality and cap by the full norm.
    const double lo = std::max(in_win.lo, cp.lo - fw.off_upper.hi);
    const double hi = std::min(in_win.hi, cp.hi);
    fw.in_window = Bracket(std::min(lo, hi), hi);

    const LorentzIndex leb(pp, pp);
    fw.leb_in = lorentz_norm(in_encl, leb);
    fw.leb_off_upper =
        inner_lebesgue_upper(p, fw.nu_lo) + lorentz_norm(beyond_enclosure(prof, fw.nu_hi), leb).hi;
    return fw;
}

RearrangementWindow rearrangement_window(double p, double gamma,
                                         const RearrangementEnclosure& in_window_enclosure,
                                         const FrequencyWindow& fw, const Bracket& cp) {
    validate_p_interior(p, "rearrangement_window");
    if (!(gamma > 0.0) || gamma > 1.0)
        throw DomainError("rearrangement_window: gamma must lie in (0,1]");
    const double W = 2.0 * (fw.nu_hi - fw.nu_lo);
    if (!(W > 0.0)) throw DomainError("rearrangement_window: empty frequency window");
    const double target = cp.hi * (1.0 - gamma);
    const auto idx = LorentzIndex::dual_pair(p);
    const double inv_s = 1.0 / idx.s;

    const StepIntegralTable lower_table(in_window_enclosure.lower, idx);
    const StepIntegralTable upper_table(in_window_enclosure.upper, idx);

    // Grow the window from inside out until the certified lower integral
    // clears the target.  (The window-restricted enclosure has no tail.)
    double best = 0.0;
    for (int k = 0; k <= 40; ++k) {
        const double frac = std::pow(4.0, -(k + 1));
        const double d_lo = W * frac;
        const double d_hi = W * (1.0 - frac);
        const double lo = std::pow(lower_table.integral(d_lo, d_hi), inv_s);
        best = std::max(best, lo);
        if (lo >= target) {
            const double hi = std::pow(upper_table.integral(d_lo, d_hi), inv_s);
            return RearrangementWindow{d_lo, d_hi, Bracket(std::min(lo, hi), hi)};
        }
    }
    throw UnresolvedError("rearrangement_window: windowed integral below target", best);
}

BigRational next_scale(const WitnessLevel& prev, double eta_next, double nu_lo_next,
                       double delta_lo_next, double margin, long max_denominator) {
    if (!(margin > 1.0)) throw DomainError("next_scale: margin must exceed 1");
    if (!(eta_next > 0.0) || !(nu_lo_next > 0.0) || !(delta_lo_next > 0.0))
        throw DomainError("next_scale: thresholds must be positive");
    if (!(eta_next < prev.eta))
        throw DomainError("next_scale: eta must decrease between levels");
    if (max_denominator < 1) throw DomainError("next_scale: max_denominator must be >= 1");

    BigRational ratio = BigRational(1) / rational_from_double(prev.eta);
    ratio = std::max(ratio, BigRational(rational_from_double(prev.freq.nu_hi) /
                                        rational_from_double(nu_lo_next)));
    ratio = std::max(ratio, BigRational(rational_from_double(prev.rear.delta_hi) /
                                        rational_from_double(delta_lo_next)));
    const BigRational bound = prev.a * ratio;
    BigRational next = ceil_to_denominator(bound * rational_from_double(margin),
                                           BigInt(max_denominator));
    const BigRational quantum(1, max_denominator);
    while (next <= bound) next += quantum;
    return next;
}

namespace {

void certify_levels(WitnessFamily& fam, const ReferenceProfile& win_prof, int levels) {
    const double p = fam.p;
    fam.levels.clear();
    fam.levels.reserve(static_cast<std::size_t>(levels));
    for (int j = 1; j <= levels; ++j) {
        try {
            WitnessLevel lv;
            lv.j = j;
            lv.gamma = fam.epsilon * std::pow(2.0, -j);
            lv.eta = admissible_eta(p, lv.gamma, fam.policy.safety);

            const WitnessLevel* prev = fam.levels.empty() ? nullptr : &fam.levels.back();
            lv.freq = frequency_window(p, lv.gamma, win_prof, fam.cp,
                                       prev ? prev->freq.nu_hi_index : 0,
                                       prev ? prev->freq.nu_lo * 0.999 : 0.0,
                                       fam.policy.inner_share);
            const auto in_encl = window_enclosure(win_prof, lv.freq.nu_lo, lv.freq.nu_hi);
            lv.rear = rearrangement_window(p, lv.gamma, in_encl, lv.freq, fam.cp);

            lv.a = prev ? next_scale(*prev, lv.eta, lv.freq.nu_lo, lv.rear.delta_lo,
                                     fam.policy.margin, fam.policy.max_denominator)
                        : BigRational(1);
            lv.a_value = to_double(lv.a);

            lv.margin_time_g = std::pow(1.0 - lv.eta, 1.0 / p) - (1.0 - lv.gamma);
            lv.margin_time_e = lv.gamma - std::pow(lv.eta, 1.0 / p);
            lv.margin_off = fam.cp.lo * lv.gamma / 2.0 - lv.freq.off_upper.hi;
            lv.margin_window = lv.rear.windowed.lo - fam.cp.hi * (1.0 - lv.gamma);
            if (!(lv.margin_time_g > 0.0) || !(lv.margin_time_e > 0.0) ||
                !(lv.margin_off > 0.0) || !(lv.margin_window > 0.0))
                throw UnresolvedError("certificate margin not positive",
                                      std::min({lv.margin_time_g, lv.margin_time_e,
                                                lv.margin_off, lv.margin_window}));
            fam.levels.push_back(std::move(lv));
        } catch (const UnresolvedError& e) {
            throw UnresolvedError("witness level " + std::to_string(j) + ": " + e.what(),
                                  e.achieved);
        }
    }
}

} // namespace

WitnessFamily build_family(double p, double epsilon, int levels, BuildPolicy policy) {
    validate_p_interior(p, "build_family");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw DomainError("build_family: epsilon must lie in (0,1)");
    if (levels < 1) throw DomainError("build_family: need at least one level");

    WitnessFamily fam;
    fam.p = p;
    fam.epsilon = epsilon;
    fam.policy = policy;

    const ReferenceProfile cp_prof = reference_profile(p, policy.cp_X, policy.cp_cells);
    fam.cp = cp_prof.cp;

    double win_X = policy.win_X;
    if (win_X <= 0.0) {
        // Envelope bound on the outer cut needed by the last level's budget:
        // || (2/|x|) 2^{-1/p} chi_{|x| > nu} ||_{p',p}^p <= 2^{p-1} C^p p/((p-1) nu).
        const double gamma_last = epsilon * std::pow(2.0, -levels);
        const double out_budget = (1.0 - policy.inner_share) * fam.cp.lo * gamma_last / 2.0;
        const double C = 2.0 * std::pow(2.0, -1.0 / p);
        const double nu_env = std::pow(2.0, p - 1.0) * std::pow(C, p) * (p / (p - 1.0)) /
                              std::pow(out_budget, p);
        win_X = 1.25 * std::max(nu_env, 8.0);
    }
    fam.win_X = win_X;
    fam.win_cells = policy.win_cells;
    const ReferenceProfile win_prof = reference_profile(p, win_X, policy.win_cells);

    certify_levels(fam, win_prof, levels);
    fam.certified = verify_disjoint(fam);
    if (!fam.certified)
        throw ValidationError("build_family: disjointness verification failed");
    return fam;
}

bool verify_disjoint(const WitnessFamily& fam) {
    const int J = fam.count();
    for (int j = 0; j < J; ++j) {
        for (int k = j + 1; k < J; ++k) {
            const WitnessLevel& a = fam.levels[static_cast<std::size_t>(j)];
            const WitnessLevel& b = fam.levels[static_cast<std::size_t>(k)];
            // G_j disjoint: 1/a_k < eta_j / a_j.
            if (!(b.a * rational_from_double(a.eta) > a.a)) return false;
            // Ghat: nu_hi_j a_j < nu_lo_k a_k.
            if (!(b.a * rational_from_double(b.freq.nu_lo) >
                  a.a * rational_from_double(a.freq.nu_hi)))
                return false;
            // I: delta_hi_j a_j < delta_lo_k a_k.
            if (!(b.a * rational_from_double(b.rear.delta_lo) >
                  a.a * rational_from_double(a.rear.delta_hi)))
                return false;
        }
    }
    return true;
}

WitnessFamily reverify(const WitnessFamily& fam, double cell_factor) {
    if (!(cell_factor >= 1.0)) throw DomainError("reverify: cell factor must be >= 1");
    auto scaled = [&](std::size_t c) {
        return static_cast<std::size_t>(std::llround(static_cast<double>(c) * cell_factor));
    };

    WitnessFamily out = fam;
    const ReferenceProfile cp_prof =
        reference_profile(fam.p, fam.policy.cp_X, scaled(fam.policy.cp_cells));
    const ReferenceProfile win_prof = reference_profile(fam.p, fam.win_X, scaled(fam.win_cells));
    out.cp = cp_prof.cp;
    out.win_cells = scaled(fam.win_cells);

    const double p = fam.p;
    const auto idx = LorentzIndex::dual_pair(p);
    const double pp = conjugate_exponent(p);
    for (WitnessLevel& lv : out.levels) {
        const double inner_up = inner_lorentz_upper(p, lv.freq.nu_lo);
        const double outer_up = lorentz_norm(beyond_enclosure(win_prof, lv.freq.nu_hi), idx).hi;
        lv.freq.off_upper = Bracket(0.0, inner_up + outer_up);
        const auto in_encl = window_enclosure(win_prof, lv.freq.nu_lo, lv.freq.nu_hi);
        Bracket in_win = lorentz_norm(in_encl, idx);
        const double lo = std::max(in_win.lo, out.cp.lo - lv.freq.off_upper.hi);
        const double hi = std::min(in_win.hi, out.cp.hi);
        lv.freq.in_window = Bracket(std::min(lo, hi), hi);
        lv.freq.leb_in = lorentz_norm(in_encl, LorentzIndex(pp, pp));
        lv.freq.leb_off_upper =
            inner_lebesgue_upper(p, lv.freq.nu_lo) +
            lorentz_norm(beyond_enclosure(win_prof, lv.freq.nu_hi), LorentzIndex(pp, pp)).hi;
        lv.rear.windowed =
            lorentz_norm(in_encl, idx, Window{lv.rear.delta_lo, lv.rear.delta_hi});

        const double old_off = fam.levels[static_cast<std::size_t>(lv.j - 1)].margin_off;
        const double old_win = fam.levels[static_cast<std::size_t>(lv.j - 1)].margin_window;
        lv.margin_off = out.cp.lo * lv.gamma / 2.0 - lv.freq.off_upper.hi;
        lv.margin_window = lv.rear.windowed.lo - out.cp.hi * (1.0 - lv.gamma);
        if ((old_off > 0.0) != (lv.margin_off > 0.0) ||
            (old_win > 0.0) != (lv.margin_window > 0.0))
            throw ValidationError("reverify: certificate margin changed sign at level " +
                                  std::to_string(lv.j));
    }
    out.certified = verify_disjoint(out);
    return out;
}

namespace {

nlohmann::ordered_json bracket_json(const Bracket& b) {
    return {{"lo", b.lo}, {"hi", b.hi}};
}

Bracket bracket_from(const nlohmann::json& j) {
    return Bracket(j.at("lo").get<double>(), j.at("hi").get<double>());
}

} // namespace

nlohmann::ordered_json family_to_json(const WitnessFamily& fam) {
    nlohmann::ordered_json doc;
    doc["kind"] = "witness-certificate";
    doc["format"] = 1;
    doc["p"] = fam.p;
    doc["epsilon"] = fam.epsilon;
    doc["levels"] = fam.count();
    doc["cp"] = bracket_json(fam.cp);
    doc["resolution"] = {{"cp_X", fam.policy.cp_X},
                         {"cp_cells", fam.policy.cp_cells},
                         {"win_X", fam.win_X},
                         {"win_cells", fam.win_cells}};
    doc["policy"] = {{"margin", fam.policy.margin},
                     {"safety", fam.policy.safety},
                     {"inner_share", fam.policy.inner_share},
                     {"max_denominator", fam.policy.max_denominator}};
    doc["certified"] = fam.certified;
    auto& arr = doc["level"] = nlohmann::ordered_json::array();
    for (const WitnessLevel& lv : fam.levels) {
        nlohmann::ordered_json l;
        l["j"] = lv.j;
        l["gamma"] = lv.gamma;
        l["a"] = rational_to_string(lv.a);
        l["eta"] = lv.eta;
        l["nu_lo"] = lv.freq.nu_lo;
        l["nu_hi"] = lv.freq.nu_hi;
        l["nu_hi_index"] = lv.freq.nu_hi_index;
        l["delta_lo"] = lv.rear.delta_lo;
        l["delta_hi"] = lv.rear.delta_hi;
        l["off_upper_hi"] = lv.freq.off_upper.hi;
        l["in_window"] = bracket_json(lv.freq.in_window);
        l["windowed"] = bracket_json(lv.rear.windowed);
        l["lebesgue_in"] = bracket_json(lv.freq.leb_in);
        l["lebesgue_off_upper"] = lv.freq.leb_off_upper;
        l["margins"] = {{"time_g", lv.margin_time_g},
                        {"time_e", lv.margin_time_e},
                        {"off", lv.margin_off},
                        {"window", lv.margin_window}};
        arr.push_back(std::move(l));
    }
    return doc;
}

WitnessFamily family_from_json(const nlohmann::json& doc) {
    if (doc.at("kind") != "witness-certificate")
        throw ValidationError("family_from_json: not a witness certificate");
    WitnessFamily fam;
    fam.p = doc.at("p").get<double>();
    fam.epsilon = doc.at("epsilon").get<double>();
    fam.cp = bracket_from(doc.at("cp"));
    const auto& res = doc.at("resolution");
    fam.policy.cp_X = res.at("cp_X").get<double>();
    fam.policy.cp_cells = res.at("cp_cells").get<std::size_t>();
    fam.win_X = res.at("win_X").get<double>();
    fam.win_cells = res.at("win_cells").get<std::size_t>();
    const auto& pol = doc.at("policy");
    fam.policy.margin = pol.at("margin").get<double>();
    fam.policy.safety = pol.at("safety").get<double>();
    fam.policy.inner_share = pol.at("inner_share").get<double>();
    fam.policy.max_denominator = pol.at("max_denominator").get<long>();
    for (const auto& l : doc.at("level")) {
        WitnessLevel lv;
        lv.j = l.at("j").get<int>();
        lv.gamma = l.at("gamma").get<double>();
        lv.a = rational_from_string(l.at("a").get<std::string>());
        lv.a_value = to_double(lv.a);
        lv.eta = l.at("eta").get<double>();
        lv.freq.nu_lo = l.at("nu_lo").get<double>();
        lv.freq.nu_hi = l.at("nu_hi").get<double>();
        lv.freq.nu_hi_index = l.at("nu_hi_index").get<std::size_t>();
        lv.rear.delta_lo = l.at("delta_lo").get<double>();
        lv.rear.delta_hi = l.at("delta_hi").get<double>();
        lv.freq.off_upper = Bracket(0.0, l.at("off_upper_hi").get<double>());
        lv.freq.in_window = bracket_from(l.at("in_window"));
        lv.rear.windowed = bracket_from(l.at("windowed"));
        lv.freq.leb_in = bracket_from(l.at("lebesgue_in"));
        lv.freq.leb_off_upper = l.at("lebesgue_off_upper").get<double>();
        const auto& m = l.at("margins");
        lv.margin_time_g = m.at("time_g").get<double>();
        lv.margin_time_e = m.at("time_e").get<double>();
        lv.margin_off = m.at("off").get<double>();
        lv.margin_window = m.at("window").get<double>();
        fam.levels.push_back(std::move(lv));
    }
    bool margins_ok = true;
    for (const WitnessLevel& lv : fam.levels)
        margins_ok = margins_ok && lv.margin_time_g > 0.0 && lv.margin_time_e > 0.0 &&
                     lv.margin_off > 0.0 && lv.margin_window > 0.0;
    fam.certified = margins_ok && verify_disjoint(fam) && doc.at("certified").get<bool>();
    return fam;
}

} // namespace ftlab
