#pragma once

#include <cstddef>
#include <vector>

#include "ftlab/bracket.hpp"
#include "ftlab/profile.hpp"
#include "ftlab/rational.hpp"

#include "json.hpp"

namespace ftlab {

// Largest safe inner cut eta for the time-side inequalities at level budget
// gamma: both ||g_1 chi_{|t| in (eta,1]}||_p >= 1 - gamma and
// ||g_1 chi_{|t| <= eta}||_p <= gamma must hold, i.e.
// eta <= min(1 - (1-gamma)^p, gamma^p) = gamma^p for p > 1.
// The safety factor keeps the inequalities strict.
double admissible_eta(double p, double gamma, double safety = 0.99);

// Frequency-side window at reference scale a = 1 for budget gamma, certified
// against the c_p bracket: the off-window (p',p) norm is at most
// cp.lo * gamma / 2.  The inner cut comes from a closed-form bound, the outer
// cut from a grid-boundary search.
struct FrequencyWindow {
    double nu_lo = 0.0;
    double nu_hi = 0.0;
    std::size_t nu_hi_index = 0; // grid boundary index of nu_hi
    Bracket off_upper{0.0, 0.0}; // ||F g_1 chi_off||_{p',p}, certified in .hi
    Bracket in_window{0.0, 0.0}; // ||F g_1 chi_window||_{p',p}
    Bracket leb_in{0.0, 0.0};    // ||F g_1 chi_window||_{p'}
    double leb_off_upper = 0.0;  // ||F g_1 chi_off||_{p'}, certified upper
};

FrequencyWindow frequency_window(double p, double gamma, const ReferenceProfile& grid_profile,
                                 const Bracket& cp, std::size_t min_outer_index = 0,
                                 double max_nu_lo = 0.0, double inner_share = 0.25);

// Integration window (delta_lo, delta_hi) inside (0, 2(nu_hi - nu_lo)) whose
// certified lower Lorentz integral of (F g_1 chi_window)^* reaches
// cp.hi * (1 - gamma).
struct RearrangementWindow {
    double delta_lo = 0.0;
    double delta_hi = 0.0;
    Bracket windowed{0.0, 0.0}; // the delta-windowed integral bracket
};

RearrangementWindow rearrangement_window(double p, double gamma,
                                         const RearrangementEnclosure& in_window_enclosure,
                                         const FrequencyWindow& fw, const Bracket& cp);

struct WitnessLevel {
    int j = 0;
    double gamma = 0.0;
    BigRational a;            // exact scale
    double a_value = 1.0;     // rounded scale for floating-point work
    double eta = 0.0;
    FrequencyWindow freq;
    RearrangementWindow rear;

    // Certified margins; all must be positive.
    double margin_time_g = 0.0;   // (1-eta)^{1/p} - (1-gamma)
    double margin_time_e = 0.0;   // gamma - eta^{1/p}
    double margin_off = 0.0;      // cp.lo*gamma/2 - off_upper.hi
    double margin_window = 0.0;   // windowed.lo - cp.hi*(1-gamma)
};

struct BuildPolicy {
    double cp_X = 400.0;
    std::size_t cp_cells = std::size_t{1} << 18;
    double win_X = 0.0; // 0: derived from the envelope bound for the last level
    std::size_t win_cells = std::size_t{1} << 22;
    double margin = 1.0 + 1e-3;  // strictness factor of the scale recursion
    double safety = 0.99;        // threshold shrink factor
    double inner_share = 0.25;   // off-window budget share spent on |x| <= nu_lo
    long max_denominator = 1;    // scales rounded up to multiples of 1/max_denominator
};

struct WitnessFamily {
    double p = 0.0;
    double epsilon = 0.0;
    std::vector<WitnessLevel> levels;
    Bracket cp{0.0, 0.0};
    BuildPolicy policy;
    double win_X = 0.0;
    std::size_t win_cells = 0;
    bool certified = false;

    int count() const { return static_cast<int>(levels.size()); }
};

// The full lacunary construction: J levels with budgets gamma_j = eps 2^{-j},
// all three per-level inequalities certified at reference scale and the three
// disjointness families verified exactly on rational endpoints.
WitnessFamily build_family(double p, double epsilon, int levels, BuildPolicy policy = {});

// Smallest admissible next scale:
// ceil( margin * a_prev * max{1/eta_prev, nuR_prev/nuL_next, dR_prev/dL_next} )
// rounded up to a multiple of 1/max_denominator; exact rational arithmetic.
BigRational next_scale(const WitnessLevel& prev, double eta_next, double nu_lo_next,
                       double delta_lo_next, double margin = 1.0 + 1e-3,
                       long max_denominator = 1);

// Exact pairwise disjointness of the G, Ghat and I families.
bool verify_disjoint(const WitnessFamily& family);

// Recompute every bracket at cell_factor times the resolution with all
// thresholds pinned; throws ValidationError if any margin changes sign.
WitnessFamily reverify(const WitnessFamily& family, double cell_factor = 2.0);

nlohmann::ordered_json family_to_json(const WitnessFamily& family);
WitnessFamily family_from_json(const nlohmann::json& doc);

} // namespace ftlab
