#pragma once

#include <algorithm>
#include <vector>

#include "ftlab/piecewise.hpp"
#include "ftlab/rng.hpp"

namespace ftlab::testing {

// Random canonical piecewise-constant function: disjoint pieces, values in
// [-value_span, value_span], occasional zeros.
inline PiecewiseConstantFn random_pc(Rng& rng, int max_pieces = 8, double value_span = 4.0) {
    const int n = rng.uniform_int(0, max_pieces);
    std::vector<double> cuts;
    for (int i = 0; i < 2 * n; ++i) cuts.push_back(rng.uniform(-10.0, 10.0));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Piece> pieces;
    for (int i = 0; i < n; ++i) {
        double v = rng.uniform(-value_span, value_span);
        if (rng.uniform() < 0.1) v = 0.0;
        pieces.push_back(Piece{cuts[2 * i], cuts[2 * i + 1], v});
    }
    return PiecewiseConstantFn(std::move(pieces));
}

// Random function supported in [lo, hi).
inline PiecewiseConstantFn random_pc_in(Rng& rng, double lo, double hi, int max_pieces = 4) {
    const int n = rng.uniform_int(1, max_pieces);
    std::vector<double> cuts;
    for (int i = 0; i < 2 * n; ++i) cuts.push_back(rng.uniform(lo, hi));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Piece> pieces;
    for (int i = 0; i < n; ++i)
        pieces.push_back(Piece{cuts[2 * i], cuts[2 * i + 1], rng.uniform(0.1, 5.0)});
    return PiecewiseConstantFn(std::move(pieces));
}

} // namespace ftlab::testing
