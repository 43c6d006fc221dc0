#pragma once

#include "fcalc/cantor.hpp"
#include "fcalc/errors.hpp"
#include "fcalc/interval.hpp"

namespace fcalc {

/// Result of driving the coarse-grained mass to its small-delta limit.
struct MassEstimate {
    double alpha = 0.0;
    double delta = 0.0;      // max subinterval width at the final depth
    double value = 0.0;
    int depth = 0;           // final depth reached
    bool converged = false;  // Cauchy rule (or geometric decay to zero) met
    bool diverged = false;   // values grew monotonically past the growth gate
};

struct MassFunctionOptions {
    int max_depth = 40;
    // Geometric decay/growth gates: a run of stable ratios on the given side
    // of 1 plus a net factor-of-ten move settles the limit.
    double vanish_ratio = 0.97;
    double diverge_ratio = 1.03;
    int ratio_run = 4;
    double decade_factor = 10.0;
};

/// Coarse-grained mass of the cover against a subdivision of `range` no
/// coarser than `delta`. Subdivisions align with the cover's piece endpoints
/// (see the module notes: misaligned grids only raise the sum), so each
/// flagged run contributes the minimal split of its width into cells <= delta.
double coarse_mass(const IntervalCover& cover, AlphaOrder alpha, Interval range, double delta);

/// Mass of the depth-n Cantor cover over `range` at its native subdivision
/// scale, evaluated by descending the generator tree. Identical to
/// coarse_mass(build_cantor_cover(gen, depth), alpha, range, native width)
/// but O(depth), so depth sweeps never materialize pieces.
double cantor_native_mass(const CantorGenerator& generator, int depth, AlphaOrder alpha,
                          Interval range);

/// Limit of the coarse-grained mass under depth-indexed refinement.
MassEstimate mass_function(const CantorGenerator& generator, AlphaOrder alpha, Interval range,
                           double tol, const MassFunctionOptions& options = {});

struct DimensionOptions {
    int classify_depth_lo = 4;
    int classify_depth_hi = 14;
    // |log ratio| below this reads as "at the dimension"; the depthwise
    // ratios are exact for the generator families, so the band can sit just
    // above rounding noise.
    double slope_margin = 0.002;
};

/// gamma-dimension of the generator family on `range`: bisection on alpha
/// classifying each trial by the depthwise trend of the native mass.
double gamma_dimension(const CantorGenerator& generator, Interval range, double tol,
                       const DimensionOptions& options = {});

} // namespace fcalc
