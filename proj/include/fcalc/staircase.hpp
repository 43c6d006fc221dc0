#pragma once

#include <optional>
#include <vector>

#include "fcalc/cantor.hpp"
#include "fcalc/interval.hpp"

namespace fcalc {

/// Sampled integral staircase: strictly increasing breakpoints x_i with
/// non-decreasing values S_i, anchored so S(origin) = 0. Evaluation
/// interpolates monotonically; inversion returns the smallest preimage.
/// Also used for the curve-case rise function (breakpoints = parameters u_i).
class StaircaseTable {
  public:
    StaircaseTable(std::vector<double> breakpoints, std::vector<double> values, double origin,
                   AlphaOrder alpha);

    const std::vector<double>& breakpoints() const { return x_; }
    const std::vector<double>& values() const { return s_; }
    double origin() const { return origin_; }
    double alpha() const { return alpha_; }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }
    double min_value() const { return s_.front(); }
    double max_value() const { return s_.back(); }

    /// Smallest positive jump between consecutive values; the quantization
    /// scale of the table (used for the default derivative step).
    double min_positive_increment() const;
    double max_increment() const;

  private:
    std::vector<double> x_;
    std::vector<double> s_;
    double origin_;
    double alpha_;
};

/// Monotone piecewise-linear evaluation of S at x.
double staircase_eval(const StaircaseTable& table, double x);

/// Smallest x with S(x) >= s (pseudo-inverse; plateaus map to their left
/// edge). A relative slack of ~1e-12 absorbs rounding in s.
double staircase_invert(const StaircaseTable& table, double s);

/// Integral staircase of the cover from `origin`: S(x) is the signed native
/// mass between origin and x. Breakpoints sit at every piece endpoint and
/// every gap midpoint, plus a uniform grid of `samples` points so sparse
/// covers still evaluate smoothly.
StaircaseTable build_staircase(const IntervalCover& cover, AlphaOrder alpha, double origin,
                               int samples = 2);

/// Same, with alpha defaulted to the estimated gamma-dimension of the
/// cover's generator.
StaircaseTable build_staircase(const IntervalCover& cover, double origin, int samples = 2);

} // namespace fcalc
