#pragma once

#include <functional>
#include <limits>
#include <memory>

#include "fcalc/cantor.hpp"
#include "fcalc/curves.hpp"
#include "fcalc/errors.hpp"
#include "fcalc/staircase.hpp"

namespace fcalc {

/// A real function on a fractal support together with the staircase that
/// serves as its independent coordinate. Set case: evaluator of the axis
/// point x, staircase = integral staircase of the cover. Curve case:
/// evaluator of the parameter u, staircase = rise function J.
class FractalFunction {
  public:
    static FractalFunction on_set(std::shared_ptr<const IntervalCover> cover,
                                  std::shared_ptr<const StaircaseTable> staircase,
                                  std::function<double(double)> evaluator);

    /// Staircase-only variant (no membership information; every in-range
    /// point counts as support).
    static FractalFunction on_staircase(std::shared_ptr<const StaircaseTable> staircase,
                                        std::function<double(double)> evaluator);

    /// Curve case: the curve must carry a rise (build_rise).
    static FractalFunction on_curve(std::shared_ptr<const CurveApprox> curve,
                                    std::function<double(double)> evaluator);

    double eval(double x) const { return evaluator_(x); }
    bool on_support(double x) const;
    const StaircaseTable& staircase() const { return *staircase_; }

  private:
    FractalFunction() = default;
    std::function<double(double)> evaluator_;
    std::shared_ptr<const StaircaseTable> staircase_;
    std::shared_ptr<const IntervalCover> cover_;  // null: membership not tracked
};

/// F-alpha difference quotient of f at x: nearest breakpoints at staircase
/// distance >= h on each side, averaged when both exist. Points off the set
/// return exactly 0. h <= 0 selects the default step
/// sqrt(min positive staircase increment).
double f_alpha_derivative(const FractalFunction& f, double x, double h = 0.0);

struct IntegralResult {
    double value = 0.0;  // midpoint of the two sums
    double lower = 0.0;
    double upper = 0.0;
    double gap() const { return upper - lower; }
};

/// Riemann-Stieltjes sums of f against staircase increments over [a, b].
/// Upper and lower sums sample f at cell endpoints and midpoint; `tol`
/// (if finite) bounds the acceptable gap.
IntegralResult f_alpha_integral(const FractalFunction& f, double a, double b,
                                double tol = std::numeric_limits<double>::infinity());

IntegralResult f_alpha_integral(const FractalFunction& f, CurveSegment segment,
                                double tol = std::numeric_limits<double>::infinity());

/// Conjugacy transform: read f as a function of the staircase coordinate,
/// g(s) = f(smallest preimage of s).
std::function<double(double)> conjugate_to_ordinary(const FractalFunction& f);

/// Inverse transform: lift g to the fractal support, f = g o S.
FractalFunction conjugate_from_ordinary(std::function<double(double)> g,
                                        std::shared_ptr<const StaircaseTable> staircase);

} // namespace fcalc
