#pragma once

#include <cmath>
#include <stdexcept>

namespace fcalc {

/// Closed interval [lo, hi] on the real axis.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool empty() const { return hi < lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool intersects(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }
};

/// Validated fractional order. Set calculus admits 0 < alpha <= 1,
/// curve calculus 1 <= alpha <= n (ambient dimension).
class AlphaOrder {
  public:
    static AlphaOrder for_set(double alpha) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("set-case alpha must lie in (0, 1]");
        return AlphaOrder(alpha);
    }

    static AlphaOrder for_curve(double alpha, int ambient_dim = 2) {
        if (ambient_dim < 1)
            throw std::invalid_argument("ambient dimension must be positive");
        if (!(alpha >= 1.0 && alpha <= static_cast<double>(ambient_dim)))
            throw std::invalid_argument("curve-case alpha must lie in [1, n]");
        return AlphaOrder(alpha);
    }

    double value() const { return value_; }

  private:
    explicit AlphaOrder(double v) : value_(v) {}
    double value_;
};

/// Gamma(alpha + 1) as used by the mass sums. The argument stays in (1, 3]
/// for every admissible order, where the library implementation is accurate
/// to well below 1e-12.
inline double gamma_alpha_plus_1(double alpha) { return std::tgamma(alpha + 1.0); }

} // namespace fcalc
