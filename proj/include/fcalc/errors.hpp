#pragma once

#include <stdexcept>
#include <string>

namespace fcalc {

/// Thrown when the vanish/diverge bisection sees inconsistent evidence;
/// carries the alpha bracket that could not be resolved.
class ClassificationError : public std::runtime_error {
  public:
    ClassificationError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo;
    double bracket_hi;
};

/// No support point within the difference-quotient search window.
class DerivativeUndefinedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Upper and lower Stieltjes sums disagree beyond the requested tolerance.
class NonIntegrableError : public std::runtime_error {
  public:
    NonIntegrableError(const std::string& what, double gap_value)
        : std::runtime_error(what), gap(gap_value) {}
    double gap;
};

/// Integrating factor left the representable range; the message suggests
/// splitting the solve range.
class ScalingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A real root of a negative quantity was required; carries the first
/// staircase coordinate where the branch broke down.
class DomainBreakError : public std::domain_error {
  public:
    DomainBreakError(const std::string& what, double at_s)
        : std::domain_error(what), s(at_s) {}
    double s;
};

/// Non-finite value encountered while evaluating user coefficients.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Cooling measurements incompatible with a monotone temperature decay.
class InconsistentMeasurementError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

} // namespace fcalc
