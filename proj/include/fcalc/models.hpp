#pragma once

#include <limits>
#include <optional>

#include "fcalc/fode.hpp"
#include "fcalc/interval.hpp"

namespace fcalc {

/// Compound interest in fractal time: D p = r p + k, p(0) = p0.
/// The alpha-order rates r and k are per time^alpha.
struct InterestParams {
    double p0 = 0.0;     // initial balance
    double r = 0.0;      // interest rate (1/time^alpha)
    double k = 0.0;      // deposit/withdrawal rate (currency/time^alpha)
    double alpha = 1.0;
};

/// Balance at time t: p = p0 e^{r s} + (k/r)(e^{r s} - 1) with s = S(t);
/// r = 0 falls back to the limit form p0 + k s. The default map is the
/// surrogate s = t^alpha; pass a time map for staircase-exact output.
double interest_balance(const InterestParams& params, double t);
double interest_balance(const InterestParams& params, double t, const TimeMap& time);

/// Escape velocity in fractal space and time.
struct EscapeParams {
    double g = 9.8;        // surface gravity (length/time^2)
    double R = 6.37e6;     // body radius (length)
    double v0 = 0.0;       // initial velocity (length/time)
    double alpha = 1.0;
};

struct EscapeProfile {
    double x_max = 0.0;        // max altitude; +inf when the flight is unbounded
    double v0_required = 0.0;  // initial velocity that reaches x_max back again
    double v_escape = 0.0;     // (2 g R)^(1 / (2 alpha))

    bool unbounded() const { return !std::isfinite(x_max); }
};

EscapeProfile escape_profile(const EscapeParams& params);
EscapeProfile escape_profile(const EscapeParams& params, const TimeMap& velocity_map);

/// Newton cooling with fractal time; temperatures at discovery (t = 0),
/// at a later measurement t1, and at death.
struct CoolingParams {
    double Ts = 20.0;    // ambient
    double T0 = 30.0;    // at discovery
    double T1 = 25.0;    // at measurement time t1
    double t1 = 1.0;
    double Td = 37.0;    // at death
    double alpha = 1.0;
};

/// T(t) = Ts + (T0 - Ts) e^{-k s(t)}; k is per time^alpha.
double cooling_temperature(const CoolingParams& params, double k, double t);
double cooling_temperature(const CoolingParams& params, double k, double t, const TimeMap& time);

/// Cooling rate from the (T0, T1, t1) measurement pair.
double estimate_k(const CoolingParams& params);
double estimate_k(const CoolingParams& params, const TimeMap& time);

/// Elapsed time since death: |-(1/k) ln((Td - Ts)/(T0 - Ts))|^(1/alpha).
double estimate_time_of_death(const CoolingParams& params);
double estimate_time_of_death(const CoolingParams& params, const TimeMap& time);

} // namespace fcalc
