#include "fcalc/models.hpp"

#include <cmath>

#include "fcalc/errors.hpp"

namespace fcalc {

namespace {

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("model alpha must lie in (0, 1]");
}

} // namespace

double interest_balance(const InterestParams& params, double t, const TimeMap& time) {
    validate_alpha(params.alpha);
    if (t < 0.0) throw std::invalid_argument("t must be non-negative");
    const double s = time.s_of_t(t);
    if (params.r == 0.0) return params.p0 + params.k * s;  // documented limit form
    return params.p0 * std::exp(params.r * s) + params.k * std::expm1(params.r * s) / params.r;
}

double interest_balance(const InterestParams& params, double t) {
    return interest_balance(params, t, TimeMap::surrogate(params.alpha));
}

EscapeProfile escape_profile(const EscapeParams& params, const TimeMap& velocity_map) {
    validate_alpha(params.alpha);
    if (!(params.g > 0.0 && params.R > 0.0))
        throw std::invalid_argument("g and R must be positive");
    if (params.v0 < 0.0) throw std::invalid_argument("v0 must be non-negative");

    const double two_gR = 2.0 * params.g * params.R;
    EscapeProfile profile;
    profile.v_escape = std::pow(two_gR, 1.0 / (2.0 * params.alpha));

    const double sv0 = velocity_map.s_of_t(params.v0);
    const double sv0_sq = sv0 * sv0;
    if (sv0_sq >= two_gR) {
        profile.x_max = std::numeric_limits<double>::infinity();
        profile.v0_required = profile.v_escape;
        return profile;
    }
    profile.x_max = sv0_sq * params.R / (two_gR - sv0_sq);
    const double s_req = std::sqrt(two_gR * profile.x_max / (params.R + profile.x_max));
    profile.v0_required = velocity_map.t_of_s(s_req);
    return profile;
}

EscapeProfile escape_profile(const EscapeParams& params) {
    return escape_profile(params, TimeMap::surrogate(params.alpha));
}

namespace {

void validate_cooling_pair(const CoolingParams& p) {
    const double d0 = p.T0 - p.Ts;
    const double d1 = p.T1 - p.Ts;
    if (d0 == 0.0 || d1 == 0.0 || (d0 > 0.0) != (d1 > 0.0))
        throw InconsistentMeasurementError(
            "temperatures must sit on the same side of ambient");
    if (!(p.t1 > 0.0)) throw std::invalid_argument("t1 must be positive");
}

} // namespace

double cooling_temperature(const CoolingParams& params, double k, double t, const TimeMap& time) {
    validate_alpha(params.alpha);
    if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
    if (t < 0.0) throw std::invalid_argument("t must be non-negative");
    return params.Ts + (params.T0 - params.Ts) * std::exp(-k * time.s_of_t(t));
}

double cooling_temperature(const CoolingParams& params, double k, double t) {
    return cooling_temperature(params, k, t, TimeMap::surrogate(params.alpha));
}

double estimate_k(const CoolingParams& params, const TimeMap& time) {
    validate_alpha(params.alpha);
    validate_cooling_pair(params);
    const double ratio = (params.T1 - params.Ts) / (params.T0 - params.Ts);
    if (!(ratio > 0.0 && ratio < 1.0))
        throw InconsistentMeasurementError(
            "(T1 - Ts)/(T0 - Ts) must lie in (0, 1): no cooling observed");
    return -std::log(ratio) / time.s_of_t(params.t1);
}

double estimate_k(const CoolingParams& params) {
    return estimate_k(params, TimeMap::surrogate(params.alpha));
}

double estimate_time_of_death(const CoolingParams& params, const TimeMap& time) {
    const double k = estimate_k(params, time);
    const double dd = params.Td - params.Ts;
    const double d0 = params.T0 - params.Ts;
    if (dd == 0.0 || (dd > 0.0) != (d0 > 0.0))
        throw InconsistentMeasurementError(
            "death temperature must sit on the same side of ambient");
    const double s_d = std::abs(-std::log(dd / d0) / k);
    return time.t_of_s(s_d);
}

double estimate_time_of_death(const CoolingParams& params) {
    return estimate_time_of_death(params, TimeMap::surrogate(params.alpha));
}

} // namespace fcalc
