#include "fcalc/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fcalc/mass.hpp"

namespace fcalc {

StaircaseTable::StaircaseTable(std::vector<double> breakpoints, std::vector<double> values,
                               double origin, AlphaOrder alpha)
    : x_(std::move(breakpoints)), s_(std::move(values)), origin_(origin), alpha_(alpha.value()) {
    if (x_.size() < 2) throw std::invalid_argument("staircase needs at least 2 breakpoints");
    if (x_.size() != s_.size())
        throw std::invalid_argument("breakpoints and values must have equal length");
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
        if (s_[i] < s_[i - 1]) throw std::invalid_argument("values must be non-decreasing");
    }
    if (origin_ < x_.front() || origin_ > x_.back())
        throw std::invalid_argument("origin must lie within the breakpoint range");
}

double StaircaseTable::min_positive_increment() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < s_.size(); ++i) {
        const double d = s_[i] - s_[i - 1];
        if (d > 0.0) m = std::min(m, d);
    }
    return std::isfinite(m) ? m : 0.0;
}

double StaircaseTable::max_increment() const {
    double m = 0.0;
    for (std::size_t i = 1; i < s_.size(); ++i) m = std::max(m, s_[i] - s_[i - 1]);
    return m;
}

double staircase_eval(const StaircaseTable& table, double x) {
    const auto& xs = table.breakpoints();
    const auto& ss = table.values();
    const double span = xs.back() - xs.front();
    const double slack = 1e-12 * std::max(1.0, span);
    if (x < xs.front() - slack || x > xs.back() + slack)
        throw std::out_of_range("staircase evaluation outside the breakpoint range");
    x = std::clamp(x, xs.front(), xs.back());

    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ss.front();
    if (it == xs.end()) return ss.back();
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ss[i - 1] + t * (ss[i] - ss[i - 1]);
}

double staircase_invert(const StaircaseTable& table, double s) {
    const auto& xs = table.breakpoints();
    const auto& ss = table.values();
    const double span = ss.back() - ss.front();
    const double slack = 1e-12 * std::max(1.0, std::abs(ss.back()) + std::abs(ss.front()) + span);
    if (s < ss.front() - slack || s > ss.back() + slack)
        throw std::out_of_range("staircase inversion outside the value range");

    const double target = s - slack;
    const auto it = std::lower_bound(ss.begin(), ss.end(), target);
    if (it == ss.begin()) return xs.front();
    const std::size_t i = static_cast<std::size_t>(it - ss.begin());
    const double denom = ss[i] - ss[i - 1];
    double t = denom > 0.0 ? (s - ss[i - 1]) / denom : 1.0;
    t = std::clamp(t, 0.0, 1.0);
    return xs[i - 1] + t * (xs[i] - xs[i - 1]);
}

namespace {

// Sum of clipped piece-width^alpha over [a, b]: full pieces via the prefix
// array, the two boundary pieces clipped individually.
double clipped_power_mass(const IntervalCover& cover, const std::vector<double>& prefix, double a,
                          double b, double alpha) {
    if (b <= a) return 0.0;
    const auto& pieces = cover.pieces();
    const auto lo_it = std::partition_point(pieces.begin(), pieces.end(),
                                            [&](const auto& p) { return p.hi() <= a; });
    const auto hi_it = std::partition_point(pieces.begin(), pieces.end(),
                                            [&](const auto& p) { return p.lo < b; });
    const std::size_t i0 = static_cast<std::size_t>(lo_it - pieces.begin());
    const std::size_t i1 = static_cast<std::size_t>(hi_it - pieces.begin());
    if (i0 >= i1) return 0.0;

    if (i1 - i0 == 1) {
        const double w = std::min(pieces[i0].hi(), b) - std::max(pieces[i0].lo, a);
        return w > 0.0 ? std::pow(w, alpha) : 0.0;
    }

    double total = 0.0;
    std::size_t full_begin = i0, full_end = i1;
    if (pieces[i0].lo < a) {
        total += std::pow(pieces[i0].hi() - a, alpha);
        full_begin = i0 + 1;
    }
    if (pieces[i1 - 1].hi() > b) {
        total += std::pow(b - pieces[i1 - 1].lo, alpha);
        full_end = i1 - 1;
    }
    if (full_end > full_begin) total += prefix[full_end] - prefix[full_begin];
    return total;
}

} // namespace

StaircaseTable build_staircase(const IntervalCover& cover, AlphaOrder alpha, double origin,
                               int samples) {
    if (samples < 2) throw std::invalid_argument("samples must be at least 2");
    if (!cover.bounds().contains(origin))
        throw std::invalid_argument("origin must lie within the cover bounds");

    const auto& pieces = cover.pieces();
    std::vector<double> xs;
    xs.reserve(pieces.size() * 3 + static_cast<std::size_t>(samples) + 2);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        xs.push_back(pieces[i].lo);
        xs.push_back(pieces[i].hi());
        if (i + 1 < pieces.size()) xs.push_back(0.5 * (pieces[i].hi() + pieces[i + 1].lo));
    }
    const Interval b = cover.bounds();
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
        xs.push_back(b.lo + t * b.width());
    }
    xs.push_back(origin);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    // Kahan prefix of width^alpha per piece.
    const double a = alpha.value();
    std::vector<double> prefix(pieces.size() + 1, 0.0);
    double comp = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double term = std::pow(pieces[i].width, a) - comp;
        const double next = prefix[i] + term;
        comp = (next - prefix[i]) - term;
        prefix[i + 1] = next;
    }

    const double gamma = gamma_alpha_plus_1(a);
    std::vector<double> ss(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double m = x >= origin ? clipped_power_mass(cover, prefix, origin, x, a)
                                     : -clipped_power_mass(cover, prefix, x, origin, a);
        ss[i] = gamma * m;
    }
    // Independent per-breakpoint rounding can leave ulp-scale dips; clamp.
    for (std::size_t i = 1; i < ss.size(); ++i) ss[i] = std::max(ss[i], ss[i - 1]);

    return StaircaseTable(std::move(xs), std::move(ss), origin, alpha);
}

StaircaseTable build_staircase(const IntervalCover& cover, double origin, int samples) {
    const double dim = gamma_dimension(cover.generator(), cover.bounds(), 1e-3);
    return build_staircase(cover, AlphaOrder::for_set(dim), origin, samples);
}

} // namespace fcalc
