#include "fcalc/mass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fcalc {

namespace {

class KahanSum {
  public:
    void add(double term) {
        const double y = term - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Minimal alpha-power sum of one flagged run of width w split into cells of
// width <= delta: as few cells as possible, all but one at full delta
// (t^alpha is concave, so any further split only raises the sum).
double run_contribution(double w, double delta, double alpha) {
    if (w <= 0.0) return 0.0;
    const double q = w / delta;
    if (q <= 1.0 + 1e-9) return std::pow(w, alpha);
    const double cells = std::ceil(q - 1e-9);
    const double full = cells - 1.0;
    const double rem = w - full * delta;
    double sum = full * std::pow(delta, alpha);
    if (rem > 0.0) sum += std::pow(rem, alpha);
    return sum;
}

} // namespace

double coarse_mass(const IntervalCover& cover, AlphaOrder alpha, Interval range, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (range.empty()) throw std::invalid_argument("range must be a nonempty interval");
    if (!cover.bounds().contains(range))
        throw std::invalid_argument("range must lie within the cover bounds");

    const double a = alpha.value();
    KahanSum sum;
    for (const auto& p : cover.pieces()) {
        if (p.hi() <= range.lo) continue;
        if (p.lo >= range.hi) break;
        double w;
        if (p.lo >= range.lo && p.hi() <= range.hi) {
            w = p.width;  // stored width, exact for generator-built covers
        } else {
            w = std::min(p.hi(), range.hi) - std::max(p.lo, range.lo);
        }
        sum.add(run_contribution(w, delta, a));
    }
    return gamma_alpha_plus_1(a) * sum.value();
}

namespace {

// Sum of leaf-width^alpha over the depth-`depth` descendants of the node
// (lo, width, level) that meet `range`. Fully contained subtrees collapse to
// the closed form 2^k (width r^k)^alpha; at most two root-to-leaf chains
// straddle a range endpoint, so the walk is O(depth).
double node_power_sum(double lo, double width, int level, int depth, double r, double alpha,
                      const Interval& range) {
    const double hi = lo + width;
    if (hi <= range.lo || lo >= range.hi) return 0.0;
    if (range.lo <= lo && hi <= range.hi) {
        const int k = depth - level;
        return std::exp2(static_cast<double>(k)) * std::pow(width * std::pow(r, k), alpha);
    }
    if (level == depth) {
        const double w = std::min(hi, range.hi) - std::max(lo, range.lo);
        return w > 0.0 ? std::pow(w, alpha) : 0.0;
    }
    const double child = width * r;
    return node_power_sum(lo, child, level + 1, depth, r, alpha, range) +
           node_power_sum(lo + (width - child), child, level + 1, depth, r, alpha, range);
}

} // namespace

double cantor_native_mass(const CantorGenerator& generator, int depth, AlphaOrder alpha,
                          Interval range) {
    generator.validate();
    if (depth < 0) throw std::invalid_argument("depth must be non-negative");
    if (range.empty()) throw std::invalid_argument("range must be a nonempty interval");
    if (!generator.bounds.contains(range))
        throw std::invalid_argument("range must lie within the generator bounds");
    const double a = alpha.value();
    const double sum = node_power_sum(generator.bounds.lo, generator.bounds.width(), 0, depth,
                                      generator.keep_ratio(), a, range);
    return gamma_alpha_plus_1(a) * sum;
}

MassEstimate mass_function(const CantorGenerator& generator, AlphaOrder alpha, Interval range,
                           double tol, const MassFunctionOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    MassEstimate est;
    est.alpha = alpha.value();

    std::vector<double> values;
    values.reserve(options.max_depth + 1);
    int cauchy_run = 0, vanish_run = 0, diverge_run = 0;
    double v_max = 0.0, v_min = std::numeric_limits<double>::infinity();

    for (int n = 0; n <= options.max_depth; ++n) {
        const double v = cantor_native_mass(generator, n, alpha, range);
        values.push_back(v);
        est.depth = n;
        est.delta = generator.piece_width(n);
        est.value = v;
        v_max = std::max(v_max, v);
        v_min = std::min(v_min, v);
        if (n == 0) continue;

        const double prev = values[n - 1];
        cauchy_run = std::abs(v - prev) < tol ? cauchy_run + 1 : 0;
        if (cauchy_run >= 3) {
            est.converged = true;
            return est;
        }
        if (prev > 0.0) {
            const double ratio = v / prev;
            vanish_run = ratio <= options.vanish_ratio ? vanish_run + 1 : 0;
            diverge_run = ratio >= options.diverge_ratio ? diverge_run + 1 : 0;
        } else {
            // already at zero
            est.value = 0.0;
            est.converged = true;
            return est;
        }
        if (vanish_run >= options.ratio_run && v <= v_max / options.decade_factor) {
            est.value = 0.0;
            est.converged = true;
            return est;
        }
        if (diverge_run >= options.ratio_run && v >= v_min * options.decade_factor) {
            est.diverged = true;
            return est;
        }
    }
    return est;  // depth cap hit, converged=false
}

namespace {

enum class Trend { Vanishing, Diverging, AtDimension };

Trend classify_slope(double slope, double margin) {
    if (slope < -margin) return Trend::Vanishing;
    if (slope > margin) return Trend::Diverging;
    return Trend::AtDimension;
}

} // namespace

double gamma_dimension(const CantorGenerator& generator, Interval range, double tol,
                       const DimensionOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    generator.validate();

    const auto classify = [&](double a) {
        const AlphaOrder order = AlphaOrder::for_set(a);
        const double v_lo =
            cantor_native_mass(generator, options.classify_depth_lo, order, range);
        const double v_hi =
            cantor_native_mass(generator, options.classify_depth_hi, order, range);
        if (!(v_lo > 0.0) || !(v_hi > 0.0))
            return Trend::Vanishing;  // range misses the set entirely past some depth
        const double slope = (std::log(v_hi) - std::log(v_lo)) /
                             static_cast<double>(options.classify_depth_hi -
                                                 options.classify_depth_lo);
        return classify_slope(slope, options.slope_margin);
    };

    double lo = 1e-3, hi = 1.0;
    const Trend at_hi = classify(hi);
    if (at_hi == Trend::AtDimension) return hi;
    if (at_hi == Trend::Diverging)
        throw ClassificationError("mass diverges at alpha = 1; no dimension in (0, 1]", lo, hi);
    const Trend at_lo = classify(lo);
    if (at_lo == Trend::AtDimension) return lo;
    if (at_lo == Trend::Vanishing)
        throw ClassificationError("mass already vanishes at the lower alpha bracket", lo, hi);

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        switch (classify(mid)) {
            case Trend::Diverging: lo = mid; break;
            case Trend::Vanishing: hi = mid; break;
            case Trend::AtDimension: return mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace fcalc
