#include "fcalc/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fcalc/errors.hpp"

namespace fcalc {

std::string to_string(KochVariant v) {
    switch (v) {
        case KochVariant::Line: return "line";
        case KochVariant::Triadic: return "koch";
        case KochVariant::Quad5: return "koch5";
    }
    return "koch";
}

KochVariant koch_variant_from_string(const std::string& name) {
    if (name == "line") return KochVariant::Line;
    if (name == "koch") return KochVariant::Triadic;
    if (name == "koch5") return KochVariant::Quad5;
    throw std::invalid_argument("unknown curve variant: " + name);
}

CurveApprox::CurveApprox(int dim, std::vector<double> params, std::vector<double> coords,
                         int depth, std::string variant)
    : dim_(dim), params_(std::move(params)), coords_(std::move(coords)), depth_(depth),
      variant_(std::move(variant)) {
    if (dim_ < 1) throw std::invalid_argument("curve dimension must be positive");
    if (params_.size() < 2) throw std::invalid_argument("curve needs at least 2 vertices");
    if (coords_.size() != params_.size() * static_cast<std::size_t>(dim_))
        throw std::invalid_argument("coords size must equal dim * vertex count");
    for (std::size_t i = 1; i < params_.size(); ++i) {
        if (!(params_[i] > params_[i - 1]))
            throw std::invalid_argument("curve parameters must be strictly increasing");
        bool distinct = false;
        for (int d = 0; d < dim_; ++d)
            if (coords_[i * dim_ + d] != coords_[(i - 1) * dim_ + d]) distinct = true;
        if (!distinct)
            throw std::invalid_argument("consecutive curve vertices must be distinct");
    }
}

namespace {

double chord_norm(const CurveApprox& c, std::size_t i, std::size_t j) {
    double acc = 0.0;
    const auto a = c.vertex(i);
    const auto b = c.vertex(j);
    for (int d = 0; d < c.dim(); ++d) {
        const double diff = b[d] - a[d];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

// Index of the chord containing u: largest i with params[i] <= u, clamped to
// a valid chord start.
std::size_t chord_index(const std::vector<double>& params, double u) {
    const auto it = std::upper_bound(params.begin(), params.end(), u);
    const std::size_t i = static_cast<std::size_t>(it - params.begin());
    if (i == 0) return 0;
    return std::min(i - 1, params.size() - 2);
}

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

} // namespace

std::vector<double> CurveApprox::point_at(double u) const {
    if (u < param_lo() || u > param_hi())
        throw std::out_of_range("parameter outside the curve range");
    const std::size_t i = chord_index(params_, u);
    const double t = (u - params_[i]) / (params_[i + 1] - params_[i]);
    std::vector<double> p(static_cast<std::size_t>(dim_));
    const auto a = vertex(i);
    const auto b = vertex(i + 1);
    for (int d = 0; d < dim_; ++d) p[d] = a[d] + t * (b[d] - a[d]);
    return p;
}

double CurveApprox::distance_from_origin(double u) const {
    const auto p = point_at(u);
    double acc = 0.0;
    for (double c : p) acc += c * c;
    return std::sqrt(acc);
}

double CurveApprox::length() const {
    KahanSum sum;
    for (std::size_t i = 0; i + 1 < params_.size(); ++i) sum.add(chord_norm(*this, i, i + 1));
    return sum.value();
}

const std::vector<double>& CurveApprox::rise() const {
    if (mass_.empty()) throw std::logic_error("rise not built; call build_rise first");
    return mass_;
}

double CurveApprox::rise_at(double u) const {
    const auto& J = rise();
    if (u < param_lo() || u > param_hi())
        throw std::out_of_range("parameter outside the curve range");
    const std::size_t i = chord_index(params_, u);
    const double t = (u - params_[i]) / (params_[i + 1] - params_[i]);
    return J[i] + t * (J[i + 1] - J[i]);
}

namespace {

struct Waypoints {
    // Unit-frame generator waypoints (x, y) between (0,0) and (1,0).
    std::vector<double> xs, ys;
};

Waypoints generator_waypoints(KochVariant variant) {
    const double h = std::sqrt(3.0) / 6.0;
    switch (variant) {
        case KochVariant::Line:
            return {{0.0, 0.5, 1.0}, {0.0, 0.0, 0.0}};
        case KochVariant::Triadic:
            return {{0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}, {0.0, 0.0, h, 0.0, 0.0}};
        case KochVariant::Quad5:
            return {{0.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 1.0},
                    {0.0, 0.0, 1.0 / 3.0, 1.0 / 3.0, 0.0, 0.0}};
    }
    throw std::invalid_argument("unknown variant");
}

} // namespace

CurveApprox build_koch(int depth, KochVariant variant) {
    if (depth < 0) throw std::invalid_argument("depth must be non-negative");
    const Waypoints gen = generator_waypoints(variant);
    const std::size_t fan = gen.xs.size() - 1;

    std::vector<double> pts{0.0, 0.0, 1.0, 0.0};  // (x, y) pairs
    for (int d = 0; d < depth; ++d) {
        std::vector<double> next;
        next.reserve((pts.size() / 2 - 1) * fan * 2 + 2);
        for (std::size_t i = 0; i + 3 < pts.size(); i += 2) {
            const double ax = pts[i], ay = pts[i + 1];
            const double bx = pts[i + 2], by = pts[i + 3];
            const double dx = bx - ax, dy = by - ay;
            for (std::size_t k = 0; k < fan; ++k) {
                // waypoint k in the segment frame; (-dy, dx) is the left normal
                next.push_back(ax + gen.xs[k] * dx - gen.ys[k] * dy);
                next.push_back(ay + gen.xs[k] * dy + gen.ys[k] * dx);
            }
        }
        next.push_back(pts[pts.size() - 2]);
        next.push_back(pts[pts.size() - 1]);
        pts = std::move(next);
    }

    const std::size_t n = pts.size() / 2;
    std::vector<double> params(n);
    for (std::size_t i = 0; i < n; ++i)
        params[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return CurveApprox(2, std::move(params), std::move(pts), depth, to_string(variant));
}

CurveApprox make_polyline(int dim, std::vector<double> params, std::vector<double> coords) {
    return CurveApprox(dim, std::move(params), std::move(coords), 0, "polyline");
}

namespace {

// Sum of |chord|^alpha over [t_lo, t_hi]; partial chords weighted by their
// parameter fraction so the sum is additive in the cut points.
double segment_power_sum(const CurveApprox& curve, double alpha, double t_lo, double t_hi) {
    const auto& u = curve.params();
    if (t_hi <= t_lo) return 0.0;
    const std::size_t i0 = chord_index(u, t_lo);
    const std::size_t i1 = chord_index(u, t_hi);

    const auto chord_pow = [&](std::size_t i) {
        return std::pow(chord_norm(curve, i, i + 1), alpha);
    };
    const auto fraction = [&](std::size_t i, double a, double b) {
        return (b - a) / (u[i + 1] - u[i]);
    };

    if (i0 == i1) return fraction(i0, t_lo, t_hi) * chord_pow(i0);

    KahanSum sum;
    sum.add(fraction(i0, t_lo, u[i0 + 1]) * chord_pow(i0));
    for (std::size_t i = i0 + 1; i < i1; ++i) sum.add(chord_pow(i));
    if (t_hi > u[i1]) sum.add(fraction(i1, u[i1], t_hi) * chord_pow(i1));
    return sum.value();
}

} // namespace

double curve_mass(const CurveApprox& curve, AlphaOrder alpha, CurveSegment segment) {
    if (segment.t_lo > segment.t_hi)
        throw std::invalid_argument("segment must satisfy t_lo <= t_hi");
    if (segment.t_lo < curve.param_lo() || segment.t_hi > curve.param_hi())
        throw std::out_of_range("segment outside the curve parameter range");
    if (segment.t_lo == segment.t_hi) return 0.0;  // degenerate: zero by convention
    const double a = alpha.value();
    return segment_power_sum(curve, a, segment.t_lo, segment.t_hi) / gamma_alpha_plus_1(a);
}

double curve_mass(const CurveApprox& curve, AlphaOrder alpha) {
    return curve_mass(curve, alpha, {curve.param_lo(), curve.param_hi()});
}

double curve_gamma_dimension(KochVariant variant, double tol,
                             const CurveDimensionOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    const CurveApprox coarse = build_koch(options.classify_depth_lo, variant);
    const CurveApprox fine = build_koch(options.classify_depth_hi, variant);

    enum class Trend { Vanishing, Diverging, AtDimension };
    const auto classify = [&](double a) {
        const AlphaOrder order = AlphaOrder::for_curve(a, 2);
        const double v_lo = curve_mass(coarse, order);
        const double v_hi = curve_mass(fine, order);
        const double slope = (std::log(v_hi) - std::log(v_lo)) /
                             static_cast<double>(options.classify_depth_hi -
                                                 options.classify_depth_lo);
        if (slope < -options.slope_margin) return Trend::Vanishing;
        if (slope > options.slope_margin) return Trend::Diverging;
        return Trend::AtDimension;
    };

    double lo = 1.0, hi = 2.0;
    const Trend at_lo = classify(lo);
    if (at_lo == Trend::AtDimension) return lo;
    if (at_lo == Trend::Vanishing)
        throw ClassificationError("curve mass already vanishes at alpha = 1", lo, hi);
    const Trend at_hi = classify(hi);
    if (at_hi == Trend::AtDimension) return hi;
    if (at_hi == Trend::Diverging)
        throw ClassificationError("curve mass diverges at alpha = 2", lo, hi);

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

CurveApprox build_rise(const CurveApprox& curve, AlphaOrder alpha, double origin_param) {
    if (origin_param < curve.param_lo() || origin_param > curve.param_hi())
        throw std::out_of_range("origin_param outside the curve parameter range");

    const double a = alpha.value();
    const double gamma = gamma_alpha_plus_1(a);
    const std::size_t n = curve.vertex_count();

    // Kahan prefix of |chord|^alpha.
    std::vector<double> prefix(n, 0.0);
    double comp = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double term = std::pow(chord_norm(curve, i - 1, i), a) - comp;
        const double next = prefix[i - 1] + term;
        comp = (next - prefix[i - 1]) - term;
        prefix[i] = next;
    }

    const auto& u = curve.params();
    const std::size_t k = chord_index(u, origin_param);
    const double frac = (origin_param - u[k]) / (u[k + 1] - u[k]);
    const double origin_prefix = prefix[k] + frac * (prefix[k + 1] - prefix[k]);

    CurveApprox out = curve;
    out.mass_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.mass_[i] = (prefix[i] - origin_prefix) / gamma;
    out.rise_alpha_ = a;
    out.origin_param_ = origin_param;
    return out;
}

} // namespace fcalc
