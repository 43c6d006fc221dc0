#pragma once

#include <span>
#include <string>
#include <vector>

#include "fcalc/interval.hpp"

namespace fcalc {

/// Generator families for build_koch. Line refines a straight segment
/// (2^depth equal chords, for dimension sweeps); Triadic is the classic
/// 4-segment Koch snowflake edge; Quad5 is the 5-segment square variant,
/// both with length ratio 1/3.
enum class KochVariant { Line, Triadic, Quad5 };

std::string to_string(KochVariant v);
KochVariant koch_variant_from_string(const std::string& name);

/// Parameter window [t_lo, t_hi] selecting a piece of a curve.
struct CurveSegment {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// Ordered polyline approximation of a parametrized curve in R^n with
/// strictly increasing parameters u_i. Vertex coordinates are stored flat
/// (dim-strided). Immutable after construction; build_rise returns a copy
/// with the per-vertex mass coordinate J filled in.
class CurveApprox {
  public:
    CurveApprox(int dim, std::vector<double> params, std::vector<double> coords, int depth,
                std::string variant);

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    const std::string& variant() const { return variant_; }
    std::size_t vertex_count() const { return params_.size(); }
    const std::vector<double>& params() const { return params_; }
    std::span<const double> vertex(std::size_t i) const {
        return {coords_.data() + static_cast<std::ptrdiff_t>(i) * dim_,
                static_cast<std::size_t>(dim_)};
    }

    double param_lo() const { return params_.front(); }
    double param_hi() const { return params_.back(); }

    /// Interpolated position at parameter u (linear within a chord).
    std::vector<double> point_at(double u) const;

    /// Euclidean distance of the point w(u) from the coordinate origin.
    double distance_from_origin(double u) const;

    /// Total Euclidean length of the polyline.
    double length() const;

    bool has_rise() const { return !mass_.empty(); }
    const std::vector<double>& rise() const;
    double rise_alpha() const { return rise_alpha_; }
    double origin_param() const { return origin_param_; }

    /// Rise value J(u), interpolated between vertices.
    double rise_at(double u) const;

  private:
    friend CurveApprox build_rise(const CurveApprox&, AlphaOrder, double);

    int dim_;
    std::vector<double> params_;
    std::vector<double> coords_;
    std::vector<double> mass_;  // J_i, empty until build_rise
    int depth_;
    std::string variant_;
    double rise_alpha_ = 0.0;
    double origin_param_ = 0.0;
};

/// Koch-family polyline at the given generation depth, parametrized
/// uniformly on [0, 1].
CurveApprox build_koch(int depth, KochVariant variant = KochVariant::Triadic);

/// Wrap a user polyline (params strictly increasing, coords dim-strided).
CurveApprox make_polyline(int dim, std::vector<double> params, std::vector<double> coords);

/// Mass of the curve over `segment` at the polyline's native vertex
/// subdivision: sum of |chord|^alpha / Gamma(alpha+1). Sub-chord segment
/// ends contribute in proportion to their parameter fraction, which keeps
/// the mass exactly additive in the segment bounds.
double curve_mass(const CurveApprox& curve, AlphaOrder alpha, CurveSegment segment);

/// Mass of the whole curve.
double curve_mass(const CurveApprox& curve, AlphaOrder alpha);

struct CurveDimensionOptions {
    int classify_depth_lo = 2;
    int classify_depth_hi = 8;
    double slope_margin = 0.002;
};

/// gamma-dimension of a Koch-family curve: bisection on alpha in [1, 2]
/// classifying the depthwise trend of the whole-curve mass.
double curve_gamma_dimension(KochVariant variant, double tol,
                             const CurveDimensionOptions& options = {});

/// Copy of the curve with the rise function J filled in: J(u) is the signed
/// mass between origin_param and u.
CurveApprox build_rise(const CurveApprox& curve, AlphaOrder alpha, double origin_param);

} // namespace fcalc
