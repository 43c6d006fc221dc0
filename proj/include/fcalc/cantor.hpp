#pragma once

#include <cstdint>
#include <vector>

#include "fcalc/interval.hpp"

namespace fcalc {

/// Construction rule for the middle-fraction Cantor family: at each step the
/// open middle fraction `removal_fraction` of every interval is removed,
/// leaving two closed pieces of ratio (1 - removal_fraction) / 2.
/// removal_fraction = 0 is the degenerate family whose depth-n cover is the
/// uniform 2^n-cell partition of the bounds (the "full interval" case of the
/// mass and dimension limits).
struct CantorGenerator {
    double removal_fraction = 1.0 / 3.0;
    Interval bounds{0.0, 1.0};

    double keep_ratio() const { return (1.0 - removal_fraction) / 2.0; }

    void validate() const {
        if (!(removal_fraction >= 0.0 && removal_fraction < 1.0))
            throw std::invalid_argument("removal_fraction must lie in [0, 1)");
        if (!(bounds.lo < bounds.hi))
            throw std::invalid_argument("generator bounds must be a nonempty interval");
    }

    /// Width of one depth-n piece. Computed multiplicatively so deep covers
    /// keep full relative precision (an endpoint difference at depth 20
    /// would only be good to ~1e-7).
    double piece_width(int depth) const {
        double w = bounds.width();
        const double r = keep_ratio();
        for (int i = 0; i < depth; ++i) w *= r;
        return w;
    }
};

/// Finite union of disjoint closed intervals approximating a fractal set at
/// one generation depth. Pieces are stored as (lo, width) and sorted by lo;
/// immutable after construction.
class IntervalCover {
  public:
    struct Piece {
        double lo;
        double width;
        double hi() const { return lo + width; }
    };

    IntervalCover(std::vector<Piece> pieces, int depth, CantorGenerator generator);

    const std::vector<Piece>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    int depth() const { return depth_; }
    const CantorGenerator& generator() const { return generator_; }
    const Interval& bounds() const { return generator_.bounds; }

    /// Width of the narrowest piece; the natural subdivision scale delta for
    /// this depth.
    double native_width() const { return native_width_; }

    /// 1 iff the closed probe interval meets the union of pieces, else 0.
    int flag(const Interval& probe) const;

    bool contains(double x) const { return flag(Interval{x, x}) == 1; }

  private:
    std::vector<Piece> pieces_;
    int depth_;
    CantorGenerator generator_;
    double native_width_;
};

/// Depth-n cover of the middle-fraction Cantor set on `bounds`.
/// Piece count is 2^depth, so depth is capped (default well past what the
/// toolkit needs; deeper sweeps go through the generator-based mass paths
/// that never materialize pieces).
IntervalCover build_cantor_cover(double removal_fraction, int depth, Interval bounds);
IntervalCover build_cantor_cover(const CantorGenerator& generator, int depth);

/// Largest depth build_cantor_cover will materialize explicitly.
inline constexpr int kMaxExplicitDepth = 24;

} // namespace fcalc
