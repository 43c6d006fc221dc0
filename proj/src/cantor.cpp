#include "fcalc/cantor.hpp"

#include <algorithm>
#include <limits>

namespace fcalc {

IntervalCover::IntervalCover(std::vector<Piece> pieces, int depth, CantorGenerator generator)
    : pieces_(std::move(pieces)), depth_(depth), generator_(generator) {
    generator_.validate();
    if (depth_ < 0) throw std::invalid_argument("depth must be non-negative");
    if (pieces_.empty()) throw std::invalid_argument("cover must contain at least one piece");

    native_width_ = std::numeric_limits<double>::infinity();
    double prev_hi = -std::numeric_limits<double>::infinity();
    for (const Piece& p : pieces_) {
        if (p.width <= 0.0) throw std::invalid_argument("cover pieces must have positive width");
        if (p.lo < prev_hi) throw std::invalid_argument("cover pieces must be disjoint and sorted");
        if (p.lo < bounds().lo - 1e-12 || p.hi() > bounds().hi + 1e-12)
            throw std::invalid_argument("cover pieces must lie within bounds");
        native_width_ = std::min(native_width_, p.width);
        prev_hi = p.hi();
    }
}

int IntervalCover::flag(const Interval& probe) const {
    if (probe.empty()) return 0;
    // First piece whose right endpoint reaches the probe.
    auto it = std::partition_point(pieces_.begin(), pieces_.end(),
                                   [&](const Piece& p) { return p.hi() < probe.lo; });
    if (it == pieces_.end()) return 0;
    return it->lo <= probe.hi ? 1 : 0;
}

IntervalCover build_cantor_cover(const CantorGenerator& generator, int depth) {
    generator.validate();
    if (depth < 0) throw std::invalid_argument("depth must be non-negative");
    if (depth > kMaxExplicitDepth)
        throw std::invalid_argument("explicit cover too large; depth capped at " +
                                    std::to_string(kMaxExplicitDepth));

    const double r = generator.keep_ratio();
    std::vector<double> los{generator.bounds.lo};
    double width = generator.bounds.width();
    for (int d = 0; d < depth; ++d) {
        const double child = width * r;
        std::vector<double> next;
        next.reserve(los.size() * 2);
        for (double lo : los) {
            next.push_back(lo);
            next.push_back(lo + (width - child));
        }
        los = std::move(next);
        width = child;
    }

    std::vector<IntervalCover::Piece> pieces;
    pieces.reserve(los.size());
    for (double lo : los) pieces.push_back({lo, width});
    return IntervalCover(std::move(pieces), depth, generator);
}

IntervalCover build_cantor_cover(double removal_fraction, int depth, Interval bounds) {
    return build_cantor_cover(CantorGenerator{removal_fraction, bounds}, depth);
}

} // namespace fcalc
