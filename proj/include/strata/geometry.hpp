#ifndef STRATA_GEOMETRY_HPP
#define STRATA_GEOMETRY_HPP

#include <span>

namespace strata {

struct SegmentProjection {
    /// Minimizer over [0, 1] of |p - (theta*a + (1-theta)*b)|^2; theta = 1 is `a`.
    double theta = 0.0;
    double squared_distance = 0.0;
    /// a == b; theta is then 0 and the distance is to b.
    bool degenerate = false;
};

SegmentProjection project_to_segment(std::span<const double> p, std::span<const double> a,
                                     std::span<const double> b);

/// Angle at `q` between the rays towards `a` and `b`, from the clamped
/// normalized dot product. Returns NaN if either ray has zero length.
double angle_at(std::span<const double> q, std::span<const double> a, std::span<const double> b);

}  // namespace strata

#endif
