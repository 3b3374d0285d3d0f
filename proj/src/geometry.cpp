#include "strata/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace strata {

SegmentProjection project_to_segment(std::span<const double> p, std::span<const double> a,
                                     std::span<const double> b) {
    // S(theta) = b + theta * (a - b)
    double dot = 0.0;
    double len2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double ab = a[k] - b[k];
        dot += (p[k] - b[k]) * ab;
        len2 += ab * ab;
    }

    SegmentProjection out;
    if (len2 == 0.0) {
        out.degenerate = true;
    } else {
        out.theta = std::clamp(dot / len2, 0.0, 1.0);
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
        double r = p[k] - b[k] - out.theta * (a[k] - b[k]);
        out.squared_distance += r * r;
    }
    return out;
}

double angle_at(std::span<const double> q, std::span<const double> a, std::span<const double> b) {
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        double u = a[k] - q[k];
        double v = b[k] - q[k];
        dot += u * v;
        na += u * u;
        nb += v * v;
    }
    if (na == 0.0 || nb == 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::acos(std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0));
}

}  // namespace strata
