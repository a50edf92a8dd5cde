#pragma once

#include <cstddef>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow::detail {

/// C2 cubic interpolant of the nodes against cumulative chord length.
/// Periodic for closed curves; not-a-knot for open curves with at least four
/// nodes (natural for three, linear for two).
class CubicSpline2D {
public:
    explicit CubicSpline2D(const DiscreteCurve& curve);

    std::size_t segment_count() const { return h_.size(); }
    Vec2 position(std::size_t seg, double tau) const;
    Vec2 derivative(std::size_t seg, double tau) const;
    double knot_spacing(std::size_t seg) const { return h_[seg]; }

    /// Arc length of segment `seg` between local parameters 0 and tau.
    double arc_length(std::size_t seg, double tau) const;
    double arc_length(std::size_t seg) const { return arc_length(seg, h_[seg]); }
    /// Local parameter on segment `seg` whose partial arc length is `arc`.
    double parameter_at_arc(std::size_t seg, double arc) const;

private:
    std::vector<Vec2> f_;
    std::vector<Vec2> m_;    // second derivatives at knots
    std::vector<double> h_;  // knot spacings
};

}  // namespace curveflow::detail
