#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace curveflow {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// Counterclockwise quarter turn.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 rotate(Vec2 a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Ordered planar nodes. Closed curves never repeat the first node; the
/// parameter is implicit and uniform (u_i = 2*pi*i/N when closed).
class DiscreteCurve {
public:
    DiscreteCurve() = default;
    DiscreteCurve(std::vector<Vec2> nodes, bool closed) : nodes_(std::move(nodes)), closed_(closed) {}

    std::size_t size() const { return nodes_.size(); }
    bool closed() const { return closed_; }
    const std::vector<Vec2>& nodes() const { return nodes_; }
    std::vector<Vec2>& nodes() { return nodes_; }
    const Vec2& operator[](std::size_t i) const { return nodes_[i]; }
    Vec2& operator[](std::size_t i) { return nodes_[i]; }

    /// Number of segments: N for closed curves, N-1 for open ones.
    std::size_t segment_count() const;
    std::vector<double> chord_lengths() const;

    /// Reverses the traversal direction. Closed curves keep node 0 in place
    /// (node i moves to -i mod N) so that the reversed sampling is the same
    /// point set; open curves are simply read back to front.
    DiscreteCurve reversed() const;

private:
    std::vector<Vec2> nodes_;
    bool closed_ = true;
};

/// Per-node frame and curvature data.
struct CurveFields {
    std::vector<Vec2> tangent;
    std::vector<Vec2> normal;  // tangent rotated by +pi/2
    std::vector<double> kappa;
    std::vector<double> kappa_s;
    std::vector<double> kappa_ss;
    std::vector<double> dl;     // arc-length quadrature weight per node
    std::vector<double> s;      // cumulative arc length from node 0
    std::vector<double> speed;  // |gamma_u| on the uniform parameter grid

    std::size_t size() const { return kappa.size(); }
};

struct OsculatingDisc {
    Vec2 center;
    double radius = 0.0;
};

inline constexpr std::size_t kMinStencilNodes = 8;

/// Throws TooFewNodes (N < min_nodes) or NonRegular (a segment shorter than
/// 1e-14 times the mean segment length, or non-finite coordinates).
void require_regular(const DiscreteCurve& curve, std::size_t min_nodes = 2);

/// Frame, curvature and its first two arc-length derivatives. Derivatives in
/// u are second-order central differences (periodic when closed, one-sided
/// at open ends); kappa_ss uses the compact flux form
/// (1/g) d/du ((1/g) d kappa/du) with midpoint speeds taken from chords.
CurveFields curve_fields(const DiscreteCurve& curve);

/// Arc length of the cubic spline interpolant through the nodes (periodic
/// for closed curves, not-a-knot for open ones).
double length(const DiscreteCurve& curve);

/// Shoelace area of the closed polygon; positive when counterclockwise.
double signed_area(const DiscreteCurve& curve);

/// Total tangent turning divided by 2*pi before rounding.
double turning_number(const DiscreteCurve& curve);
int winding_number(const DiscreteCurve& curve);

/// M nodes equally spaced in spline arc length, starting at node 0 (and
/// ending at the last node for open curves).
DiscreteCurve resample_uniform(const DiscreteCurve& curve, std::size_t m);

/// Radius 1/|kappa_i|, centre gamma_i + nu_i / kappa_i with nu_i taken from the
/// interpolating spline rather than the central-difference frame.
OsculatingDisc osculating_disc(const CurveFields& fields, const DiscreteCurve& curve, std::size_t i);

/// Tait-Kneser check on nodes [first, last]. Throws HypothesisViolated unless
/// kappa is nonzero of one sign and strictly monotone on the range.
bool osculating_discs_nested(const DiscreteCurve& curve, std::size_t first, std::size_t last);
bool osculating_discs_nested(const DiscreteCurve& curve, const CurveFields& fields,
                             std::size_t first, std::size_t last);

// Utilities used across modules.
double min_segment_length(const DiscreteCurve& curve);
double mean_segment_length(const DiscreteCurve& curve);
bool all_finite(const DiscreteCurve& curve);
/// Arc-length weighted centroid.
Vec2 centroid(const DiscreteCurve& curve);
/// Symmetric Hausdorff distance between the two polylines.
double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b);
/// Translated to its centroid and scaled to unit length.
DiscreteCurve normalized(const DiscreteCurve& curve);
DiscreteCurve transformed(const DiscreteCurve& curve, double angle, Vec2 shift, double scale = 1.0);

}  // namespace curveflow
