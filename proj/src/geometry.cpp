#include "curveflow/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <string>

#include "curveflow/errors.hpp"
#include "spline.hpp"

namespace curveflow {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonRegular: return "NonRegular";
        case ErrorKind::TooFewNodes: return "TooFewNodes";
        case ErrorKind::OpenCurve: return "OpenCurve";
        case ErrorKind::AmbiguousTurning: return "AmbiguousTurning";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::SolveFailure: return "SolveFailure";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
        case ErrorKind::TooFewSnapshots: return "TooFewSnapshots";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

std::size_t DiscreteCurve::segment_count() const {
    if (nodes_.empty()) return 0;
    return closed_ ? nodes_.size() : nodes_.size() - 1;
}

std::vector<double> DiscreteCurve::chord_lengths() const {
    const std::size_t n = nodes_.size();
    std::vector<double> out(segment_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = norm(nodes_[(i + 1) % n] - nodes_[i]);
    return out;
}

DiscreteCurve DiscreteCurve::reversed() const {
    std::vector<Vec2> out(nodes_.size());
    const std::size_t n = nodes_.size();
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = closed_ ? nodes_[(n - i) % n] : nodes_[n - 1 - i];
    }
    return {std::move(out), closed_};
}

bool all_finite(const DiscreteCurve& curve) {
    return std::all_of(curve.nodes().begin(), curve.nodes().end(),
                       [](Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); });
}

void require_regular(const DiscreteCurve& curve, std::size_t min_nodes) {
    if (curve.size() < min_nodes) {
        throw Error(ErrorKind::TooFewNodes,
                    "curve has " + std::to_string(curve.size()) + " nodes, need " + std::to_string(min_nodes));
    }
    if (!all_finite(curve)) throw Error(ErrorKind::NonRegular, "non-finite node coordinates");
    const auto chords = curve.chord_lengths();
    if (chords.empty()) throw Error(ErrorKind::TooFewNodes, "curve has no segments");
    const double mean = std::accumulate(chords.begin(), chords.end(), 0.0) / static_cast<double>(chords.size());
    for (std::size_t i = 0; i < chords.size(); ++i) {
        if (!(chords[i] >= 1e-14 * mean) || mean == 0.0) {
            throw Error(ErrorKind::NonRegular, "segment " + std::to_string(i) + " is degenerate");
        }
    }
}

double min_segment_length(const DiscreteCurve& curve) {
    const auto chords = curve.chord_lengths();
    return chords.empty() ? 0.0 : *std::min_element(chords.begin(), chords.end());
}

double mean_segment_length(const DiscreteCurve& curve) {
    const auto chords = curve.chord_lengths();
    return chords.empty() ? 0.0
                          : std::accumulate(chords.begin(), chords.end(), 0.0) / static_cast<double>(chords.size());
}

namespace {

// Second-order first and second u-derivatives on the uniform grid.
class UniformStencil {
public:
    UniformStencil(std::size_t n, bool closed, double du) : n_(n), closed_(closed), du_(du) {}

    template <class T>
    T d1(const std::vector<T>& f, std::size_t i) const {
        if (closed_) return (f[(i + 1) % n_] - f[(i + n_ - 1) % n_]) / (2.0 * du_);
        if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * du_);
        if (i == n_ - 1) return (3.0 * f[n_ - 1] - 4.0 * f[n_ - 2] + f[n_ - 3]) / (2.0 * du_);
        return (f[i + 1] - f[i - 1]) / (2.0 * du_);
    }

    template <class T>
    T d2(const std::vector<T>& f, std::size_t i) const {
        const double h2 = du_ * du_;
        if (closed_) return (f[(i + 1) % n_] - 2.0 * f[i] + f[(i + n_ - 1) % n_]) / h2;
        if (i == 0) return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
        if (i == n_ - 1) return (2.0 * f[n_ - 1] - 5.0 * f[n_ - 2] + 4.0 * f[n_ - 3] - f[n_ - 4]) / h2;
        return (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    }

private:
    std::size_t n_;
    bool closed_;
    double du_;
};

std::vector<double> spline_segment_arcs(const DiscreteCurve& curve) {
    const detail::CubicSpline2D spline(curve);
    std::vector<double> arcs(spline.segment_count());
    for (std::size_t i = 0; i < arcs.size(); ++i) arcs[i] = spline.arc_length(i);
    return arcs;
}

}  // namespace

CurveFields curve_fields(const DiscreteCurve& curve) {
    require_regular(curve, kMinStencilNodes);
    const std::size_t n = curve.size();
    const bool closed = curve.closed();
    const double du = closed ? 2.0 * std::numbers::pi / static_cast<double>(n) : 1.0 / static_cast<double>(n - 1);
    const UniformStencil stencil(n, closed, du);
    const auto& p = curve.nodes();

    CurveFields f;
    f.tangent.resize(n);
    f.normal.resize(n);
    f.kappa.resize(n);
    f.kappa_s.resize(n);
    f.kappa_ss.resize(n);
    f.speed.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 pu = stencil.d1(p, i);
        const Vec2 puu = stencil.d2(p, i);
        const double g = norm(pu);
        f.speed[i] = g;
        f.tangent[i] = pu / g;
        f.normal[i] = perp(f.tangent[i]);
        f.kappa[i] = cross(pu, puu) / (g * g * g);
    }

    for (std::size_t i = 0; i < n; ++i) f.kappa_s[i] = stencil.d1(f.kappa, i) / f.speed[i];

    // Flux form: the chord over du is the midpoint speed, and dividing by the
    // central speed makes sum(kappa_ss * speed * du) telescope to zero on
    // closed curves.
    const auto chords = curve.chord_lengths();
    auto flux = [&](std::size_t seg) { return (f.kappa[(seg + 1) % n] - f.kappa[seg]) * du / chords[seg]; };
    for (std::size_t i = 0; i < n; ++i) {
        const double g = f.speed[i];
        if (closed || (i > 0 && i + 1 < n)) {
            const std::size_t prev = closed ? (i + n - 1) % n : i - 1;
            f.kappa_ss[i] = (flux(i) - flux(prev)) / (du * du * g);
        } else {
            const double ku = stencil.d1(f.kappa, i);
            const double kuu = stencil.d2(f.kappa, i);
            const double gu = stencil.d1(f.speed, i);
            f.kappa_ss[i] = (kuu - ku * gu / g) / (g * g);
        }
    }

    const auto arcs = spline_segment_arcs(curve);
    f.dl.assign(n, 0.0);
    f.s.assign(n, 0.0);
    for (std::size_t seg = 0; seg < arcs.size(); ++seg) {
        f.dl[seg] += 0.5 * arcs[seg];
        f.dl[(seg + 1) % n] += 0.5 * arcs[seg];
    }
    for (std::size_t i = 1; i < n; ++i) f.s[i] = f.s[i - 1] + arcs[i - 1];
    return f;
}

double length(const DiscreteCurve& curve) {
    require_regular(curve, curve.closed() ? 3 : 2);
    const auto arcs = spline_segment_arcs(curve);
    return std::accumulate(arcs.begin(), arcs.end(), 0.0);
}

double signed_area(const DiscreteCurve& curve) {
    if (!curve.closed()) throw Error(ErrorKind::OpenCurve, "signed area needs a closed curve");
    if (curve.size() < 3) throw Error(ErrorKind::TooFewNodes, "signed area needs at least three nodes");
    const auto& p = curve.nodes();
    const std::size_t n = p.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) twice += cross(p[i], p[(i + 1) % n]);
    return 0.5 * twice;
}

double turning_number(const DiscreteCurve& curve) {
    if (!curve.closed()) throw Error(ErrorKind::OpenCurve, "turning number needs a closed curve");
    require_regular(curve, 3);
    const auto& p = curve.nodes();
    const std::size_t n = p.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = p[i] - p[(i + n - 1) % n];
        const Vec2 b = p[(i + 1) % n] - p[i];
        total += std::atan2(cross(a, b), dot(a, b));
    }
    return total / (2.0 * std::numbers::pi);
}

int winding_number(const DiscreteCurve& curve) {
    const double value = turning_number(curve);
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 0.1) {
        throw Error(ErrorKind::AmbiguousTurning, "turning sum " + std::to_string(value) + " is not near an integer");
    }
    return static_cast<int>(rounded);
}

DiscreteCurve resample_uniform(const DiscreteCurve& curve, std::size_t m) {
    if (m < kMinStencilNodes) throw Error(ErrorKind::TooFewNodes, "resample target must have at least 8 nodes");
    require_regular(curve, curve.closed() ? 3 : 2);
    const detail::CubicSpline2D spline(curve);
    const std::size_t segs = spline.segment_count();
    std::vector<double> cum(segs + 1, 0.0);
    for (std::size_t i = 0; i < segs; ++i) cum[i + 1] = cum[i] + spline.arc_length(i);
    const double total = cum.back();
    const double spacing = curve.closed() ? total / static_cast<double>(m) : total / static_cast<double>(m - 1);

    std::vector<Vec2> out(m);
    out[0] = curve[0];
    std::size_t seg = 0;
    for (std::size_t k = 1; k < m; ++k) {
        const double target = spacing * static_cast<double>(k);
        while (seg + 1 < segs && cum[seg + 1] <= target) ++seg;
        const double tau = spline.parameter_at_arc(seg, target - cum[seg]);
        out[k] = spline.position(seg, tau);
    }
    if (!curve.closed()) out[m - 1] = curve[curve.size() - 1];
    return {std::move(out), curve.closed()};
}

namespace {

// Unit normal from the spline derivative at node i. Its error is well below
// the O(h^2) of the central-difference frame, which matters because nesting
// gaps between neighbouring discs are only O(h^3).
Vec2 spline_normal(const detail::CubicSpline2D& spline, std::size_t i) {
    const std::size_t segs = spline.segment_count();
    const Vec2 d = i < segs ? spline.derivative(i, 0.0) : spline.derivative(segs - 1, spline.knot_spacing(segs - 1));
    return perp(d / norm(d));
}

OsculatingDisc disc_at(const CurveFields& fields, const DiscreteCurve& curve, const detail::CubicSpline2D& spline,
                       std::size_t i) {
    const double k = fields.kappa.at(i);
    if (k == 0.0) throw Error(ErrorKind::DegenerateGeometry, "zero curvature has no osculating disc");
    return {curve[i] + spline_normal(spline, i) / k, 1.0 / std::abs(k)};
}

}  // namespace

OsculatingDisc osculating_disc(const CurveFields& fields, const DiscreteCurve& curve, std::size_t i) {
    return disc_at(fields, curve, detail::CubicSpline2D(curve), i);
}

bool osculating_discs_nested(const DiscreteCurve& curve, std::size_t first, std::size_t last) {
    return osculating_discs_nested(curve, curve_fields(curve), first, last);
}

bool osculating_discs_nested(const DiscreteCurve& curve, const CurveFields& fields, std::size_t first,
                             std::size_t last) {
    if (first >= last || last >= curve.size()) {
        throw Error(ErrorKind::InvalidArgument, "index range must satisfy first < last < N");
    }
    const auto& k = fields.kappa;
    const bool positive = k[first] > 0.0;
    const bool increasing = k[first + 1] > k[first];
    for (std::size_t i = first; i <= last; ++i) {
        if (k[i] == 0.0 || (k[i] > 0.0) != positive) {
            throw Error(ErrorKind::HypothesisViolated, "curvature changes sign or vanishes on the range");
        }
        if (i > first && ((k[i] > k[i - 1]) != increasing || k[i] == k[i - 1])) {
            throw Error(ErrorKind::HypothesisViolated, "curvature is not strictly monotone on the range");
        }
    }
    // Growing |kappa| means later discs are smaller and sit inside earlier ones.
    const bool shrinking = increasing == positive;
    const detail::CubicSpline2D spline(curve);
    std::vector<OsculatingDisc> discs;
    for (std::size_t i = first; i <= last; ++i) discs.push_back(disc_at(fields, curve, spline, i));
    for (std::size_t a = 0; a < discs.size(); ++a) {
        for (std::size_t b = a + 1; b < discs.size(); ++b) {
            const OsculatingDisc& outer = shrinking ? discs[a] : discs[b];
            const OsculatingDisc& inner = shrinking ? discs[b] : discs[a];
            if (norm(outer.center - inner.center) + inner.radius > outer.radius + 1e-9) return false;
        }
    }
    return true;
}

Vec2 centroid(const DiscreteCurve& curve) {
    const auto& p = curve.nodes();
    const std::size_t n = p.size();
    Vec2 acc;
    double total = 0.0;
    for (std::size_t seg = 0; seg < curve.segment_count(); ++seg) {
        const Vec2 a = p[seg], b = p[(seg + 1) % n];
        const double w = norm(b - a);
        acc += (0.5 * w) * (a + b);
        total += w;
    }
    return total > 0.0 ? acc / total : (n ? p[0] : Vec2{});
}

namespace {

double point_to_polyline(Vec2 q, const DiscreteCurve& c) {
    const auto& p = c.nodes();
    const std::size_t n = p.size();
    double best = n ? norm(q - p[0]) : 0.0;
    for (std::size_t seg = 0; seg < c.segment_count(); ++seg) {
        const Vec2 a = p[seg], b = p[(seg + 1) % n];
        const Vec2 ab = b - a;
        const double len2 = dot(ab, ab);
        const double t = len2 > 0.0 ? std::clamp(dot(q - a, ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, norm(q - (a + t * ab)));
    }
    return best;
}

}  // namespace

double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
    double d = 0.0;
    for (const Vec2& q : a.nodes()) d = std::max(d, point_to_polyline(q, b));
    for (const Vec2& q : b.nodes()) d = std::max(d, point_to_polyline(q, a));
    return d;
}

DiscreteCurve normalized(const DiscreteCurve& curve) {
    const Vec2 c = centroid(curve);
    const double scale = 1.0 / length(curve);
    std::vector<Vec2> out;
    out.reserve(curve.size());
    for (const Vec2& p : curve.nodes()) out.push_back(scale * (p - c));
    return {std::move(out), curve.closed()};
}

DiscreteCurve transformed(const DiscreteCurve& curve, double angle, Vec2 shift, double scale) {
    std::vector<Vec2> out;
    out.reserve(curve.size());
    for (const Vec2& p : curve.nodes()) out.push_back(scale * rotate(p, angle) + shift);
    return {std::move(out), curve.closed()};
}

}  // namespace curveflow
