#include "spline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "curveflow/banded.hpp"
#include "curveflow/errors.hpp"

namespace curveflow::detail {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                 0.4786286704993665, 0.2369268850561891};

}  // namespace

CubicSpline2D::CubicSpline2D(const DiscreteCurve& curve) : f_(curve.nodes()) {
    const std::size_t n = f_.size();
    const bool closed = curve.closed();
    if (n < (closed ? 3u : 2u)) throw Error(ErrorKind::TooFewNodes, "spline needs at least three closed or two open nodes");

    h_ = curve.chord_lengths();
    const std::size_t segs = h_.size();
    auto node = [&](std::size_t i) { return f_[i % n]; };
    auto slope = [&](std::size_t seg) { return (node(seg + 1) - node(seg)) / h_[seg]; };

    m_.assign(n, Vec2{});
    if (!closed && n == 2) return;

    BandMatrix a(n, closed ? 1 : 2, closed);
    std::vector<double> bx(n, 0.0), by(n, 0.0);
    auto set_rhs = [&](std::size_t i, Vec2 v) { bx[i] = v.x; by[i] = v.y; };

    if (closed) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t prev = (i + segs - 1) % segs;
            a.at(i, -1) = h_[prev] / 6.0;
            a.at(i, 0) = (h_[prev] + h_[i]) / 3.0;
            a.at(i, 1) = h_[i] / 6.0;
            set_rhs(i, slope(i) - slope(prev));
        }
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            a.at(i, -1) = h_[i - 1] / 6.0;
            a.at(i, 0) = (h_[i - 1] + h_[i]) / 3.0;
            a.at(i, 1) = h_[i] / 6.0;
            set_rhs(i, slope(i) - slope(i - 1));
        }
        if (n == 3) {
            a.at(0, 0) = 1.0;
            a.at(n - 1, 0) = 1.0;
        } else {
            // Not-a-knot: third derivative continuous across knots 1 and n-2.
            a.at(0, 0) = h_[1];
            a.at(0, 1) = -(h_[0] + h_[1]);
            a.at(0, 2) = h_[0];
            a.at(n - 1, -2) = h_[n - 2];
            a.at(n - 1, -1) = -(h_[n - 3] + h_[n - 2]);
            a.at(n - 1, 0) = h_[n - 3];
        }
    }
    const BandedSolver solver(a);
    const auto mx = solver.solve(bx);
    const auto my = solver.solve(by);
    for (std::size_t i = 0; i < n; ++i) m_[i] = {mx[i], my[i]};
}

Vec2 CubicSpline2D::position(std::size_t seg, double tau) const {
    const std::size_t n = f_.size();
    const double h = h_[seg];
    const Vec2 f0 = f_[seg], f1 = f_[(seg + 1) % n];
    const Vec2 m0 = m_[seg], m1 = m_[(seg + 1) % n];
    const double a = h - tau;
    return m0 * (a * a * a / (6.0 * h)) + m1 * (tau * tau * tau / (6.0 * h)) + (f0 / h - m0 * (h / 6.0)) * a +
           (f1 / h - m1 * (h / 6.0)) * tau;
}

Vec2 CubicSpline2D::derivative(std::size_t seg, double tau) const {
    const std::size_t n = f_.size();
    const double h = h_[seg];
    const Vec2 f0 = f_[seg], f1 = f_[(seg + 1) % n];
    const Vec2 m0 = m_[seg], m1 = m_[(seg + 1) % n];
    const double a = h - tau;
    return m0 * (-a * a / (2.0 * h)) + m1 * (tau * tau / (2.0 * h)) + (f1 - f0) / h - (m1 - m0) * (h / 6.0);
}

double CubicSpline2D::arc_length(std::size_t seg, double tau) const {
    const double half = 0.5 * tau;
    double acc = 0.0;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
        acc += kGaussWeights[k] * norm(derivative(seg, half * (1.0 + kGaussNodes[k])));
    }
    return half * acc;
}

double CubicSpline2D::parameter_at_arc(std::size_t seg, double arc) const {
    const double h = h_[seg];
    const double total = arc_length(seg);
    double tau = total > 0.0 ? std::clamp(arc / total, 0.0, 1.0) * h : 0.0;
    for (int it = 0; it < 30; ++it) {
        const double speed = norm(derivative(seg, tau));
        if (speed <= 0.0) break;
        const double step = (arc_length(seg, tau) - arc) / speed;
        tau = std::clamp(tau - step, 0.0, h);
        if (std::abs(step) <= 1e-15 * h) break;
    }
    return tau;
}

}  // namespace curveflow::detail
