#include "curveflow/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curveflow/errors.hpp"

namespace curveflow {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite(double v) { return std::isfinite(v); }
bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) {
        throw Error(ErrorKind::QuadratureFailure, "adaptive Simpson did not converge within the depth limit");
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

void validate(const AnalyticCurveSpec& spec) {
    require(spec.orientation == 1 || spec.orientation == -1, "orientation must be +1 or -1");
    std::visit(Overloaded{
                   [](const CircleSpec& c) {
                       require(finite(c.radius) && finite(c.center), "circle parameters must be finite");
                       require(c.radius > 0.0, "circle radius must be positive");
                   },
                   [](const LemniscateSpec& l) {
                       require(finite(l.scale) && l.scale > 0.0, "lemniscate scale must be positive");
                   },
                   [](const FresnelSpec& f) {
                       require(finite(f.c1) && finite(f.c2) && finite(f.theta) && finite(f.shift) &&
                                   finite(f.s_min) && finite(f.s_max),
                               "fresnel parameters must be finite");
                       require(f.s_min < f.s_max, "fresnel interval must satisfy s_min < s_max");
                   },
                   [](const LineSpec& l) {
                       require(finite(l.point) && finite(l.direction) && finite(l.s_min) && finite(l.s_max),
                               "line parameters must be finite");
                       require(norm(l.direction) > 0.0, "line direction must be nonzero");
                       require(l.s_min < l.s_max, "line interval must satisfy s_min < s_max");
                   },
               },
               spec.kind);
}

LemniscateSample lemniscate_point(double u, double scale) {
    if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "lemniscate scale must be positive");
    const double su = std::sin(u), cu = std::cos(u);
    const double q = 1.0 + su * su;
    const double q12 = std::sqrt(q), q32 = q * q12;

    LemniscateSample out;
    out.point = (scale / q) * Vec2{cu, su * cu};
    out.normal = Vec2{(3.0 * su * su - 1.0) / q32, -su * (2.0 + cu * cu) / q32};
    out.tangent = Vec2{out.normal.y, -out.normal.x};
    out.kappa = 3.0 * cu / q12 / scale;
    out.kappa_s = -6.0 * su / q / (scale * scale);
    out.kappa_ss = -6.0 * cu * cu * cu / q32 / (scale * scale * scale);
    out.gamma_dot_nu = scale * cu * (su * su - 1.0) / q32;
    return out;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

Vec2 modified_fresnel(double s, double c1, double c2) {
    if (!std::isfinite(s)) throw Error(ErrorKind::InvalidArgument, "fresnel arc parameter must be finite");
    const auto phase = [&](double t) { return c1 * t + c2 * t * t; };
    const double c = adaptive_simpson([&](double t) { return std::cos(phase(t)); }, 0.0, s, 1e-12);
    const double sn = adaptive_simpson([&](double t) { return std::sin(phase(t)); }, 0.0, s, 1e-12);
    return {c, sn};
}

Vec2 fresnel_point(double s, const FresnelSpec& spec) {
    return rotate(modified_fresnel(s, spec.c1, spec.c2), spec.theta) + spec.shift;
}

double elliptic_K_agm(double m) {
    if (!(m < 1.0)) throw Error(ErrorKind::DomainError, "elliptic K needs parameter m < 1");
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
        const double next = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next;
    }
    return std::numbers::pi / (a + b);
}

double elliptic_K_quadrature(double m, double tol) {
    if (!(m < 1.0)) throw Error(ErrorKind::DomainError, "elliptic K needs parameter m < 1");
    return adaptive_simpson(
        [m](double t) {
            const double st = std::sin(t);
            return 1.0 / std::sqrt(1.0 - m * st * st);
        },
        0.0, 0.5 * std::numbers::pi, tol);
}

double elliptic_K(double m) {
    if (!(m < 1.0)) throw Error(ErrorKind::DomainError, "elliptic K needs parameter m < 1, got " + std::to_string(m));
    return m >= 0.0 ? elliptic_K_agm(m) : elliptic_K_quadrature(m);
}

DiscreteCurve sample_analytic(const AnalyticCurveSpec& spec, std::size_t n) {
    validate(spec);
    const bool closed = std::holds_alternative<CircleSpec>(spec.kind) || std::holds_alternative<LemniscateSpec>(spec.kind);
    if (n < (closed ? 3u : 2u)) throw Error(ErrorKind::TooFewNodes, "too few nodes for sampling");

    const auto nd = static_cast<double>(n);
    std::vector<Vec2> nodes(n);
    std::visit(Overloaded{
                   [&](const CircleSpec& c) {
                       for (std::size_t i = 0; i < n; ++i) {
                           const double u = 2.0 * std::numbers::pi * static_cast<double>(i) / nd;
                           nodes[i] = c.center + c.radius * Vec2{std::cos(u), std::sin(u)};
                       }
                   },
                   [&](const LemniscateSpec& l) {
                       for (std::size_t i = 0; i < n; ++i) {
                           nodes[i] = lemniscate_point(2.0 * std::numbers::pi * static_cast<double>(i) / nd, l.scale).point;
                       }
                   },
                   [&](const FresnelSpec& f) {
                       const double ds = (f.s_max - f.s_min) / (nd - 1.0);
                       for (std::size_t i = 0; i < n; ++i) {
                           nodes[i] = fresnel_point(f.s_min + ds * static_cast<double>(i), f);
                       }
                   },
                   [&](const LineSpec& l) {
                       const Vec2 dir = l.direction / norm(l.direction);
                       const double ds = (l.s_max - l.s_min) / (nd - 1.0);
                       for (std::size_t i = 0; i < n; ++i) {
                           nodes[i] = l.point + (l.s_min + ds * static_cast<double>(i)) * dir;
                       }
                   },
               },
               spec.kind);
    DiscreteCurve curve(std::move(nodes), closed);
    return spec.orientation < 0 ? curve.reversed() : curve;
}

}  // namespace curveflow
