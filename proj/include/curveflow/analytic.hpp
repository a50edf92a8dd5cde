#pragma once

#include <cstddef>
#include <functional>
#include <variant>

#include "curveflow/geometry.hpp"

namespace curveflow {

struct CircleSpec {
    double radius = 1.0;
    Vec2 center{};
};

/// Lemniscate of Bernoulli (cos u, sin u cos u) / (1 + sin^2 u), scaled.
struct LemniscateSpec {
    double scale = 1.0;
};

/// Stationary family: rotation by theta of (C(s, c1, c2), S(s, c1, c2)),
/// then translation by shift. Curvature is 2 c2 s + c1.
struct FresnelSpec {
    double c1 = 0.0;
    double c2 = 0.0;
    double theta = 0.0;
    Vec2 shift{};
    double s_min = 0.0;
    double s_max = 1.0;
};

struct LineSpec {
    Vec2 point{};
    Vec2 direction{1.0, 0.0};
    double s_min = 0.0;
    double s_max = 1.0;
};

struct AnalyticCurveSpec {
    std::variant<CircleSpec, LemniscateSpec, FresnelSpec, LineSpec> kind;
    int orientation = 1;  // -1 reverses traversal
};

/// Throws InvalidArgument for non-positive sizes, empty intervals, a zero
/// direction, non-finite numbers or an orientation other than +-1.
void validate(const AnalyticCurveSpec& spec);

struct LemniscateSample {
    Vec2 point;
    Vec2 tangent;
    Vec2 normal;
    double kappa = 0.0;
    double kappa_s = 0.0;
    double kappa_ss = 0.0;
    double gamma_dot_nu = 0.0;
};

/// Closed-form position, frame and curvature derivatives of the scaled
/// lemniscate at parameter u.
LemniscateSample lemniscate_point(double u, double scale = 1.0);

/// Adaptive Simpson quadrature with Richardson error control. Throws
/// QuadratureFailure when a subinterval needs more than `max_depth`
/// bisections.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth = 60);

/// (C, S) = int_0^s (cos, sin)(c1 t + c2 t^2) dt to absolute tolerance 1e-12.
Vec2 modified_fresnel(double s, double c1, double c2);
Vec2 fresnel_point(double s, const FresnelSpec& spec);

/// Complete elliptic integral of the first kind with parameter m < 1.
/// Uses the arithmetic-geometric mean for m >= 0 and quadrature for m < 0.
double elliptic_K(double m);
double elliptic_K_agm(double m);
double elliptic_K_quadrature(double m, double tol = 1e-13);

/// Uniform parameter sampling: closed kinds over [0, 2 pi), open kinds over
/// [s_min, s_max] with both ends included. Accepts N >= 3 (closed) or N >= 2
/// (open); operators that need curvature derivatives demand N >= 8.
DiscreteCurve sample_analytic(const AnalyticCurveSpec& spec, std::size_t n);

}  // namespace curveflow
