#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "curveflow/analytic.hpp"
#include "curveflow/geometry.hpp"

namespace testing {

using curveflow::DiscreteCurve;
using curveflow::Vec2;

inline constexpr double kPi = std::numbers::pi;

// K(-1) to 20 digits (mpmath ellipk(-1)).
inline constexpr double kEllipticKm1 = 1.31102877714605990523;

// pi / (2 AGM(1, sqrt(1 - m))); valid for every m < 1 including m < 0.
inline double agm_elliptic_K(double m) {
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int k = 0; k < 60 && std::abs(a - b) > 1e-16 * a; ++k) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

// Periodic trapezoid rule, spectrally accurate for smooth periodic integrands.
template <class F>
double periodic_integral(F f, int n = 4096) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += f(2.0 * kPi * i / n);
    return acc * 2.0 * kPi / n;
}

inline double ellipse_perimeter(double a, double b) {
    return periodic_integral([&](double u) { return std::hypot(a * std::sin(u), b * std::cos(u)); });
}

inline DiscreteCurve ellipse(double a, double b, std::size_t n, Vec2 center = {}) {
    std::vector<Vec2> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        nodes[i] = center + Vec2{a * std::cos(u), b * std::sin(u)};
    }
    return {nodes, true};
}

inline DiscreteCurve circle(double r, std::size_t n, Vec2 center = {}) { return ellipse(r, r, n, center); }

inline DiscreteCurve lemniscate(std::size_t n, double scale = 1.0) {
    curveflow::AnalyticCurveSpec spec;
    spec.kind = curveflow::LemniscateSpec{scale};
    return curveflow::sample_analytic(spec, n);
}

inline DiscreteCurve fresnel(double c1, double c2, double s_min, double s_max, std::size_t n) {
    curveflow::AnalyticCurveSpec spec;
    spec.kind = curveflow::FresnelSpec{c1, c2, 0.0, {}, s_min, s_max};
    return curveflow::sample_analytic(spec, n);
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double order(double coarse, double fine) { return std::log2(coarse / fine); }

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(CURVEFLOW_FIXTURE_DIR) / name;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("curveflow_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
