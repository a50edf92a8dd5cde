#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

struct Trajectory;

struct MonitorSample {
    double t = 0.0;
    double L = 0.0;
    std::optional<double> A;  // closed curves only
    std::optional<double> I;  // undefined for (near) zero area
    double diss = 0.0;        // sum of kappa_s^2 dl
    double Q = 0.0;           // running time integral of diss
};

struct MonitorSeries {
    std::vector<MonitorSample> samples;
};

struct LifespanBounds {
    double T_star = 0.0;
    double T_tilde = 0.0;
    double T_fig8 = 0.0;
    double ratio_star = 0.0;
    double ratio_tilde = 0.0;
};

/// L^2 / (4 pi A); empty when |A| <= 1e-12 L^2. Throws OpenCurve.
std::optional<double> isoperimetric_ratio(const DiscreteCurve& curve);

double dissipation(const CurveFields& fields);

/// One sample with Q left at zero.
MonitorSample measure(const DiscreteCurve& curve, double t);

/// Samples every snapshot and accumulates Q with the trapezoidal rule.
MonitorSeries monitor_snapshots(std::span<const double> times, std::span<const DiscreteCurve> snapshots);
MonitorSeries monitor_trajectory(const Trajectory& trajectory);

/// T* = L0^4 / (64 pi^4), T~ = L0^4 / (768 pi^2) and the extinction time of
/// the self-similar figure eight of length L0, L0^4 / (3 * 2^11 * K(-1)^4).
LifespanBounds time_bounds(double L0);

/// Maximum relative gap between the recorded I(t) and
/// I(0) exp(-int_0^t 2 diss / L), both sides from the same series.
/// Throws DomainError if any I sample is undefined.
double isoperimetric_decay_check(const MonitorSeries& series);

}  // namespace curveflow
