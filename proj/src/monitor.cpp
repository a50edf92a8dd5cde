#include "curveflow/monitor.hpp"

#include <cmath>
#include <numbers>

#include "curveflow/analytic.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"

namespace curveflow {

std::optional<double> isoperimetric_ratio(const DiscreteCurve& curve) {
    const double area = signed_area(curve);
    const double len = length(curve);
    if (std::abs(area) <= 1e-12 * len * len) return std::nullopt;
    return len * len / (4.0 * std::numbers::pi * area);
}

double dissipation(const CurveFields& fields) {
    double acc = 0.0;
    for (std::size_t i = 0; i < fields.size(); ++i) acc += fields.kappa_s[i] * fields.kappa_s[i] * fields.dl[i];
    return acc;
}

MonitorSample measure(const DiscreteCurve& curve, double t) {
    MonitorSample s;
    s.t = t;
    const CurveFields fields = curve_fields(curve);
    s.L = length(curve);
    s.diss = dissipation(fields);
    if (curve.closed()) {
        s.A = signed_area(curve);
        if (std::abs(*s.A) > 1e-12 * s.L * s.L) s.I = s.L * s.L / (4.0 * std::numbers::pi * *s.A);
    }
    return s;
}

MonitorSeries monitor_snapshots(std::span<const double> times, std::span<const DiscreteCurve> snapshots) {
    if (times.size() != snapshots.size()) throw Error(ErrorKind::InvalidArgument, "times and snapshots differ in size");
    MonitorSeries series;
    series.samples.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        MonitorSample s = measure(snapshots[k], times[k]);
        if (k > 0) {
            const MonitorSample& prev = series.samples.back();
            s.Q = prev.Q + 0.5 * (s.t - prev.t) * (s.diss + prev.diss);
        }
        series.samples.push_back(s);
    }
    return series;
}

MonitorSeries monitor_trajectory(const Trajectory& trajectory) {
    return monitor_snapshots(trajectory.times, trajectory.snapshots);
}

LifespanBounds time_bounds(double L0) {
    if (!(L0 > 0.0) || !std::isfinite(L0)) throw Error(ErrorKind::DomainError, "initial length must be positive");
    constexpr double pi = std::numbers::pi;
    const double l4 = L0 * L0 * L0 * L0;
    const double k = elliptic_K(-1.0);
    LifespanBounds b;
    b.T_star = l4 / (64.0 * pi * pi * pi * pi);
    b.T_tilde = l4 / (768.0 * pi * pi);
    b.T_fig8 = l4 / (3.0 * 2048.0 * k * k * k * k);
    b.ratio_star = b.T_star / b.T_fig8;
    b.ratio_tilde = b.T_tilde / b.T_fig8;
    return b;
}

double isoperimetric_decay_check(const MonitorSeries& series) {
    const auto& s = series.samples;
    if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty monitor series");
    for (const auto& sample : s) {
        if (!sample.I) throw Error(ErrorKind::DomainError, "isoperimetric ratio is undefined on this series");
    }
    const double i0 = *s.front().I;
    double exponent = 0.0;
    double worst = 0.0;
    for (std::size_t k = 1; k < s.size(); ++k) {
        exponent += 0.5 * (s[k].t - s[k - 1].t) * (2.0 * s[k].diss / s[k].L + 2.0 * s[k - 1].diss / s[k - 1].L);
        const double predicted = i0 * std::exp(-exponent);
        worst = std::max(worst, std::abs(*s[k].I - predicted) / std::abs(*s[k].I));
    }
    return worst;
}

}  // namespace curveflow
