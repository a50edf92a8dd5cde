#include "curveflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include "curveflow/banded.hpp"
#include "curveflow/errors.hpp"

namespace curveflow {

std::string_view to_string(FlowKind kind) {
    return kind == FlowKind::CurveDiffusion ? "curve_diffusion" : "elastic";
}

std::string_view to_string(Scheme scheme) { return scheme == Scheme::Explicit ? "explicit" : "semi_implicit"; }

std::string_view to_string(Termination reason) {
    switch (reason) {
        case Termination::TimeReached: return "TimeReached";
        case Termination::LengthBelow: return "LengthBelow";
        case Termination::MinSpacingBelow: return "MinSpacingBelow";
        case Termination::NonFinite: return "NonFinite";
        case Termination::SolveFailure: return "SolveFailure";
        case Termination::NonRegular: return "NonRegular";
    }
    return "Unknown";
}

void validate(const FlowSpec& spec, const DiscreteCurve& curve) {
    if (!(spec.t_end > 0.0) || !std::isfinite(spec.t_end)) {
        throw Error(ErrorKind::InvalidArgument, "t_end must be positive and finite");
    }
    if (spec.snapshot_every == 0) throw Error(ErrorKind::InvalidArgument, "snapshot_every must be at least 1");
    if (spec.dt) {
        if (!(*spec.dt > 0.0) || !std::isfinite(*spec.dt)) {
            throw Error(ErrorKind::InvalidArgument, "dt must be positive and finite");
        }
        if (spec.scheme == Scheme::Explicit) {
            const double ratio = static_cast<double>(curve.size()) / length(curve);
            const double number = *spec.dt * std::pow(ratio, 4);
            if (number > kExplicitStabilityLimit) {
                throw Error(ErrorKind::InvalidArgument,
                            "explicit dt violates the stability envelope: dt*(N/L)^4 = " + std::to_string(number) +
                                " > 0.125");
            }
        }
    }
}

std::vector<double> normal_velocity(const CurveFields& fields, FlowKind kind) {
    std::vector<double> v(fields.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = -fields.kappa_ss[i];
        if (kind == FlowKind::Elastic) v[i] -= 0.5 * fields.kappa[i] * fields.kappa[i] * fields.kappa[i];
    }
    return v;
}

double auto_dt(const DiscreteCurve& curve, Scheme scheme) {
    if (scheme == Scheme::Explicit) {
        // Forward Euler is limited by the shortest segment, not the mean.
        return std::pow(min_segment_length(curve), 4) / 10.0;
    }
    const double h = length(curve) / static_cast<double>(curve.size());
    return h * h / 4.0;
}

namespace {

// Closed curves: W delta^2 W delta^2 with W = diag(1 / h_i^2) and h_i the
// mean of the two chords at node i, i.e. the fourth arc-length derivative
// with the local spacing frozen. It reduces to delta^4 / h^4 on uniform
// curves. Open curves use the free-end beam D2^T D2 / h^4 with the mean
// spacing. Every entry is multiplied by `dt`.
BandMatrix fourth_difference(const DiscreteCurve& curve, double dt) {
    const std::size_t n = curve.size();
    const bool closed = curve.closed();
    BandMatrix d4(n, 2, closed);
    if (closed) {
        const auto chords = curve.chord_lengths();
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double h = 0.5 * (chords[i] + chords[(i + n - 1) % n]);
            w[i] = 1.0 / (h * h);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double wm = w[(i + n - 1) % n], w0 = w[i], wp = w[(i + 1) % n];
            const double a = dt * w0;
            d4.at(i, -2) = a * wm;
            d4.at(i, -1) = a * (-2.0 * wm - 2.0 * w0);
            d4.at(i, 0) = a * (wm + 4.0 * w0 + wp);
            d4.at(i, 1) = a * (-2.0 * w0 - 2.0 * wp);
            d4.at(i, 2) = a * wp;
        }
        return d4;
    }
    const double h = mean_segment_length(curve);
    const double scale = dt / (h * h * h * h);
    constexpr double row[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = -2; k <= 2; ++k) d4.at(i, k) = scale * row[k + 2];
    }
    // D2^T D2 for the interior second difference D2.
    for (std::size_t r : {std::size_t{0}, std::size_t{1}, n - 2, n - 1}) {
        for (int k = -2; k <= 2; ++k) d4.at(r, k) = 0.0;
    }
    d4.at(0, 0) = scale;
    d4.at(0, 1) = -2.0 * scale;
    d4.at(0, 2) = scale;
    d4.at(1, -1) = -2.0 * scale;
    d4.at(1, 0) = 5.0 * scale;
    d4.at(1, 1) = -4.0 * scale;
    d4.at(1, 2) = scale;
    d4.at(n - 1, 0) = scale;
    d4.at(n - 1, -1) = -2.0 * scale;
    d4.at(n - 1, -2) = scale;
    d4.at(n - 2, 1) = -2.0 * scale;
    d4.at(n - 2, 0) = 5.0 * scale;
    d4.at(n - 2, -1) = -4.0 * scale;
    d4.at(n - 2, -2) = scale;
    return d4;
}

// One linearly implicit Euler step: (I + dt D4) x1 = x0 + dt (v nu + D4 x0).
std::vector<Vec2> imex_euler(const DiscreteCurve& curve, double dt, FlowKind kind) {
    const CurveFields fields = curve_fields(curve);
    const std::vector<double> v = normal_velocity(fields, kind);
    const std::size_t n = curve.size();
    const BandMatrix d4 = fourth_difference(curve, dt);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = curve[i].x;
        y[i] = curve[i].y;
    }
    const auto d4x = d4.multiply(x);
    const auto d4y = d4.multiply(y);

    BandMatrix system = d4;
    for (std::size_t i = 0; i < n; ++i) system.at(i, 0) += 1.0;
    const BandedSolver solver(system);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e = curve[i] + (dt * v[i]) * fields.normal[i];
        x[i] = e.x + d4x[i];
        y[i] = e.y + d4y[i];
    }
    const auto nx = solver.solve(x);
    const auto ny = solver.solve(y);
    std::vector<Vec2> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {nx[i], ny[i]};
    return out;
}

void require_finite(const std::vector<Vec2>& pts) {
    for (const Vec2& p : pts) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorKind::NonFinite, "non-finite node after step");
    }
}

}  // namespace

DiscreteCurve step(const DiscreteCurve& curve, double dt, const FlowSpec& spec) {
    const std::size_t n = curve.size();
    std::vector<Vec2> next(n);
    if (spec.scheme == Scheme::Explicit) {
        const CurveFields fields = curve_fields(curve);
        const std::vector<double> v = normal_velocity(fields, spec.kind);
        for (std::size_t i = 0; i < n; ++i) next[i] = curve[i] + (dt * v[i]) * fields.normal[i];
    } else {
        // The stabilizing term dt D4 (x1 - x0) makes a single step first order,
        // which leaves an O(dt) area drift. Extrapolating one full step against
        // two half steps cancels it and still damps the stiff modes.
        const auto full = imex_euler(curve, dt, spec.kind);
        require_finite(full);
        auto half = imex_euler(curve, 0.5 * dt, spec.kind);
        require_finite(half);
        half = imex_euler(DiscreteCurve(half, curve.closed()), 0.5 * dt, spec.kind);
        for (std::size_t i = 0; i < n; ++i) next[i] = 2.0 * half[i] - full[i];
    }

    DiscreteCurve out(std::move(next), curve.closed());
    if (!all_finite(out)) throw Error(ErrorKind::NonFinite, "non-finite node after step");
    return out;
}

Trajectory evolve(const DiscreteCurve& initial, const FlowSpec& spec) {
    require_regular(initial, kMinStencilNodes);
    validate(spec, initial);

    Trajectory traj;
    DiscreteCurve curve = initial;
    double t = 0.0;
    traj.times.push_back(t);
    traj.snapshots.push_back(curve);

    auto record = [&] {
        if (traj.times.back() < t) {
            traj.times.push_back(t);
            traj.snapshots.push_back(curve);
        }
    };
    auto stop = [&](Termination reason, std::string detail) {
        traj.termination = reason;
        traj.detail = std::move(detail);
        record();
    };

    double dt = spec.dt ? *spec.dt : auto_dt(curve, spec.scheme);
    const double t_tol = 1e-12 * spec.t_end;
    for (;;) {
        const bool last = t + dt >= spec.t_end - t_tol;
        const double h = last ? spec.t_end - t : dt;
        try {
            curve = step(curve, h, spec);
        } catch (const Error& e) {
            const Termination reason = e.kind() == ErrorKind::NonFinite     ? Termination::NonFinite
                                       : e.kind() == ErrorKind::SolveFailure ? Termination::SolveFailure
                                                                             : Termination::NonRegular;
            stop(reason, e.what());
            break;
        }
        t = last ? spec.t_end : t + h;
        ++traj.steps;

        try {
            if (spec.redistribute_every > 0 && traj.steps % spec.redistribute_every == 0) {
                curve = resample_uniform(curve, curve.size());
                if (!spec.dt) dt = auto_dt(curve, spec.scheme);
            }
        } catch (const Error& e) {
            stop(Termination::NonRegular, e.what());
            break;
        }

        if (last) {
            stop(Termination::TimeReached, {});
            break;
        }
        if (spec.stop.min_spacing_below && min_segment_length(curve) < *spec.stop.min_spacing_below) {
            stop(Termination::MinSpacingBelow, "minimum node spacing below threshold");
            break;
        }
        if (spec.stop.length_below) {
            double current = 0.0;
            try {
                current = length(curve);
            } catch (const Error& e) {
                stop(Termination::NonRegular, e.what());
                break;
            }
            if (current < *spec.stop.length_below) {
                stop(Termination::LengthBelow, "length below threshold");
                break;
            }
        }
        if (traj.steps % spec.snapshot_every == 0) record();
    }

    try {
        traj.monitors = monitor_snapshots(traj.times, traj.snapshots);
    } catch (const Error& e) {
        // The last snapshot may be degenerate after a numerical stop; keep the
        // monitors for every sample that can still be measured.
        std::size_t usable = traj.snapshots.size();
        while (usable > 1) {
            --usable;
            try {
                traj.monitors = monitor_snapshots(std::span(traj.times).first(usable),
                                                  std::span(traj.snapshots).first(usable));
                break;
            } catch (const Error&) {
            }
        }
        traj.times.resize(usable);
        traj.snapshots.resize(usable);
        if (traj.detail.empty()) traj.detail = e.what();
    }
    return traj;
}

ScaleProfileFit fit_scale_profile(const Trajectory& trajectory) {
    const auto& samples = trajectory.monitors.samples;
    if (samples.size() < 3) throw Error(ErrorKind::TooFewSnapshots, "scale profile fit needs at least 3 snapshots");
    const double l0 = samples.front().L;
    double stt = 0.0, sty = 0.0;
    for (const auto& s : samples) {
        const double y = std::pow(s.L / l0, 4) - 1.0;
        stt += s.t * s.t;
        sty += s.t * y;
    }
    if (!(stt > 0.0)) throw Error(ErrorKind::TooFewSnapshots, "snapshots do not span positive time");
    const double slope = sty / stt;

    double sq = 0.0;
    for (const auto& s : samples) {
        const double observed = std::pow(s.L / l0, 4);
        const double model = 1.0 + slope * s.t;
        sq += std::pow((model - observed) / observed, 2);
    }
    return {1.0, 0.25 * slope, std::sqrt(sq / static_cast<double>(samples.size()))};
}

}  // namespace curveflow
