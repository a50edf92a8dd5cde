#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curveflow/geometry.hpp"
#include "curveflow/monitor.hpp"

namespace curveflow {

enum class FlowKind { CurveDiffusion, Elastic };
enum class Scheme { Explicit, SemiImplicit };

/// Why a trajectory stopped. Everything but TimeReached is numerical.
enum class Termination { TimeReached, LengthBelow, MinSpacingBelow, NonFinite, SolveFailure, NonRegular };

std::string_view to_string(FlowKind kind);
std::string_view to_string(Scheme scheme);
std::string_view to_string(Termination reason);

/// Optional stop criteria; reaching t_end and non-finite states always stop.
struct StopCriteria {
    std::optional<double> length_below;
    std::optional<double> min_spacing_below;
};

struct FlowSpec {
    FlowKind kind = FlowKind::CurveDiffusion;
    Scheme scheme = Scheme::SemiImplicit;
    std::optional<double> dt;  // empty means Auto
    double t_end = 1.0;
    std::size_t redistribute_every = 10;  // 0 disables redistribution
    std::size_t snapshot_every = 10;
    StopCriteria stop;
};

/// Largest user-supplied explicit step: dt * (N / L)^4 <= 0.125.
inline constexpr double kExplicitStabilityLimit = 0.125;

/// Throws InvalidArgument for non-positive t_end or dt, zero snapshot_every,
/// or an explicit dt outside the stability envelope for this curve.
void validate(const FlowSpec& spec, const DiscreteCurve& curve);

struct Trajectory {
    std::vector<double> times;
    std::vector<DiscreteCurve> snapshots;
    MonitorSeries monitors;
    Termination termination = Termination::TimeReached;
    std::string detail;  // diagnostic for numerical terminations
    std::size_t steps = 0;
};

/// Scalar speed along the normal: -kappa_ss, or -kappa_ss - kappa^3 / 2 for
/// the elastic flow.
std::vector<double> normal_velocity(const CurveFields& fields, FlowKind kind);

/// Auto step: h_min^4 / 10 with the shortest segment h_min (explicit), or
/// h^2 / 4 with the mean spacing h = L / N (semi-implicit).
double auto_dt(const DiscreteCurve& curve, Scheme scheme);

/// One time step of size dt. The semi-implicit scheme treats a fourth
/// difference with the node spacing frozen over the step implicitly on each
/// coordinate and everything else explicitly; on uniformly spaced closed
/// curves it is (1/h^4) delta^4. That Euler step is Richardson-extrapolated
/// (two half steps against one full step) to second order in dt.
/// Throws SolveFailure or NonFinite.
DiscreteCurve step(const DiscreteCurve& curve, double dt, const FlowSpec& spec);

/// Steps until t_end or a stop criterion, redistributing nodes by arc length
/// every `redistribute_every` steps. Step failures end the run and are
/// reported in `termination`.
Trajectory evolve(const DiscreteCurve& initial, const FlowSpec& spec);

struct ScaleProfileFit {
    double rho = 1.0;
    double K = 0.0;
    double rms_residual = 0.0;
};

/// Least squares fit of (L(t) / L(0))^4 = 1 + 4 K t.
ScaleProfileFit fit_scale_profile(const Trajectory& trajectory);

}  // namespace curveflow
