#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "curveflow/geometry.hpp"

namespace curveflow {

// Every residual below is the arc-length weighted L2 norm of the fitted
// defect over the weighted L2 norm of kappa_ss (kappa for the stationary
// fit). The kappa_ss norm is floored at ||kappa|| / L^2, the natural scale of
// the curve, so that curves with kappa_ss == 0 do not divide roundoff by
// roundoff.

/// kappa(s) = k1 + k2 s.
struct StationaryFit {
    double k1 = 0.0;
    double k2 = 0.0;
    double residual = 0.0;
};

/// kappa_ss + K <gamma - c, nu> = 0; K < 0 shrinks, K > 0 expands.
struct ShrinkerFit {
    double K = 0.0;
    Vec2 center{};
    double residual = 0.0;
};

/// kappa_ss + <V, nu> = 0.
struct TranslatorFit {
    Vec2 V{};
    double residual = 0.0;
    bool degenerate = false;  // normals span one direction only; V is the 1-D fit
};

/// kappa_ss + 2 S <gamma_s, gamma> = 0, rotation about the origin.
struct RotatorFit {
    std::optional<double> S;  // empty when indeterminate
    double residual = 0.0;
};

enum class Verdict { Stationary, Shrinker, Expander, Translator, Rotator, None };
std::string_view to_string(Verdict verdict);

/// A fit that raised an error is reported as unavailable with its message.
template <class Fit>
struct FitOutcome {
    std::optional<Fit> fit;
    std::string unavailable;
};

struct SolitonReport {
    FitOutcome<StationaryFit> stationary;
    FitOutcome<ShrinkerFit> shrinker;
    FitOutcome<TranslatorFit> translator;
    FitOutcome<RotatorFit> rotator;
    Verdict verdict = Verdict::None;
};

inline constexpr double kDefaultClassifyTolerance = 1e-2;

/// kappa = k2 s + k1 with s measured from the arc-length midpoint. Closed
/// curves fit a constant only (k2 = 0).
StationaryFit fit_stationary(const DiscreteCurve& curve);
StationaryFit fit_stationary(const DiscreteCurve& curve, const CurveFields& fields);

/// The shrinking centre is fitted together with K, which keeps K invariant
/// under rigid motions. Throws DegenerateGeometry when <gamma, nu> is
/// explained by a translation alone (straight lines).
ShrinkerFit fit_shrinker(const DiscreteCurve& curve);
ShrinkerFit fit_shrinker(const DiscreteCurve& curve, const CurveFields& fields);

TranslatorFit fit_translator(const DiscreteCurve& curve);
TranslatorFit fit_translator(const DiscreteCurve& curve, const CurveFields& fields);

RotatorFit fit_rotator(const DiscreteCurve& curve);
RotatorFit fit_rotator(const DiscreteCurve& curve, const CurveFields& fields);

/// Runs all four fits. The verdict is the class with the smallest residual
/// below `tol`; residuals within 1e-8 of the smallest tie and are resolved
/// in the order stationary, shrinker, translator, rotator. A shrinker with
/// K > 0 is reported as an expander.
SolitonReport classify(const DiscreteCurve& curve, double tol = kDefaultClassifyTolerance);

/// Weighted L2 norm of kappa_ss with the floor described above.
double kappa_ss_scale(const DiscreteCurve& curve, const CurveFields& fields);

}  // namespace curveflow
