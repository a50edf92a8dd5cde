#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "curveflow/analytic.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/monitor.hpp"
#include "curveflow/soliton.hpp"

namespace curveflow {

using Json = nlohmann::json;

/// Shortest-free fixed format: 17 significant digits, round-trip exact.
std::string format_double(double value);

// Curve files: optional '#' comment lines, of which `# closed=true` or
// `# closed=false` is mandatory before the `x,y` header, then one node per
// line. Parse problems throw Parse; unreadable or unwritable files throw Io.
void write_curve_csv(std::ostream& out, const DiscreteCurve& curve);
void write_curve_csv(const std::filesystem::path& path, const DiscreteCurve& curve);
DiscreteCurve read_curve_csv(std::istream& in);
DiscreteCurve read_curve_csv(const std::filesystem::path& path);

Json to_json(const AnalyticCurveSpec& spec);
/// Throws Parse for unknown kinds or missing/ill-typed fields, then validates.
AnalyticCurveSpec analytic_spec_from_json(const Json& j);

Json to_json(const FlowSpec& spec);
FlowSpec flow_spec_from_json(const Json& j);

/// {stationary, shrinker, translator, rotator, verdict}; residuals rounded to
/// 6 significant digits, unavailable fits carry an "unavailable" message.
Json to_json(const SolitonReport& report);
Json to_json(const LifespanBounds& bounds);

/// Columns t,L,A,I,Q,diss; A and I are blank when undefined.
void write_monitors_csv(std::ostream& out, const MonitorSeries& series);

/// Single stroked path, viewBox fitted to the bounding box with a 5% margin.
std::string curve_svg(const DiscreteCurve& curve);

/// Run directory layout: config.json, snapshots/t_<index>.csv (plus .svg when
/// requested), monitors.csv and result.json.
void write_run_directory(const std::filesystem::path& dir, const Json& config, const Trajectory& trajectory,
                         const std::optional<ScaleProfileFit>& scale_fit, bool emit_svg);

}  // namespace curveflow
