#include "curveflow/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "curveflow/errors.hpp"

namespace curveflow {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

double round_significant(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, std::size_t line) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": bad number '" + t + "'");
    }
    return v;
}

Vec2 vec_from_json(const Json& j, const char* name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorKind::Parse, std::string("field '") + name + "' must be a two-element numeric array");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double number(const Json& j, const char* name, std::optional<double> fallback = std::nullopt) {
    if (!j.contains(name)) {
        if (fallback) return *fallback;
        throw Error(ErrorKind::Parse, std::string("missing field '") + name + "'");
    }
    if (!j[name].is_number()) throw Error(ErrorKind::Parse, std::string("field '") + name + "' must be a number");
    return j[name].get<double>();
}

std::size_t count(const Json& j, const char* name, std::size_t fallback) {
    if (!j.contains(name)) return fallback;
    if (!j[name].is_number_unsigned()) {
        throw Error(ErrorKind::Parse, std::string("field '") + name + "' must be a non-negative integer");
    }
    return j[name].get<std::size_t>();
}

Json vec_json(Vec2 v) { return Json::array({v.x, v.y}); }

}  // namespace

void write_curve_csv(std::ostream& out, const DiscreteCurve& curve) {
    out << "# closed=" << (curve.closed() ? "true" : "false") << "\n";
    out << "x,y\n";
    for (const Vec2& p : curve.nodes()) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_curve_csv(const fs::path& path, const DiscreteCurve& curve) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    write_curve_csv(out, curve);
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

DiscreteCurve read_curve_csv(std::istream& in) {
    std::optional<bool> closed;
    bool header = false;
    std::vector<Vec2> nodes;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::string body = trim(t.substr(1));
            body.erase(std::remove(body.begin(), body.end(), ' '), body.end());
            if (body == "closed=true") closed = true;
            if (body == "closed=false") closed = false;
            continue;
        }
        if (!header) {
            std::string compact = t;
            compact.erase(std::remove(compact.begin(), compact.end(), ' '), compact.end());
            if (compact != "x,y") throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected header 'x,y'");
            if (!closed) throw Error(ErrorKind::Parse, "missing '# closed=true|false' comment before the header");
            header = true;
            continue;
        }
        const auto comma = t.find(',');
        if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected two comma-separated values");
        }
        nodes.push_back({parse_double(t.substr(0, comma), lineno), parse_double(t.substr(comma + 1), lineno)});
    }
    if (!header) throw Error(ErrorKind::Parse, "no 'x,y' header found");
    return {std::move(nodes), *closed};
}

DiscreteCurve read_curve_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return read_curve_csv(in);
}

Json to_json(const AnalyticCurveSpec& spec) {
    Json j = std::visit(
        [](const auto& k) -> Json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, CircleSpec>) {
                return {{"kind", "circle"}, {"radius", k.radius}, {"center", vec_json(k.center)}};
            } else if constexpr (std::is_same_v<T, LemniscateSpec>) {
                return {{"kind", "lemniscate"}, {"scale", k.scale}};
            } else if constexpr (std::is_same_v<T, FresnelSpec>) {
                return {{"kind", "fresnel"}, {"c1", k.c1},       {"c2", k.c2},        {"theta", k.theta},
                        {"shift", vec_json(k.shift)}, {"s_min", k.s_min}, {"s_max", k.s_max}};
            } else {
                return {{"kind", "line"},   {"point", vec_json(k.point)}, {"direction", vec_json(k.direction)},
                        {"s_min", k.s_min}, {"s_max", k.s_max}};
            }
        },
        spec.kind);
    j["orientation"] = spec.orientation;
    return j;
}

AnalyticCurveSpec analytic_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw Error(ErrorKind::Parse, "curve spec must be an object with a string 'kind'");
    }
    const std::string kind = j["kind"].get<std::string>();
    AnalyticCurveSpec spec;
    if (kind == "circle") {
        spec.kind = CircleSpec{number(j, "radius", 1.0), j.contains("center") ? vec_from_json(j["center"], "center") : Vec2{}};
    } else if (kind == "lemniscate") {
        spec.kind = LemniscateSpec{number(j, "scale", 1.0)};
    } else if (kind == "fresnel") {
        spec.kind = FresnelSpec{number(j, "c1", 0.0),
                                number(j, "c2", 0.0),
                                number(j, "theta", 0.0),
                                j.contains("shift") ? vec_from_json(j["shift"], "shift") : Vec2{},
                                number(j, "s_min"),
                                number(j, "s_max")};
    } else if (kind == "line") {
        spec.kind = LineSpec{j.contains("point") ? vec_from_json(j["point"], "point") : Vec2{},
                             j.contains("direction") ? vec_from_json(j["direction"], "direction") : Vec2{1.0, 0.0},
                             number(j, "s_min", 0.0), number(j, "s_max", 1.0)};
    } else {
        throw Error(ErrorKind::Parse, "unknown curve kind '" + kind + "'");
    }
    if (j.contains("orientation")) {
        if (!j["orientation"].is_number_integer()) throw Error(ErrorKind::Parse, "orientation must be an integer");
        spec.orientation = j["orientation"].get<int>();
    }
    validate(spec);
    return spec;
}

Json to_json(const FlowSpec& spec) {
    Json stop = Json::object();
    if (spec.stop.length_below) stop["length_below"] = *spec.stop.length_below;
    if (spec.stop.min_spacing_below) stop["min_spacing_below"] = *spec.stop.min_spacing_below;
    return {{"kind", std::string(to_string(spec.kind))},
            {"scheme", std::string(to_string(spec.scheme))},
            {"dt", spec.dt ? Json(*spec.dt) : Json("auto")},
            {"t_end", spec.t_end},
            {"redistribute_every", spec.redistribute_every},
            {"snapshot_every", spec.snapshot_every},
            {"stop", stop}};
}

FlowSpec flow_spec_from_json(const Json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "flow spec must be an object");
    FlowSpec spec;
    if (j.contains("kind")) {
        const auto k = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
        if (k == "curve_diffusion") spec.kind = FlowKind::CurveDiffusion;
        else if (k == "elastic") spec.kind = FlowKind::Elastic;
        else throw Error(ErrorKind::Parse, "flow kind must be 'curve_diffusion' or 'elastic'");
    }
    if (j.contains("scheme")) {
        const auto s = j["scheme"].is_string() ? j["scheme"].get<std::string>() : "";
        if (s == "explicit") spec.scheme = Scheme::Explicit;
        else if (s == "semi_implicit") spec.scheme = Scheme::SemiImplicit;
        else throw Error(ErrorKind::Parse, "scheme must be 'explicit' or 'semi_implicit'");
    }
    if (j.contains("dt") && !(j["dt"].is_string() && j["dt"].get<std::string>() == "auto")) {
        spec.dt = number(j, "dt");
    }
    spec.t_end = number(j, "t_end");
    spec.redistribute_every = count(j, "redistribute_every", spec.redistribute_every);
    spec.snapshot_every = count(j, "snapshot_every", spec.snapshot_every);
    if (j.contains("stop")) {
        const Json& s = j["stop"];
        if (!s.is_object()) throw Error(ErrorKind::Parse, "'stop' must be an object");
        if (s.contains("length_below")) spec.stop.length_below = number(s, "length_below");
        if (s.contains("min_spacing_below")) spec.stop.min_spacing_below = number(s, "min_spacing_below");
    }
    if (!std::isfinite(spec.t_end)) throw Error(ErrorKind::Parse, "non-finite flow parameter");
    return spec;
}

Json to_json(const SolitonReport& report) {
    auto outcome = [](const auto& o, auto&& fill) -> Json {
        if (!o.fit) return {{"unavailable", o.unavailable}};
        Json j = Json::object();
        fill(j, *o.fit);
        j["residual"] = round_significant(o.fit->residual, 6);
        return j;
    };
    Json j;
    j["stationary"] = outcome(report.stationary, [](Json& o, const StationaryFit& f) {
        o["k1"] = f.k1;
        o["k2"] = f.k2;
    });
    j["shrinker"] = outcome(report.shrinker, [](Json& o, const ShrinkerFit& f) {
        o["K"] = f.K;
        o["center"] = vec_json(f.center);
    });
    j["translator"] = outcome(report.translator, [](Json& o, const TranslatorFit& f) {
        o["V"] = vec_json(f.V);
        o["degenerate"] = f.degenerate;
    });
    j["rotator"] = outcome(report.rotator, [](Json& o, const RotatorFit& f) {
        o["S"] = f.S ? Json(*f.S) : Json("indeterminate");
    });
    j["verdict"] = std::string(to_string(report.verdict));
    return j;
}

Json to_json(const LifespanBounds& b) {
    return {{"T_star", b.T_star},
            {"T_tilde", b.T_tilde},
            {"T_fig8", b.T_fig8},
            {"ratio_star", b.ratio_star},
            {"ratio_tilde", b.ratio_tilde}};
}

void write_monitors_csv(std::ostream& out, const MonitorSeries& series) {
    out << "t,L,A,I,Q,diss\n";
    for (const auto& s : series.samples) {
        out << format_double(s.t) << ',' << format_double(s.L) << ',' << (s.A ? format_double(*s.A) : "") << ','
            << (s.I ? format_double(*s.I) : "") << ',' << format_double(s.Q) << ',' << format_double(s.diss) << '\n';
    }
}

std::string curve_svg(const DiscreteCurve& curve) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        // SVG's y axis points down; flip so the picture is not mirrored.
        const double x = curve[i].x, y = -curve[i].y;
        if (i == 0 || x < xmin) xmin = x;
        if (i == 0 || x > xmax) xmax = x;
        if (i == 0 || y < ymin) ymin = y;
        if (i == 0 || y > ymax) ymax = y;
    }
    const double extent = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double margin = 0.05 * extent;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin - margin) << ' '
        << format_double(ymin - margin) << ' ' << format_double(xmax - xmin + 2.0 * margin) << ' '
        << format_double(ymax - ymin + 2.0 * margin) << "\">\n";
    svg << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(0.005 * extent) << "\" d=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        svg << (i == 0 ? "M " : " L ") << format_double(curve[i].x) << ' ' << format_double(-curve[i].y);
    }
    if (curve.closed()) svg << " Z";
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

void write_run_directory(const fs::path& dir, const Json& config, const Trajectory& trajectory,
                         const std::optional<ScaleProfileFit>& scale_fit, bool emit_svg) {
    std::error_code ec;
    fs::create_directories(dir / "snapshots", ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + (dir / "snapshots").string() + ": " + ec.message());

    auto write_text = [](const fs::path& path, const std::string& text) {
        std::ofstream out(path);
        if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
        out << text;
        out.flush();
        if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
    };

    write_text(dir / "config.json", config.dump(2) + "\n");
    for (std::size_t k = 0; k < trajectory.snapshots.size(); ++k) {
        const std::string stem = "t_" + std::to_string(k);
        write_curve_csv(dir / "snapshots" / (stem + ".csv"), trajectory.snapshots[k]);
        if (emit_svg) write_text(dir / "snapshots" / (stem + ".svg"), curve_svg(trajectory.snapshots[k]));
    }
    std::ostringstream monitors;
    write_monitors_csv(monitors, trajectory.monitors);
    write_text(dir / "monitors.csv", monitors.str());

    Json result = {{"termination", std::string(to_string(trajectory.termination))},
                   {"detail", trajectory.detail},
                   {"steps", trajectory.steps},
                   {"t_final", trajectory.times.empty() ? 0.0 : trajectory.times.back()},
                   {"snapshots", trajectory.snapshots.size()}};
    if (scale_fit) {
        result["fitted_K"] = scale_fit->K;
        result["fit_rho"] = scale_fit->rho;
        result["fit_rms_residual"] = scale_fit->rms_residual;
    }
    write_text(dir / "result.json", result.dump(2) + "\n");
}

}  // namespace curveflow
