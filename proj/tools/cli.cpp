#include "cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "curveflow/analytic.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/io.hpp"
#include "curveflow/monitor.hpp"
#include "curveflow/soliton.hpp"

namespace curveflow::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Io: return kIoError;
        default: return kInputError;
    }
}

struct GenerateArgs {
    std::string kind;
    std::string spec_json;
    std::size_t nodes = 256;
    std::string out;
    double radius = 1.0, cx = 0.0, cy = 0.0;
    double scale = 1.0;
    double c1 = 0.0, c2 = 0.0, theta = 0.0, vx = 0.0, vy = 0.0;
    double smin = 0.0, smax = 1.0;
    double px = 0.0, py = 0.0, dx = 1.0, dy = 0.0;
    int orientation = 1;
};

AnalyticCurveSpec spec_from_flags(const GenerateArgs& a) {
    AnalyticCurveSpec spec;
    if (a.kind == "circle") spec.kind = CircleSpec{a.radius, {a.cx, a.cy}};
    else if (a.kind == "lemniscate") spec.kind = LemniscateSpec{a.scale};
    else if (a.kind == "fresnel") spec.kind = FresnelSpec{a.c1, a.c2, a.theta, {a.vx, a.vy}, a.smin, a.smax};
    else if (a.kind == "line") spec.kind = LineSpec{{a.px, a.py}, {a.dx, a.dy}, a.smin, a.smax};
    else throw Error(ErrorKind::Parse, "unknown --kind '" + a.kind + "'");
    spec.orientation = a.orientation;
    validate(spec);
    return spec;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    AnalyticCurveSpec spec;
    if (!a.spec_json.empty()) {
        Json j;
        try {
            j = Json::parse(a.spec_json);
        } catch (const Json::exception& e) {
            throw Error(ErrorKind::Parse, std::string("--spec is not valid JSON: ") + e.what());
        }
        spec = analytic_spec_from_json(j);
    } else {
        spec = spec_from_flags(a);
    }
    const DiscreteCurve curve = sample_analytic(spec, a.nodes);
    if (a.out.empty() || a.out == "-") {
        write_curve_csv(out, curve);
    } else {
        write_curve_csv(fs::path(a.out), curve);
    }
    return kOk;
}

struct RunConfig {
    Json raw;
    DiscreteCurve curve;
    FlowSpec flow;
    fs::path output;
    bool emit_svg = false;
    bool fit_scale = false;
};

RunConfig load_run_config(const fs::path& path, const std::string& output_override) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
    RunConfig cfg;
    try {
        cfg.raw = Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Parse, "config is not valid JSON: " + std::string(e.what()));
    }
    const Json& j = cfg.raw;
    if (!j.is_object() || !j.contains("curve") || !j["curve"].is_object()) {
        throw Error(ErrorKind::Parse, "config needs a 'curve' object");
    }
    const fs::path base = path.parent_path();
    const Json& src = j["curve"];
    const bool has_file = src.contains("file");
    const bool has_spec = src.contains("spec");
    if (has_file == has_spec) throw Error(ErrorKind::Parse, "'curve' must hold exactly one of 'file' or 'spec'");
    if (has_file) {
        if (!src["file"].is_string()) throw Error(ErrorKind::Parse, "'curve.file' must be a path string");
        fs::path file = src["file"].get<std::string>();
        if (file.is_relative()) file = base / file;
        cfg.curve = read_curve_csv(file);
    } else {
        if (!src.contains("nodes") || !src["nodes"].is_number_unsigned()) {
            throw Error(ErrorKind::Parse, "'curve.nodes' must be a positive integer");
        }
        cfg.curve = sample_analytic(analytic_spec_from_json(src["spec"]), src["nodes"].get<std::size_t>());
    }
    if (!j.contains("flow")) throw Error(ErrorKind::Parse, "config needs a 'flow' object");
    cfg.flow = flow_spec_from_json(j["flow"]);

    if (!output_override.empty()) {
        cfg.output = output_override;
    } else {
        if (!j.contains("output") || !j["output"].is_string()) throw Error(ErrorKind::Parse, "config needs an 'output' path");
        cfg.output = j["output"].get<std::string>();
        if (cfg.output.is_relative()) cfg.output = base / cfg.output;
    }
    auto flag = [&](const char* key) {
        if (!j.contains(key)) return false;
        if (!j[key].is_boolean()) throw Error(ErrorKind::Parse, std::string("'") + key + "' must be a boolean");
        return j[key].get<bool>();
    };
    cfg.emit_svg = flag("emit_svg");
    cfg.fit_scale = flag("fit_scale_profile");
    require_regular(cfg.curve, kMinStencilNodes);
    validate(cfg.flow, cfg.curve);
    return cfg;
}

int run_one_config(const fs::path& path, const std::string& output_override, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = load_run_config(path, output_override);
        const Trajectory traj = evolve(cfg.curve, cfg.flow);
        std::optional<ScaleProfileFit> fit;
        if (cfg.fit_scale) {
            try {
                fit = fit_scale_profile(traj);
            } catch (const Error& e) {
                err << "warning: " << e.what() << "\n";
            }
        }
        Json stored = cfg.raw;
        stored["flow"] = to_json(cfg.flow);
        write_run_directory(cfg.output, stored, traj, fit, cfg.emit_svg);
        out << cfg.output.string() << ": " << to_string(traj.termination) << " after " << traj.steps << " steps\n";
        return kOk;
    } catch (const Error& e) {
        err << path.string() << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_evolve(const std::vector<std::string>& configs, const std::string& output_override, unsigned jobs,
               std::ostream& out, std::ostream& err) {
    if (configs.size() > 1 && !output_override.empty()) {
        err << "--out applies to a single config only\n";
        return kInputError;
    }
    std::vector<int> codes(configs.size(), kOk);
    std::vector<std::ostringstream> outs(configs.size()), errs(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < configs.size(); k = next++) {
            codes[k] = run_one_config(configs[k], output_override, outs[k], errs[k]);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    int code = kOk;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        out << outs[k].str();
        err << errs[k].str();
        code = std::max(code, codes[k]);
    }
    return code;
}

int cmd_check(const std::string& path, double tol, std::ostream& out) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
    const DiscreteCurve curve = read_curve_csv(fs::path(path));
    const SolitonReport report = classify(curve, tol);
    out << to_json(report).dump(2) << "\n";
    return report.verdict == Verdict::None ? kNegativeVerdict : kOk;
}

int cmd_bounds(double l0, std::ostream& out) {
    const LifespanBounds b = time_bounds(l0);
    // Full precision so the printed ratios can be compared digit for digit.
    out << "{\n"
        << "  \"T_star\": " << format_double(b.T_star) << ",\n"
        << "  \"T_tilde\": " << format_double(b.T_tilde) << ",\n"
        << "  \"T_fig8\": " << format_double(b.T_fig8) << ",\n"
        << "  \"ratio_star\": " << format_double(b.ratio_star) << ",\n"
        << "  \"ratio_tilde\": " << format_double(b.ratio_tilde) << "\n"
        << "}\n";
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Curve diffusion flow of plane curves: generate, evolve, check, bounds", "curveflow"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Sample an analytic curve into a CSV file");
    generate->add_option("--kind", gen.kind, "circle | lemniscate | fresnel | line");
    generate->add_option("--spec", gen.spec_json, "Curve spec as a JSON object (overrides --kind)");
    generate->add_option("--nodes,-n", gen.nodes, "Number of nodes")->capture_default_str();
    generate->add_option("--out,-o", gen.out, "Output CSV path ('-' for stdout)");
    generate->add_option("--radius", gen.radius, "Circle radius");
    generate->add_option("--cx", gen.cx, "Circle centre x");
    generate->add_option("--cy", gen.cy, "Circle centre y");
    generate->add_option("--scale", gen.scale, "Lemniscate scale");
    generate->add_option("--c1", gen.c1, "Fresnel family: curvature at s = 0");
    generate->add_option("--c2", gen.c2, "Fresnel family: half the curvature slope");
    generate->add_option("--theta", gen.theta, "Fresnel family rotation");
    generate->add_option("--vx", gen.vx, "Fresnel family translation x");
    generate->add_option("--vy", gen.vy, "Fresnel family translation y");
    generate->add_option("--smin", gen.smin, "Open curves: start of arc-length interval");
    generate->add_option("--smax", gen.smax, "Open curves: end of arc-length interval");
    generate->add_option("--px", gen.px, "Line point x");
    generate->add_option("--py", gen.py, "Line point y");
    generate->add_option("--dx", gen.dx, "Line direction x");
    generate->add_option("--dy", gen.dy, "Line direction y");
    generate->add_option("--orientation", gen.orientation, "+1 or -1");

    std::vector<std::string> configs;
    std::string evolve_out;
    unsigned jobs = 1;
    auto* evolve_cmd = app.add_subcommand("evolve", "Run a flow described by a JSON config");
    evolve_cmd->add_option("config", configs, "Run config JSON file(s)")->required();
    evolve_cmd->add_option("--out", evolve_out, "Override the config's output directory");
    evolve_cmd->add_option("--jobs,-j", jobs, "Configs to evolve concurrently")->capture_default_str();

    std::string check_path;
    double tol = kDefaultClassifyTolerance;
    auto* check = app.add_subcommand("check", "Fit the soliton equations to a curve file");
    check->add_option("curve", check_path, "Curve CSV file")->required();
    check->add_option("--tol", tol, "Classification tolerance")->capture_default_str();

    double l0 = 0.0;
    auto* bounds = app.add_subcommand("bounds", "Lifespan bounds for an initial length");
    bounds->add_option("L0", l0, "Initial length")->required();

    // Let "bounds -1" reach validation instead of being read as an option.
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    if (args.size() >= 2 && args.back() == "bounds") {
        for (auto& a : args) {
            if (&a != &args.back() && a.size() > 1 && a[0] == '-' && (std::isdigit(static_cast<unsigned char>(a[1])) || a[1] == '.')) {
                a = " " + a;
            }
        }
    }

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*generate) return cmd_generate(gen, out);
        if (*evolve_cmd) return cmd_evolve(configs, evolve_out, jobs, out, err);
        if (*check) return cmd_check(check_path, tol, out);
        if (*bounds) return cmd_bounds(l0, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    }
    return kInputError;
}

}  // namespace curveflow::cli
