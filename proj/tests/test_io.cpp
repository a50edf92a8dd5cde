#include <doctest.h>

#include <fstream>
#include <sstream>

#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"
#include "support.hpp"

using namespace curveflow;
using namespace testing;

namespace {

ErrorKind parse_kind(const std::string& text) {
    std::istringstream in(text);
    try {
        read_curve_csv(in);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("parse unexpectedly succeeded");
    return ErrorKind::Io;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("curve CSV round trip is bit exact") {
    for (const auto& c : {lemniscate(100), fresnel(0.3, 1.7, -1.0, 2.0, 33)}) {
        std::ostringstream out;
        write_curve_csv(out, c);
        const std::string text = out.str();
        CHECK(text.rfind(c.closed() ? "# closed=true\nx,y\n" : "# closed=false\nx,y\n", 0) == 0);
        std::istringstream in(text);
        const auto back = read_curve_csv(in);
        CHECK(back.closed() == c.closed());
        REQUIRE(back.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(back[i] == c[i]);
        std::ostringstream again;
        write_curve_csv(again, back);
        CHECK(again.str() == text);
    }
}

TEST_CASE("curve CSV parsing") {
    std::istringstream ok("# produced by hand\n# closed=false\n x , y \n0,0\n1,0.5\n\n2,1e-3\n");
    const auto c = read_curve_csv(ok);
    CHECK_FALSE(c.closed());
    CHECK(c.size() == 3);
    CHECK(c[2] == Vec2{2.0, 1e-3});

    CHECK(parse_kind("x,y\n0,0\n") == ErrorKind::Parse);
    CHECK(parse_kind("# closed=true\n0,0\n") == ErrorKind::Parse);
    CHECK(parse_kind("# closed=true\nx,y\n0,zero\n") == ErrorKind::Parse);
    CHECK(parse_kind("# closed=true\nx,y\n0,1,2\n") == ErrorKind::Parse);
    CHECK(parse_kind("# closed=maybe\nx,y\n0,0\n") == ErrorKind::Parse);
    try {
        read_curve_csv(std::filesystem::path("/nonexistent/curve.csv"));
        FAIL("expected Io");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("spec JSON round trip") {
    AnalyticCurveSpec a;
    a.kind = FresnelSpec{0.5, -1.0, 0.25, {1.0, 2.0}, -1.0, 3.0};
    a.orientation = -1;
    const auto b = analytic_spec_from_json(to_json(a));
    CHECK(to_json(b) == to_json(a));

    FlowSpec f;
    f.kind = FlowKind::Elastic;
    f.scheme = Scheme::Explicit;
    f.dt = 1e-7;
    f.t_end = 0.5;
    f.stop.length_below = 0.1;
    CHECK(to_json(flow_spec_from_json(to_json(f))) == to_json(f));

    const auto parsed = flow_spec_from_json(Json::parse(R"({"t_end": 1, "dt": "auto"})"));
    CHECK_FALSE(parsed.dt.has_value());
    CHECK(parsed.scheme == Scheme::SemiImplicit);

    for (const char* bad : {R"({"kind": "spiral"})", R"({"kind": "circle", "radius": "big"})",
                            R"({"kind": "fresnel", "c1": 1})", R"([1, 2])"}) {
        try {
            analytic_spec_from_json(Json::parse(bad));
            FAIL("expected a parse error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
        }
    }
    CHECK_THROWS_AS(flow_spec_from_json(Json::parse(R"({"scheme": "rk4", "t_end": 1})")), Error);
    CHECK_THROWS_AS(flow_spec_from_json(Json::parse(R"({"dt": 0.1})")), Error);
}

TEST_CASE("soliton report JSON") {
    const auto j = to_json(classify(circle(1.0, 128)));
    for (const char* key : {"stationary", "shrinker", "translator", "rotator", "verdict"}) CHECK(j.contains(key));
    CHECK(j["verdict"] == "stationary");
    CHECK(j["rotator"]["S"] == "indeterminate");
    // Residuals are rounded to 6 significant digits.
    const double r = j["shrinker"]["residual"].get<double>();
    std::ostringstream os;
    os.precision(5);
    os << std::scientific << r;
    CHECK(std::stod(os.str()) == r);
}

TEST_CASE("monitors CSV leaves undefined values blank") {
    MonitorSeries s;
    s.samples.push_back({0.0, 2.0, 0.0, std::nullopt, 1.0, 0.0});
    std::ostringstream out;
    write_monitors_csv(out, s);
    CHECK(out.str() == "t,L,A,I,Q,diss\n0,2,0,,0,1\n");
}

TEST_CASE("SVG output") {
    const std::string svg = curve_svg(circle(1.0, 16));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=\"-1.1000000000000001 -1.1000000000000001 2.2000000000000002 2.2000000000000002\"") !=
          std::string::npos);
    CHECK(svg.find("<path") == svg.rfind("<path"));
    CHECK(svg.find("fill=\"none\"") != std::string::npos);
}

TEST_CASE("run directory layout") {
    const auto dir = scratch_dir("io_run");
    FlowSpec spec;
    spec.t_end = 0.1;
    spec.snapshot_every = 2;
    const auto traj = evolve(circle(1.0, 32), spec);
    write_run_directory(dir, to_json(spec), traj, fit_scale_profile(traj), true);
    CHECK(std::filesystem::exists(dir / "config.json"));
    CHECK(std::filesystem::exists(dir / "monitors.csv"));
    CHECK(std::filesystem::exists(dir / "snapshots" / "t_0.csv"));
    CHECK(std::filesystem::exists(dir / "snapshots" / "t_0.svg"));
    const auto result = Json::parse(slurp(dir / "result.json"));
    CHECK(result["termination"] == "TimeReached");
    CHECK(result.contains("fitted_K"));
    CHECK(slurp(dir / "monitors.csv").rfind("t,L,A,I,Q,diss\n", 0) == 0);
    std::filesystem::remove_all(dir);
}
