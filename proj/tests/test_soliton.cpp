#include <doctest.h>

#include <random>

#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"
#include "curveflow/soliton.hpp"
#include "support.hpp"

using namespace curveflow;
using namespace testing;

namespace {

double weighted_sum(const CurveFields& f, auto&& term) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += term(i) * f.dl[i];
    return acc;
}

}  // namespace

TEST_CASE("fit_stationary") {
    const auto circ = fit_stationary(circle(1.0, 256));
    CHECK(std::abs(circ.k1 - 1.0) < 1e-3);
    CHECK(std::abs(circ.k2) < 1e-10);
    CHECK(circ.residual < 1e-4);

    const auto clothoid = fit_stationary(fresnel(0.0, kPi / 2.0, -2.0, 2.0, 512));
    CHECK(std::abs(clothoid.k2 - kPi) < 1e-2);
    CHECK(std::abs(clothoid.k1) < 1e-2);
    CHECK(clothoid.residual < 1e-3);

    // Oracles: best constant (closed) and best line (open) through the
    // sampled curvature against arc length, in closed form.
    auto oracle = [](const CurveFields& f, bool with_slope) {
        const double len = weighted_sum(f, [](std::size_t) { return 1.0; });
        const double sm = weighted_sum(f, [&](std::size_t i) { return f.s[i]; }) / len;
        const double km = weighted_sum(f, [&](std::size_t i) { return f.kappa[i]; }) / len;
        const double sk = weighted_sum(f, [&](std::size_t i) { return (f.s[i] - sm) * (f.kappa[i] - km); });
        const double ss = weighted_sum(f, [&](std::size_t i) { return (f.s[i] - sm) * (f.s[i] - sm); });
        const double slope = with_slope ? sk / ss : 0.0;
        const double defect = weighted_sum(f, [&](std::size_t i) {
            const double r = f.kappa[i] - km - slope * (f.s[i] - sm);
            return r * r;
        });
        const double scale = weighted_sum(f, [&](std::size_t i) { return f.kappa[i] * f.kappa[i]; });
        return std::sqrt(defect / scale);
    };
    const auto closed = lemniscate(512);
    const auto lem = fit_stationary(closed);
    CHECK(lem.k2 == 0.0);
    CHECK(oracle(curve_fields(closed), false) > 0.1);
    CHECK(std::abs(lem.residual - oracle(curve_fields(closed), false)) < 1e-10);

    std::vector<Vec2> arc;
    for (std::size_t i = 0; i < 200; ++i) arc.push_back(closed[i]);
    const DiscreteCurve open(arc, false);
    const auto piece = fit_stationary(open);
    CHECK(oracle(curve_fields(open), true) > 0.01);
    CHECK(std::abs(piece.residual - oracle(curve_fields(open), true)) < 1e-10);
}

TEST_CASE("fit_shrinker") {
    const auto lem = fit_shrinker(lemniscate(512));
    CHECK(std::abs(lem.K + 6.0) < 1e-2);
    CHECK(lem.residual < 1e-3);
    CHECK(norm(lem.center) < 1e-10);

    const auto circ = fit_shrinker(circle(1.0, 256));
    CHECK(std::abs(circ.K) < 1e-6);
    CHECK(circ.residual < 1e-6);

    CHECK(std::abs(fit_shrinker(lemniscate(512, 2.0)).K + 0.375) < 1e-3);

    // Without a centre column the estimator is -<k_ss, g> / <g, g>; it
    // agrees with the fitted K when the curve is centred at the origin.
    const auto f = curve_fields(lemniscate(512));
    const auto c = lemniscate(512);
    const double num = weighted_sum(f, [&](std::size_t i) { return f.kappa_ss[i] * dot(c[i], f.normal[i]); });
    const double den = weighted_sum(f, [&](std::size_t i) { return std::pow(dot(c[i], f.normal[i]), 2); });
    CHECK(std::abs(-num / den - lem.K) < 1e-8);

    AnalyticCurveSpec line;
    line.kind = LineSpec{{-1, -1}, {1, 1}, 0.0, 3.0};
    try {
        fit_shrinker(sample_analytic(line, 33));
        FAIL("expected DegenerateGeometry");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateGeometry);
    }
}

TEST_CASE("fit_translator") {
    for (Vec2 center : {Vec2{0, 0}, Vec2{3, -2}}) {
        const auto fit = fit_translator(circle(1.0, 256, center));
        CHECK(norm(fit.V) < 1e-6);
        CHECK(fit.residual < 1e-6);
    }
    const auto clothoid = fit_translator(fresnel(0.0, kPi / 2.0, -2.0, 2.0, 512));
    CHECK(norm(clothoid.V) < 1e-3);

    const auto lem = fit_translator(lemniscate(512));
    CHECK(norm(lem.V) < 1e-6);
    CHECK(lem.residual > 0.1);

    AnalyticCurveSpec line;
    line.kind = LineSpec{{0, 1}, {1, 0}, 0.0, 1.0};
    const auto flat = fit_translator(sample_analytic(line, 17));
    CHECK(flat.degenerate);
    CHECK(std::abs(flat.V.x) < 1e-15);
}

TEST_CASE("fit_rotator") {
    const auto origin = fit_rotator(circle(1.0, 256));
    CHECK_FALSE(origin.S.has_value());
    CHECK(origin.residual < 1e-6);

    const auto shifted = fit_rotator(circle(1.0, 256, {1.0, 0.0}));
    REQUIRE(shifted.S.has_value());
    CHECK(std::abs(*shifted.S) < 1e-6);
    CHECK(shifted.residual < 1e-6);

    CHECK(fit_rotator(lemniscate(512)).residual > 0.1);
}

TEST_CASE("classify") {
    const auto lem = classify(lemniscate(512));
    CHECK(lem.verdict == Verdict::Shrinker);
    CHECK(std::abs(lem.shrinker.fit->K + 6.0) < 1e-2);
    CHECK(classify(circle(1.0, 256)).verdict == Verdict::Stationary);
    CHECK(classify(fresnel(0.0, kPi / 2.0, -2.0, 2.0, 512)).verdict == Verdict::Stationary);

    const auto perturbed = classify(read_curve_csv(fixture("perturbed_ellipse.csv")));
    CHECK(perturbed.verdict == Verdict::None);
    CHECK(perturbed.stationary.fit->residual >= kDefaultClassifyTolerance);
    CHECK(perturbed.shrinker.fit->residual >= kDefaultClassifyTolerance);
    CHECK(perturbed.translator.fit->residual >= kDefaultClassifyTolerance);
    CHECK(perturbed.rotator.fit->residual >= kDefaultClassifyTolerance);

    // Calibration: N = 256 solitons pass at the default tolerance.
    CHECK(classify(read_curve_csv(fixture("lemniscate_256.csv"))).verdict == Verdict::Shrinker);
    CHECK(classify(circle(1.0, 256)).verdict == Verdict::Stationary);

    // A straight line has no shrinker fit; classification still succeeds.
    AnalyticCurveSpec line;
    line.kind = LineSpec{{0, 0}, {1, 2}, -1.0, 1.0};
    const auto flat = classify(sample_analytic(line, 33));
    CHECK_FALSE(flat.shrinker.fit.has_value());
    CHECK_FALSE(flat.shrinker.unavailable.empty());
}

TEST_CASE("orientation reversal changes nothing observable") {
    for (const auto& c : {lemniscate(512), ellipse(1.0, 0.5, 256, {0.3, 0.1}),
                          read_curve_csv(fixture("perturbed_ellipse.csv"))}) {
        const auto a = classify(c), b = classify(c.reversed());
        CHECK(a.verdict == b.verdict);
        CHECK(std::abs(a.shrinker.fit->K - b.shrinker.fit->K) < 1e-10 * (1.0 + std::abs(a.shrinker.fit->K)));
        CHECK(std::abs(a.shrinker.fit->residual - b.shrinker.fit->residual) < 1e-10);
        CHECK(std::abs(a.translator.fit->residual - b.translator.fit->residual) < 1e-10);
        CHECK(std::abs(a.rotator.fit->residual - b.rotator.fit->residual) < 1e-10);
        CHECK(std::abs(a.stationary.fit->residual - b.stationary.fit->residual) < 1e-10);
        if (a.rotator.fit->S) CHECK(std::abs(*a.rotator.fit->S - *b.rotator.fit->S) < 1e-10);
    }
}

TEST_CASE("rigid motions and scaling") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> angle(-kPi, kPi), shift(-3.0, 3.0), scale(0.5, 2.0);
    const auto base = ellipse(1.0, 0.5, 256, {0.2, -0.1});
    const auto ref = classify(base);
    for (int k = 0; k < 10; ++k) {
        const double th = angle(rng);
        const auto moved = classify(transformed(base, th, {shift(rng), shift(rng)}));
        CHECK(std::abs(moved.shrinker.fit->K - ref.shrinker.fit->K) < 1e-10 * std::abs(ref.shrinker.fit->K));
        CHECK(std::abs(moved.shrinker.fit->residual - ref.shrinker.fit->residual) < 1e-10);
        CHECK(std::abs(moved.translator.fit->residual - ref.translator.fit->residual) < 1e-10);
        CHECK(norm(moved.translator.fit->V - rotate(ref.translator.fit->V, th)) < 1e-10);
        CHECK(std::abs(moved.stationary.fit->residual - ref.stationary.fit->residual) < 1e-10);

        const double rho = scale(rng);
        const auto scaled = fit_shrinker(transformed(base, 0.0, {}, rho));
        CHECK(std::abs(scaled.K * std::pow(rho, 4) - ref.shrinker.fit->K) < 1e-8 * std::abs(ref.shrinker.fit->K));
    }
}

TEST_CASE("closed-curve integral identities") {
    for (const auto& c : {circle(1.0, 256), ellipse(1.0, 0.5, 256), lemniscate(256)}) {
        const auto f = curve_fields(c);
        const double diss = weighted_sum(f, [&](std::size_t i) { return f.kappa_s[i] * f.kappa_s[i]; });
        const double cross_term = weighted_sum(f, [&](std::size_t i) { return f.kappa[i] * f.kappa_ss[i]; });
        const double scale = std::max(diss, 1e-12);
        CHECK(std::abs(diss + cross_term) <= 0.05 * scale + 1e-9);
        // <V, kappa nu> integrates to zero for any fixed V.
        for (Vec2 v : {Vec2{1, 0}, Vec2{0.3, -2.0}}) {
            const double flux = weighted_sum(f, [&](std::size_t i) { return f.kappa[i] * dot(v, f.normal[i]); });
            CHECK(std::abs(flux) < 1e-6 * norm(v) * length(c));
        }
    }
}
