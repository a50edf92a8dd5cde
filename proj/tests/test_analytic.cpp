#include <doctest.h>

#include <random>

#include "curveflow/analytic.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/soliton.hpp"
#include "support.hpp"

using namespace curveflow;
using namespace testing;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("lemniscate_point closed forms") {
    const auto p0 = lemniscate_point(0.0);
    CHECK(norm(p0.point - Vec2{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(p0.kappa - 3.0) < 1e-14);
    CHECK(std::abs(p0.kappa_s) < 1e-14);
    CHECK(std::abs(p0.kappa_ss + 6.0) < 1e-14);
    CHECK(std::abs(p0.gamma_dot_nu + 1.0) < 1e-14);
    CHECK(norm(p0.normal - Vec2{-1.0, 0.0}) < 1e-15);

    const auto p1 = lemniscate_point(kPi / 2.0);
    CHECK(norm(p1.point) < 1e-15);
    CHECK(std::abs(p1.kappa) < 1e-15);
    CHECK(std::abs(p1.gamma_dot_nu) < 1e-15);

    const auto p2 = lemniscate_point(0.0, 2.0);
    CHECK(norm(p2.point - Vec2{2.0, 0.0}) < 1e-15);
    CHECK(std::abs(p2.kappa - 1.5) < 1e-14);
    CHECK(std::abs(p2.kappa_ss + 0.75) < 1e-14);
    CHECK(std::abs(p2.gamma_dot_nu + 2.0) < 1e-14);
    // K rescales to -6 / rho^4.
    CHECK(std::abs(p2.kappa_ss - (6.0 / 16.0) * p2.gamma_dot_nu) < 1e-14);
}

TEST_CASE("lemniscate_point satisfies the shrinker equation") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 10000; ++k) {
        const auto p = lemniscate_point(u(rng));
        CHECK(std::abs(p.kappa_ss - 6.0 * p.gamma_dot_nu) < 1e-12);
    }
}

TEST_CASE("lemniscate_point frame matches finite differences of the position") {
    for (double u : {0.3, 1.1, 2.5, 4.0}) {
        const double h = 1e-6;
        const Vec2 d = (lemniscate_point(u + h).point - lemniscate_point(u - h).point) / (2.0 * h);
        const auto p = lemniscate_point(u);
        CHECK(norm(p.tangent - d / norm(d)) < 1e-8);
        CHECK(norm(p.normal - perp(p.tangent)) < 1e-15);
    }
}

TEST_CASE("fresnel_point") {
    const FresnelSpec clothoid{0.0, kPi / 2.0, 0.0, {}, -2.0, 2.0};
    CHECK(norm(fresnel_point(0.0, clothoid)) == 0.0);
    CHECK(norm(fresnel_point(0.0, FresnelSpec{3.0, -1.0, 0.4, {}, 0.0, 1.0})) == 0.0);

    const FresnelSpec arc{1.0, 0.0, 0.0, {}, 0.0, kPi};
    CHECK(norm(fresnel_point(kPi, arc) - Vec2{0.0, 2.0}) < 1e-12);
    for (double s : {0.1, 0.7, 2.0, 5.0}) {
        CHECK(norm(fresnel_point(s, arc) - Vec2{std::sin(s), 1.0 - std::cos(s)}) < 1e-12);
    }
    // Rotation then translation.
    const FresnelSpec moved{1.0, 0.0, kPi / 2.0, {3.0, -1.0}, 0.0, 1.0};
    const Vec2 base{std::sin(1.0), 1.0 - std::cos(1.0)};
    CHECK(norm(fresnel_point(1.0, moved) - (Vec2{-base.y, base.x} + Vec2{3.0, -1.0})) < 1e-12);

    // Clothoid curvature at s = 1 from the sampled curve.
    const auto c = fresnel(0.0, kPi / 2.0, -2.0, 2.0, 513);
    const auto f = curve_fields(c);
    CHECK(std::abs(f.kappa[384] - kPi) < 1e-2);
}

TEST_CASE("Fresnel samples have curvature 2 c2 s + c1") {
    for (auto [c1, c2] : {std::pair{3.0, -1.0}, {0.0, 0.5}, {13.0, 2.0}}) {
        auto fit_error = [&](std::size_t n) {
            const auto c = fresnel(c1, c2, -1.0, 1.0, n);
            const auto fit = fit_stationary(c);
            return std::max(std::abs(fit.k1 - c1), std::abs(fit.k2 - 2.0 * c2));
        };
        const double e1 = fit_error(257), e2 = fit_error(513);
        CHECK(e2 < 1e-2);
        CHECK(order(e1, e2) > 1.5);
    }
}

TEST_CASE("Fresnel samples are arc-length parametrized") {
    const std::size_t n = 201;
    const auto c = fresnel(1.0, 3.0, -1.0, 1.0, n);
    const double ds = 2.0 / static_cast<double>(n - 1);
    for (double chord : c.chord_lengths()) CHECK(std::abs(chord - ds) < ds * ds * ds * 20.0);
}

TEST_CASE("elliptic_K") {
    CHECK(std::abs(elliptic_K(0.0) - kPi / 2.0) < 1e-12);
    const double quad_oracle = adaptive_simpson(
        [](double t) { return 1.0 / std::sqrt(1.0 + std::sin(t) * std::sin(t)); }, 0.0, kPi / 2.0, 1e-14);
    CHECK(std::abs(elliptic_K(-1.0) - quad_oracle) < 1e-10);
    CHECK(std::abs(elliptic_K(-1.0) - agm_elliptic_K(-1.0)) < 1e-12);
    CHECK(std::abs(elliptic_K(-1.0) - kEllipticKm1) < 1e-12);
    CHECK(std::abs(elliptic_K_agm(0.5) - elliptic_K_quadrature(0.5)) < 1e-10);
    CHECK(std::abs(elliptic_K(0.5) - 1.85407467730137191843) < 1e-12);
    CHECK(std::abs(elliptic_K(0.99) - agm_elliptic_K(0.99)) < 1e-12);
    CHECK(kind_of([] { elliptic_K(1.0); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { elliptic_K(2.0); }) == ErrorKind::DomainError);

    double prev = elliptic_K(-50.0);
    for (int k = 1; k <= 200; ++k) {
        const double k_m = elliptic_K(-50.0 + 50.99 * k / 200.0);
        CHECK(k_m > prev);
        prev = k_m;
    }
}

TEST_CASE("adaptive_simpson reports failure") {
    CHECK(kind_of([] { adaptive_simpson([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-14, 10); }) ==
          ErrorKind::QuadratureFailure);
}

TEST_CASE("sample_analytic") {
    AnalyticCurveSpec circle_spec;
    circle_spec.kind = CircleSpec{1.0, {}};
    const auto four = sample_analytic(circle_spec, 4);
    REQUIRE(four.size() == 4);
    const Vec2 cardinal[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int i = 0; i < 4; ++i) CHECK(norm(four[i] - cardinal[i]) < 1e-15);

    const auto lem = lemniscate(512);
    CHECK(std::abs(curve_fields(lem).kappa[0] - lemniscate_point(0.0).kappa) < 1e-3);

    AnalyticCurveSpec line;
    line.kind = LineSpec{{0, 0}, {1, 0}, 0.0, 1.0};
    const auto l = sample_analytic(line, 9);
    CHECK_FALSE(l.closed());
    for (std::size_t i = 0; i < 9; ++i) CHECK(norm(l[i] - Vec2{0.125 * static_cast<double>(i), 0.0}) < 1e-15);

    AnalyticCurveSpec reversed = circle_spec;
    reversed.orientation = -1;
    CHECK(signed_area(sample_analytic(reversed, 64)) < 0.0);

    CHECK(kind_of([&] { sample_analytic(circle_spec, 2); }) == ErrorKind::TooFewNodes);
    AnalyticCurveSpec bad;
    bad.kind = CircleSpec{-1.0, {}};
    CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidArgument);
    bad.kind = FresnelSpec{0.0, 1.0, 0.0, {}, 1.0, 1.0};
    CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidArgument);
    bad.kind = LemniscateSpec{1.0};
    bad.orientation = 0;
    CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("degenerate Fresnel members are circle arcs and lines") {
    const auto arc = fresnel(2.0, 0.0, 0.0, 1.0, 65);
    const auto f = curve_fields(arc);
    for (double k : f.kappa) CHECK(std::abs(k - 2.0) < 1e-3);
    const auto line = fresnel(0.0, 0.0, -1.0, 1.0, 33);
    for (std::size_t i = 0; i < line.size(); ++i) CHECK(std::abs(line[i].y) < 1e-15);
}
