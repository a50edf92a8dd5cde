#include <doctest.h>

#include <random>

#include "curveflow/banded.hpp"
#include "curveflow/errors.hpp"

using namespace curveflow;

namespace {

// Dense copy for reference products.
std::vector<double> dense(const BandMatrix& a) {
    const std::size_t n = a.size();
    const int bw = static_cast<int>(a.bandwidth());
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = -bw; k <= bw; ++k) {
            long j = static_cast<long>(i) + k;
            if (a.cyclic()) j = ((j % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
            else if (j < 0 || j >= static_cast<long>(n)) continue;
            d[i * n + static_cast<std::size_t>(j)] += a.at(i, k);
        }
    }
    return d;
}

double residual(const BandMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
    const auto d = dense(a);
    const std::size_t n = a.size();
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += d[i * n + j] * x[j];
        r = std::max(r, std::abs(acc - b[i]));
    }
    return r;
}

BandMatrix beam_system(std::size_t n, double a, bool cyclic) {
    BandMatrix m(n, 2, cyclic);
    constexpr double row[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = -2; k <= 2; ++k) m.at(i, k) = a * row[k + 2] + (k == 0 ? 1.0 : 0.0);
    }
    return m;
}

}  // namespace

TEST_CASE("cyclic pentadiagonal solve") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (double a : {0.01, 1.0, 100.0, 1e4}) {
        for (std::size_t n : {5, 16, 257}) {
            const auto m = beam_system(n, a, true);
            std::vector<double> b(n);
            for (auto& v : b) v = g(rng);
            const auto x = BandedSolver(m).solve(b);
            CHECK(residual(m, x, b) < 1e-10 * (1.0 + 16.0 * a));
        }
    }
}

TEST_CASE("random diagonally dominant band systems") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (bool cyclic : {false, true}) {
        for (std::size_t bw : {1, 2, 3}) {
            const std::size_t n = 40;
            BandMatrix m(n, bw, cyclic);
            for (std::size_t i = 0; i < n; ++i) {
                for (int k = -static_cast<int>(bw); k <= static_cast<int>(bw); ++k) m.at(i, k) = u(rng);
                m.at(i, 0) = 2.0 * static_cast<double>(bw) + 1.0 + std::abs(u(rng));
            }
            std::vector<double> b(n);
            for (auto& v : b) v = u(rng);
            const auto x = BandedSolver(m).solve(b);
            CHECK(residual(m, x, b) < 1e-12);
            // multiply agrees with the dense product
            const auto mx = m.multiply(x);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(mx[i] - b[i]) < 1e-12);
        }
    }
}

TEST_CASE("singular systems fail loudly") {
    BandMatrix m(10, 1, false);
    for (std::size_t i = 0; i < 10; ++i) m.at(i, 0) = i == 4 ? 0.0 : 1.0;
    try {
        BandedSolver s(m);
        FAIL("expected SolveFailure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SolveFailure);
    }
}

TEST_CASE("solver is reusable and stateless between calls") {
    const auto m = beam_system(64, 3.0, true);
    const BandedSolver s(m);
    std::vector<double> b1(64, 1.0), b2(64);
    for (std::size_t i = 0; i < 64; ++i) b2[i] = std::sin(0.1 * static_cast<double>(i));
    const auto x1 = s.solve(b1);
    s.solve(b2);
    const auto x1_again = s.solve(b1);
    CHECK(x1 == x1_again);
}
