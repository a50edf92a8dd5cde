#include "curveflow/banded.hpp"

#include <algorithm>
#include <cmath>

#include "curveflow/errors.hpp"

namespace curveflow {

BandMatrix::BandMatrix(std::size_t n, std::size_t bandwidth, bool cyclic)
    : n_(n), bw_(bandwidth), cyclic_(cyclic), data_(n * (2 * bandwidth + 1), 0.0) {
    if (cyclic && n < 2 * bandwidth + 1) {
        throw Error(ErrorKind::InvalidArgument, "cyclic band matrix too small for its bandwidth");
    }
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    const auto n = static_cast<long>(n_);
    const auto bw = static_cast<int>(bw_);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (int k = -bw; k <= bw; ++k) {
            long j = static_cast<long>(i) + k;
            if (cyclic_) {
                j = ((j % n) + n) % n;
            } else if (j < 0 || j >= n) {
                continue;
            }
            acc += at(i, k) * x[static_cast<std::size_t>(j)];
        }
        y[i] = acc;
    }
    return y;
}

namespace {

void dense_lu(std::vector<double>& a, std::vector<std::size_t>& piv, std::size_t m) {
    piv.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < m; ++i) {
            if (std::abs(a[i * m + k]) > std::abs(a[p * m + k])) p = i;
        }
        piv[k] = p;
        if (a[p * m + k] == 0.0) throw Error(ErrorKind::SolveFailure, "singular Woodbury capacitance matrix");
        if (p != k) {
            for (std::size_t j = 0; j < m; ++j) std::swap(a[k * m + j], a[p * m + j]);
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            a[i * m + k] /= a[k * m + k];
            for (std::size_t j = k + 1; j < m; ++j) a[i * m + j] -= a[i * m + k] * a[k * m + j];
        }
    }
}

void dense_lu_solve(const std::vector<double>& a, const std::vector<std::size_t>& piv, std::vector<double>& b) {
    const std::size_t m = piv.size();
    for (std::size_t k = 0; k < m; ++k) std::swap(b[k], b[piv[k]]);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = k + 1; i < m; ++i) b[i] -= a[i * m + k] * b[k];
    }
    for (std::size_t k = m; k-- > 0;) {
        for (std::size_t j = k + 1; j < m; ++j) b[k] -= a[k * m + j] * b[j];
        b[k] /= a[k * m + k];
    }
}

}  // namespace

BandedSolver::BandedSolver(const BandMatrix& matrix)
    : n_(matrix.size()), bw_(matrix.bandwidth()), lu_(matrix.size() * (2 * matrix.bandwidth() + 1), 0.0) {
    const std::size_t w = 2 * bw_ + 1;
    const auto bw = static_cast<int>(bw_);
    const auto n = static_cast<long>(n_);

    // Non-wrapping band B.
    for (std::size_t i = 0; i < n_; ++i) {
        for (int k = -bw; k <= bw; ++k) {
            const long j = static_cast<long>(i) + k;
            if (j >= 0 && j < n) lu_[i * w + static_cast<std::size_t>(k + bw)] = matrix.at(i, k);
        }
    }
    auto band = [&](std::size_t i, std::size_t j) -> double& {
        return lu_[i * w + static_cast<std::size_t>(static_cast<long>(j) - static_cast<long>(i) + bw)];
    };

    double scale = 0.0;
    for (double v : lu_) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < n_; ++k) {
        const double pivot = band(k, k);
        if (!(std::abs(pivot) > 1e-300) || std::abs(pivot) < 1e-14 * scale || !std::isfinite(pivot)) {
            throw Error(ErrorKind::SolveFailure, "vanishing pivot in banded LU");
        }
        const std::size_t row_end = std::min(n_ - 1, k + bw_);
        for (std::size_t i = k + 1; i <= row_end; ++i) {
            const double factor = band(i, k) / pivot;
            band(i, k) = factor;
            for (std::size_t j = k + 1; j <= std::min(n_ - 1, k + bw_); ++j) band(i, j) -= factor * band(k, j);
        }
    }

    if (!matrix.cyclic()) return;

    // Corner entries live in rows/columns {0..bw-1} and {n-bw..n-1}.
    for (std::size_t i = 0; i < bw_; ++i) border_.push_back(i);
    for (std::size_t i = n_ - bw_; i < n_; ++i) border_.push_back(i);
    const std::size_t m = border_.size();
    corner_.assign(m * m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = border_[r];
        for (int k = -bw; k <= bw; ++k) {
            const long j = static_cast<long>(i) + k;
            if (j >= 0 && j < n) continue;
            const auto jw = static_cast<std::size_t>(((j % n) + n) % n);
            const auto c = static_cast<std::size_t>(std::find(border_.begin(), border_.end(), jw) - border_.begin());
            corner_[r * m + c] += matrix.at(i, k);
        }
    }
    z_.resize(m);
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<double> e(n_, 0.0);
        e[border_[c]] = 1.0;
        z_[c] = solve_band(e);
    }
    // I + E P^T Z
    capacitance_lu_.assign(m * m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            double acc = r == c ? 1.0 : 0.0;
            for (std::size_t q = 0; q < m; ++q) acc += corner_[r * m + q] * z_[c][border_[q]];
            capacitance_lu_[r * m + c] = acc;
        }
    }
    dense_lu(capacitance_lu_, capacitance_piv_, m);
}

std::vector<double> BandedSolver::solve_band(std::span<const double> rhs) const {
    const std::size_t w = 2 * bw_ + 1;
    const auto bw = static_cast<long>(bw_);
    auto band = [&](std::size_t i, std::size_t j) {
        return lu_[i * w + static_cast<std::size_t>(static_cast<long>(j) - static_cast<long>(i) + bw)];
    };
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = i > bw_ ? i - bw_ : 0;
        for (std::size_t j = j0; j < i; ++j) x[i] -= band(i, j) * x[j];
    }
    for (std::size_t i = n_; i-- > 0;) {
        for (std::size_t j = i + 1; j <= std::min(n_ - 1, i + bw_); ++j) x[i] -= band(i, j) * x[j];
        x[i] /= band(i, i);
    }
    return x;
}

std::vector<double> BandedSolver::solve(std::span<const double> rhs) const {
    if (rhs.size() != n_) throw Error(ErrorKind::InvalidArgument, "right-hand side size mismatch");
    std::vector<double> x = solve_band(rhs);
    if (border_.empty()) return x;

    const std::size_t m = border_.size();
    std::vector<double> w(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t q = 0; q < m; ++q) w[r] += corner_[r * m + q] * x[border_[q]];
    }
    dense_lu_solve(capacitance_lu_, capacitance_piv_, w);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < n_; ++i) x[i] -= z_[c][i] * w[c];
    }
    return x;
}

}  // namespace curveflow
