#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace curveflow {

/// Square matrix with `bandwidth` sub- and super-diagonals, stored row-wise
/// as 2*bandwidth+1 entries. When `cyclic` is set the band wraps around the
/// corners (entry (i, i+k) lives at column (i+k) mod n).
class BandMatrix {
public:
    BandMatrix(std::size_t n, std::size_t bandwidth, bool cyclic);

    std::size_t size() const { return n_; }
    std::size_t bandwidth() const { return bw_; }
    bool cyclic() const { return cyclic_; }

    /// Entry at row i, diagonal offset k in [-bandwidth, bandwidth].
    double& at(std::size_t i, int k) { return data_[i * width() + static_cast<std::size_t>(k + static_cast<int>(bw_))]; }
    double at(std::size_t i, int k) const { return data_[i * width() + static_cast<std::size_t>(k + static_cast<int>(bw_))]; }

    std::vector<double> multiply(std::span<const double> x) const;

private:
    std::size_t width() const { return 2 * bw_ + 1; }

    std::size_t n_;
    std::size_t bw_;
    bool cyclic_;
    std::vector<double> data_;
};

/// Direct solver for banded and cyclic banded systems. Plain banded systems
/// use LU without pivoting; cyclic ones factor the non-wrapping band and
/// absorb the corner blocks with a Woodbury correction. Holds only the
/// factorization of the matrix it was built from.
class BandedSolver {
public:
    /// Throws SolveFailure on a vanishing pivot or a singular correction.
    explicit BandedSolver(const BandMatrix& matrix);

    std::vector<double> solve(std::span<const double> rhs) const;

private:
    std::vector<double> solve_band(std::span<const double> rhs) const;

    std::size_t n_;
    std::size_t bw_;
    std::vector<double> lu_;  // band LU, row-wise, width 2*bw+1

    // Woodbury data for the cyclic case.
    std::vector<std::size_t> border_;      // indices carrying corner entries
    std::vector<double> corner_;           // m x m block of A - B on border_
    std::vector<std::vector<double>> z_;   // B^{-1} e_j for j in border_
    std::vector<double> capacitance_lu_;   // LU of I + E P^T Z, m x m
    std::vector<std::size_t> capacitance_piv_;
};

}  // namespace curveflow
