#pragma once

#include "maxeig/dense.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace maxeig {

/// Tridiagonal generator-style matrix Q on the index set {0, ..., N}.
///
/// Row i holds a_i on the sub-diagonal, -(a_i + b_i + c_i) on the diagonal
/// and b_i on the super-diagonal, with a_0 := 0 and b_N := 0. The couplings
/// a_1..a_N and b_0..b_{N-1} are strictly positive (so Q is irreducible) and
/// the killing rates c_0..c_N are nonnegative, hence every row sum is -c_i.
///
/// Only the three sequences are stored; use to_dense() for small oracles.
class TridiagonalSystem {
public:
    /// Validates and stores the sequences. Expects sizes N, N, N+1.
    /// Throws std::invalid_argument on a size mismatch, a non-positive
    /// coupling, a negative killing rate or a non-finite value.
    TridiagonalSystem(std::vector<double> a, std::vector<double> b, std::vector<double> c);

    /// N, the largest index. The matrix order is N + 1.
    std::size_t n_max() const { return c_.size() - 1; }
    std::size_t size() const { return c_.size(); }

    /// a_i for 1 <= i <= N; 0 for i == 0.
    double lower(std::size_t i) const { return i == 0 ? 0.0 : a_[i - 1]; }
    /// b_i for 0 <= i < N; 0 for i == N.
    double upper(std::size_t i) const { return i < a_.size() ? b_[i] : 0.0; }
    double killing(std::size_t i) const { return c_[i]; }
    double diagonal(std::size_t i) const { return -(lower(i) + upper(i) + c_[i]); }

    /// Raw sequences: a_1..a_N, b_0..b_{N-1}, c_0..c_N.
    std::span<const double> a() const { return a_; }
    std::span<const double> b() const { return b_; }
    std::span<const double> c() const { return c_; }

    bool has_killing() const;
    DenseMatrix to_dense() const;

private:
    std::vector<double> a_;
    std::vector<double> b_;
    std::vector<double> c_;
};

TridiagonalSystem build_system(std::vector<double> a, std::vector<double> b, std::vector<double> c);

/// a_k = k^2, b_k = (k+1)^2, c_k = 0 for k < N and c_N = (N+1)^2.
TridiagonalSystem square_model(std::size_t n_max);

/// Q v, row by row.
std::vector<double> apply(const TridiagonalSystem& q, std::span<const double> v);

struct CanonicalForm {
    TridiagonalSystem system;
    double shift = 0.0;  // input = system + shift * I
};

/// Rewrites a tridiagonal matrix with positive off-diagonals as Q + shift I,
/// where shift is the largest row sum, so that Q has nonpositive row sums.
CanonicalForm shift_to_canonical(const DenseMatrix& m);

/// Solves a general tridiagonal system by Gaussian elimination with
/// partial pivoting. lower[i] couples row i+1 to column i, upper[i] couples
/// row i to column i+1. A pivot with magnitude <= eps * max|entry| raises
/// SingularSystemError.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

} // namespace maxeig
