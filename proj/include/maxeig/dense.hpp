#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace maxeig {

/// Square row-major matrix. Small orders only: hosts the 2x2 input-output
/// example and brute-force oracles in tests.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t order, double fill = 0.0);

    /// Throws std::invalid_argument on ragged rows, empty input or
    /// non-finite entries.
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static DenseMatrix identity(std::size_t order);

    std::size_t order() const { return order_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
    std::span<const double> entries() const { return entries_; }

    DenseMatrix transpose() const;
    std::vector<double> multiply(std::span<const double> x) const;       // A x
    std::vector<double> left_multiply(std::span<const double> x) const;  // x A

private:
    std::size_t order_ = 0;
    std::vector<double> entries_;
};

/// Solves A x = rhs by Gaussian elimination with partial pivoting.
/// Throws SingularSystemError when a pivot vanishes relative to the
/// matrix scale.
std::vector<double> dense_solve(const DenseMatrix& a, std::span<const double> rhs);

} // namespace maxeig
