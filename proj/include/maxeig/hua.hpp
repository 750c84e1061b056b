#pragma once

#include "maxeig/dense.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace maxeig {

/// Input-output economy: structure matrix A and the initial row vector of
/// product quantities. Output in year n is x_n = x_0 A^{-n}.
struct Economy {
    DenseMatrix structure;
    std::vector<double> input;
};

struct CollapseReport {
    std::optional<std::size_t> collapse_year;
    std::optional<std::size_t> offending_component;
    std::vector<std::vector<double>> trajectory;  // x_0, x_1, ... up to collapse or horizon
};

constexpr std::size_t kDefaultHorizon = 1000;

/// Year-by-year x_n A = x_{n-1}, solved against A^T. The first year with a
/// component <= 0 is the collapse year.
/// Throws std::invalid_argument on a malformed economy and
/// SingularSystemError if A is singular.
CollapseReport collapse_time(const Economy& e, std::size_t horizon = kDefaultHorizon);

struct PerronPair {
    double rho = 0.0;
    std::vector<double> left;   // u A = rho u
    std::vector<double> right;  // A g = rho g
};

/// Perron root and positive left/right eigenvectors of a nonnegative
/// irreducible matrix, by power iteration on A + I. Both vectors are scaled
/// so their last component equals last_component.
/// Throws std::invalid_argument for negative entries or a reducible matrix.
PerronPair dense_max_eigenpair(const DenseMatrix& a, double last_component = 1.0);

} // namespace maxeig
