#include "maxeig/dense.hpp"

#include "maxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace maxeig {

DenseMatrix::DenseMatrix(std::size_t order, double fill)
    : order_(order), entries_(order * order, fill)
{
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty()) {
        throw std::invalid_argument("DenseMatrix: no rows");
    }
    DenseMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw std::invalid_argument("DenseMatrix: matrix is not square");
        }
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (!std::isfinite(rows[i][j])) {
                throw std::invalid_argument("DenseMatrix: non-finite entry");
            }
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows)
{
    std::vector<std::vector<double>> copy;
    for (const auto& r : rows) {
        copy.emplace_back(r);
    }
    return from_rows(copy);
}

DenseMatrix DenseMatrix::identity(std::size_t order)
{
    DenseMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::transpose() const
{
    DenseMatrix t(order_);
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = 0; j < order_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const
{
    if (x.size() != order_) {
        throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
    }
    std::vector<double> y(order_, 0.0);
    for (std::size_t i = 0; i < order_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < order_; ++j) {
            s += (*this)(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

std::vector<double> DenseMatrix::left_multiply(std::span<const double> x) const
{
    if (x.size() != order_) {
        throw std::invalid_argument("DenseMatrix::left_multiply: size mismatch");
    }
    std::vector<double> y(order_, 0.0);
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = 0; j < order_; ++j) {
            y[j] += x[i] * (*this)(i, j);
        }
    }
    return y;
}

std::vector<double> dense_solve(const DenseMatrix& a, std::span<const double> rhs)
{
    const std::size_t n = a.order();
    if (rhs.size() != n) {
        throw std::invalid_argument("dense_solve: size mismatch");
    }
    DenseMatrix lu = a;
    std::vector<double> x(rhs.begin(), rhs.end());

    double scale = 0.0;
    for (double v : a.entries()) {
        scale = std::max(scale, std::abs(v));
    }
    const double tiny = std::numeric_limits<double>::epsilon() * scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) {
                p = i;
            }
        }
        if (std::abs(lu(p, k)) <= tiny) {
            throw SingularSystemError("dense_solve: matrix is singular");
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(k, j), lu(p, j));
            }
            std::swap(x[k], x[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            for (std::size_t j = k; j < n; ++j) {
                lu(i, j) -= f * lu(k, j);
            }
            x[i] -= f * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= lu(k, j) * x[j];
        }
        x[k] = s / lu(k, k);
    }
    return x;
}

} // namespace maxeig
