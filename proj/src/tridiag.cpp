#include "maxeig/tridiag.hpp"

#include "maxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxeig {

namespace {

void require_finite(std::span<const double> v, const char* name)
{
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string("build_system: non-finite entry in ") + name);
        }
    }
}

} // namespace

TridiagonalSystem::TridiagonalSystem(std::vector<double> a, std::vector<double> b,
                                     std::vector<double> c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
{
    if (c_.empty()) {
        throw std::invalid_argument("build_system: c must have N+1 >= 1 entries");
    }
    const std::size_t n = c_.size() - 1;
    if (a_.size() != n || b_.size() != n) {
        throw std::invalid_argument("build_system: expected sizes N, N, N+1 for a, b, c");
    }
    require_finite(a_, "a");
    require_finite(b_, "b");
    require_finite(c_, "c");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(a_[i] > 0.0)) {
            throw std::invalid_argument("build_system: a_" + std::to_string(i + 1) + " must be positive");
        }
        if (!(b_[i] > 0.0)) {
            throw std::invalid_argument("build_system: b_" + std::to_string(i) + " must be positive");
        }
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (c_[i] < 0.0) {
            throw std::invalid_argument("build_system: c_" + std::to_string(i) + " must be nonnegative");
        }
    }
}

bool TridiagonalSystem::has_killing() const
{
    return std::any_of(c_.begin(), c_.end(), [](double x) { return x > 0.0; });
}

DenseMatrix TridiagonalSystem::to_dense() const
{
    const std::size_t n = size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = diagonal(i);
        if (i > 0) {
            m(i, i - 1) = lower(i);
        }
        if (i + 1 < n) {
            m(i, i + 1) = upper(i);
        }
    }
    return m;
}

TridiagonalSystem build_system(std::vector<double> a, std::vector<double> b, std::vector<double> c)
{
    return TridiagonalSystem(std::move(a), std::move(b), std::move(c));
}

TridiagonalSystem square_model(std::size_t n_max)
{
    if (n_max < 1) {
        throw std::invalid_argument("square_model: n_max must be at least 1");
    }
    std::vector<double> a(n_max), b(n_max), c(n_max + 1, 0.0);
    for (std::size_t k = 1; k <= n_max; ++k) {
        a[k - 1] = static_cast<double>(k * k);
    }
    for (std::size_t k = 0; k < n_max; ++k) {
        b[k] = static_cast<double>((k + 1) * (k + 1));
    }
    c[n_max] = static_cast<double>((n_max + 1) * (n_max + 1));
    return TridiagonalSystem(std::move(a), std::move(b), std::move(c));
}

std::vector<double> apply(const TridiagonalSystem& q, std::span<const double> v)
{
    const std::size_t n = q.size();
    if (v.size() != n) {
        throw std::invalid_argument("apply: vector length must be N+1");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = q.diagonal(i) * v[i];
        if (i > 0) {
            s += q.lower(i) * v[i - 1];
        }
        if (i + 1 < n) {
            s += q.upper(i) * v[i + 1];
        }
        out[i] = s;
    }
    return out;
}

CanonicalForm shift_to_canonical(const DenseMatrix& m)
{
    const std::size_t n = m.order();
    if (n == 0) {
        throw std::invalid_argument("shift_to_canonical: empty matrix");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool band = (i == j) || (i + 1 == j) || (j + 1 == i);
            if (!band && m(i, j) != 0.0) {
                throw std::invalid_argument("shift_to_canonical: matrix is not tridiagonal");
            }
            if (i != j && band) {
                if (m(i, j) < 0.0) {
                    throw std::invalid_argument("shift_to_canonical: negative off-diagonal entry");
                }
                if (m(i, j) == 0.0) {
                    throw std::invalid_argument("shift_to_canonical: zero coupling, matrix is reducible");
                }
            }
        }
    }

    std::vector<double> row_sum(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = m(i, i);
        if (i > 0) {
            s += m(i, i - 1);
        }
        if (i + 1 < n) {
            s += m(i, i + 1);
        }
        row_sum[i] = s;
    }
    const double shift = *std::max_element(row_sum.begin(), row_sum.end());

    std::vector<double> a(n - 1), b(n - 1), c(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a[i] = m(i + 1, i);
        b[i] = m(i, i + 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = shift - row_sum[i];
    }
    return CanonicalForm{TridiagonalSystem(std::move(a), std::move(b), std::move(c)), shift};
}

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs)
{
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() + 1 != n || upper.size() + 1 != n || rhs.size() != n) {
        throw std::invalid_argument("solve_tridiagonal: size mismatch");
    }

    double scale = 0.0;
    for (double v : diag) {
        scale = std::max(scale, std::abs(v));
    }
    for (double v : lower) {
        scale = std::max(scale, std::abs(v));
    }
    for (double v : upper) {
        scale = std::max(scale, std::abs(v));
    }
    const double tiny = std::numeric_limits<double>::epsilon() * scale;

    // Row k of U has entries d[k], u1[k], u2[k] in columns k, k+1, k+2.
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> u1(n, 0.0), u2(n, 0.0);
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        u1[k] = upper[k];
    }

    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Candidate rows: k (entries d, u1, u2) and k+1 (lower, diag, upper).
        double sub = lower[k];
        double next_d = d[k + 1];
        double next_u1 = k + 2 < n ? u1[k + 1] : 0.0;
        if (std::abs(sub) > std::abs(d[k])) {
            std::swap(d[k], sub);
            std::swap(u1[k], next_d);
            std::swap(u2[k], next_u1);
            std::swap(x[k], x[k + 1]);
        }
        if (std::abs(d[k]) <= tiny) {
            throw SingularSystemError("solve_tridiagonal: numerically singular pivot");
        }
        const double f = sub / d[k];
        d[k + 1] = next_d - f * u1[k];
        if (k + 2 < n) {
            u1[k + 1] = next_u1 - f * u2[k];
        }
        x[k + 1] -= f * x[k];
    }
    if (std::abs(d[n - 1]) <= tiny) {
        throw SingularSystemError("solve_tridiagonal: numerically singular pivot");
    }

    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        if (k + 1 < n) {
            s -= u1[k] * x[k + 1];
        }
        if (k + 2 < n) {
            s -= u2[k] * x[k + 2];
        }
        x[k] = s / d[k];
    }
    return x;
}

} // namespace maxeig
