#pragma once

#include "maxeig/contop.hpp"
#include "maxeig/dense.hpp"
#include "maxeig/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace maxeig::testing {

/// Positive couplings spread over a few decades; killing on a random subset
/// of rows with at least one killed row so that lambda0 > 0.
inline TridiagonalSystem random_system(std::mt19937& rng, std::size_t n_max)
{
    std::uniform_real_distribution<double> log_rate(-1.5, 1.5);
    std::bernoulli_distribution killed(0.3);
    std::vector<double> a(n_max), b(n_max), c(n_max + 1, 0.0);
    for (std::size_t i = 0; i < n_max; ++i) {
        a[i] = std::pow(10.0, log_rate(rng));
        b[i] = std::pow(10.0, log_rate(rng));
    }
    bool any = false;
    for (double& ci : c) {
        if (killed(rng)) {
            ci = std::pow(10.0, log_rate(rng));
            any = true;
        }
    }
    if (!any) {
        std::uniform_int_distribution<std::size_t> pick(0, n_max);
        c[pick(rng)] = std::pow(10.0, log_rate(rng));
    }
    return TridiagonalSystem(a, b, c);
}

/// Smooth operator on (0, 1): a = exp(smooth bump), b = random drift.
inline Operator1D random_operator(std::mt19937& rng)
{
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    const double a1 = coef(rng), a2 = coef(rng), b0 = coef(rng), b1 = 2 * coef(rng), b2 = coef(rng);
    Operator1D op;
    op.a = [a1, a2](double x) { return std::exp(0.5 * a1 * std::sin(3 * x) + 0.3 * a2 * x); };
    op.b = [b0, b1, b2](double x) { return b0 + b1 * x + b2 * std::cos(5 * x); };
    op.left = 0.0;
    op.right = 1.0;
    op.theta = 0.3;
    return op;
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// ascending. Independent of the bisection code under test.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix m)
{
    const std::size_t n = m.order();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += m(i, j) * m(i, j);
            }
        }
        if (off < 1e-300) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (m(p, q) == 0.0) {
                    continue;
                }
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev[i] = m(i, i);
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// -Q symmetrized by D^{1/2} (-Q) D^{-1/2} with D = diag(mu), as a dense matrix.
inline DenseMatrix dense_symmetric_negative(const TridiagonalSystem& q)
{
    const std::size_t n = q.size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = -q.diagonal(i);
        if (i + 1 < n) {
            const double off = -std::sqrt(q.upper(i) * q.lower(i + 1));
            m(i, i + 1) = off;
            m(i + 1, i) = off;
        }
    }
    return m;
}

inline double rel_diff(double x, double y)
{
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
}

} // namespace maxeig::testing
