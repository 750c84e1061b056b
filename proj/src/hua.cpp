#include "maxeig/hua.hpp"

#include "maxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxeig {

namespace {

bool strongly_connected(const DenseMatrix& a)
{
    const std::size_t n = a.order();
    auto reaches_all = [&](bool transposed) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                const double w = transposed ? a(j, i) : a(i, j);
                if (w > 0.0 && !seen[j]) {
                    seen[j] = true;
                    stack.push_back(j);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
    };
    return reaches_all(false) && reaches_all(true);
}

// Power iteration for the Perron vector of B = A + I (aperiodic, same vector).
std::vector<double> perron_vector(const DenseMatrix& a)
{
    const std::size_t n = a.order();
    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    for (int iter = 0; iter < 100000; ++iter) {
        std::vector<double> w = a.multiply(v);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] += v[i];
            s += w[i];
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] /= s;
            change = std::max(change, std::abs(w[i] - v[i]));
        }
        v.swap(w);
        if (change <= 4e-16) {
            break;
        }
    }
    return v;
}

} // namespace

CollapseReport collapse_time(const Economy& e, std::size_t horizon)
{
    const DenseMatrix& a = e.structure;
    if (a.order() == 0 || e.input.size() != a.order()) {
        throw std::invalid_argument("collapse_time: input length must match the matrix order");
    }
    if (horizon < 1) {
        throw std::invalid_argument("collapse_time: horizon must be at least 1");
    }
    if (std::any_of(a.entries().begin(), a.entries().end(), [](double x) { return x < 0.0; })) {
        throw std::invalid_argument("collapse_time: structure matrix must be nonnegative");
    }
    if (std::any_of(e.input.begin(), e.input.end(), [](double x) { return !(x > 0.0); })) {
        throw std::invalid_argument("collapse_time: input quantities must be positive");
    }

    const DenseMatrix at = a.transpose();
    CollapseReport report;
    report.trajectory.push_back(e.input);
    for (std::size_t year = 1; year <= horizon; ++year) {
        std::vector<double> next = dense_solve(at, report.trajectory.back());
        report.trajectory.push_back(next);
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (next[i] <= 0.0) {
                report.collapse_year = year;
                report.offending_component = i;
                return report;
            }
        }
    }
    return report;
}

PerronPair dense_max_eigenpair(const DenseMatrix& a, double last_component)
{
    const std::size_t n = a.order();
    if (n == 0) {
        throw std::invalid_argument("dense_max_eigenpair: empty matrix");
    }
    if (std::any_of(a.entries().begin(), a.entries().end(), [](double x) { return x < 0.0; })) {
        throw std::invalid_argument("dense_max_eigenpair: matrix must be nonnegative");
    }
    if (!strongly_connected(a)) {
        throw std::invalid_argument("dense_max_eigenpair: matrix is reducible");
    }

    PerronPair out;
    out.right = perron_vector(a);
    out.left = perron_vector(a.transpose());

    // Rayleigh-type estimate: rho = (u A g) / (u g).
    const std::vector<double> ag = a.multiply(out.right);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += out.left[i] * ag[i];
        den += out.left[i] * out.right[i];
    }
    out.rho = num / den;

    const double sl = last_component / out.left.back();
    const double sr = last_component / out.right.back();
    for (std::size_t i = 0; i < n; ++i) {
        out.left[i] *= sl;
        out.right[i] *= sr;
    }
    out.left.back() = last_component;
    out.right.back() = last_component;
    return out;
}

} // namespace maxeig
