#include "maxeig/iterate.hpp"

#include "maxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace maxeig {

namespace {

double l1_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) {
        s += std::abs(x);
    }
    return s;
}

std::size_t settled_index(const std::vector<IterationStep>& steps, double tol)
{
    const double final_z = steps.back().z;
    std::size_t idx = steps.size() - 1;
    while (idx > 0 && std::abs(steps[idx - 1].z - final_z) <= tol * std::abs(final_z)) {
        --idx;
    }
    return steps[idx].k;
}

// |(-Q - zI) v|_mu / |v|_mu
double eigen_residual(const TridiagonalSystem& q, std::span<const double> v, double z,
                      std::span<const double> mu)
{
    std::vector<double> r = maxeig::apply(q, v);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = -r[i] - z * v[i];
    }
    return norm_mu(r, mu) / norm_mu(v, mu);
}

} // namespace

double default_power_shift(const TridiagonalSystem& q)
{
    double m = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        m = std::max(m, std::abs(q.diagonal(i)));
    }
    return m + 1.0;
}

IterationTrace power_iteration(const TridiagonalSystem& q, std::span<const double> v0,
                               const PowerConfig& cfg)
{
    const std::size_t n = q.size();
    if (v0.size() != n) {
        throw std::invalid_argument("power_iteration: v0 must have N+1 entries");
    }
    if (std::any_of(v0.begin(), v0.end(), [](double x) { return x < 0.0; }) || l1_norm(v0) == 0.0) {
        throw std::invalid_argument("power_iteration: v0 must be nonnegative and nonzero");
    }
    const double m = cfg.shift.value_or(default_power_shift(q));

    std::vector<double> v(v0.begin(), v0.end());
    const double norm0 = l1_norm(v);
    for (double& x : v) {
        x /= norm0;
    }

    IterationTrace trace;
    std::vector<double> av;
    auto record = [&](std::size_t k) {
        av = maxeig::apply(q, v);
        for (std::size_t i = 0; i < n; ++i) {
            av[i] += m * v[i];
        }
        const double growth = l1_norm(av);
        const double z = growth - m;
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res += std::abs(av[i] - growth * v[i]);
        }
        trace.steps.push_back({k, z, res});
        return growth;
    };

    double growth = record(0);
    for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = av[i] / growth;
        }
        growth = record(k);
        const double dz = std::abs(trace.steps[k].z - trace.steps[k - 1].z);
        if (cfg.tol > 0.0 && dz <= cfg.tol * std::abs(trace.steps[k].z)) {
            trace.converged = true;
            break;
        }
    }
    if (cfg.tol == 0.0 && trace.steps.size() > 1) {
        const double last = trace.steps.back().z;
        const double prev = trace.steps[trace.steps.size() - 2].z;
        trace.converged = std::abs(last - prev) <= 1e-12 * std::max(1.0, std::abs(last));
    }
    trace.final_vector = v;
    trace.settled_step = settled_index(trace.steps, cfg.tol > 0.0 ? cfg.tol : 1e-12);
    return trace;
}

std::vector<double> solve_shifted(const TridiagonalSystem& q, double z, std::span<const double> rhs)
{
    const std::size_t n = q.size();
    if (rhs.size() != n) {
        throw std::invalid_argument("solve_shifted: rhs must have N+1 entries");
    }
    // Elimination on -Q - zI written through row excesses: the pivot of row i
    // is d_i = b_i + e_i with e_i = c_i - z + a_i e_{i-1} / d_{i-1}. Only
    // nonnegative rates are added, so a shift far below the matrix scale is
    // not rounded away as it would be in diag = a + b + c - z.
    std::vector<double> d(n), y(rhs.begin(), rhs.end());
    double e_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = q.lower(i);
        double e = q.killing(i) - z;
        if (i > 0) {
            e += a * e_prev / d[i - 1];
            y[i] += a * y[i - 1] / d[i - 1];
        }
        d[i] = q.upper(i) + e;
        if (d[i] == 0.0) {
            throw SingularSystemError("solve_shifted: zero pivot");
        }
        e_prev = e;
    }
    std::vector<double> w(n);
    for (std::size_t i = n; i-- > 0;) {
        const double next = i + 1 < n ? q.upper(i) * w[i + 1] : 0.0;
        w[i] = (y[i] + next) / d[i];
        if (!std::isfinite(w[i])) {
            throw SingularSystemError("solve_shifted: solution overflowed");
        }
    }
    return w;
}

IterationTrace rqi(const TridiagonalSystem& q, std::span<const double> v0, double z0,
                   const RqiConfig& cfg)
{
    const std::size_t n = q.size();
    if (!(cfg.tol > 0.0) || cfg.max_iters < 1) {
        throw std::invalid_argument("rqi: tol must be positive and max_iters at least 1");
    }
    if (v0.size() != n) {
        throw std::invalid_argument("rqi: v0 must have N+1 entries");
    }
    if (!std::isfinite(z0)) {
        throw std::invalid_argument("rqi: z0 must be finite");
    }
    const std::vector<double> mu = cfg.weights.empty() ? speed_measure(q) : cfg.weights;
    if (mu.size() != n) {
        throw std::invalid_argument("rqi: weights must have N+1 entries");
    }

    std::vector<double> v(v0.begin(), v0.end());
    const double norm0 = norm_mu(v, mu);
    if (!(norm0 > 0.0)) {
        throw std::invalid_argument("rqi: v0 must be nonzero");
    }
    for (double& x : v) {
        x /= norm0;
    }

    IterationTrace trace;
    trace.steps.push_back({0, z0, eigen_residual(q, v, z0, mu)});
    double z = z0;
    for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
        std::vector<double> w;
        try {
            w = solve_shifted(q, z, v);
        } catch (const SingularSystemError&) {
            // z is an eigenvalue to working precision.
            trace.converged = true;
            break;
        }
        const double wn = norm_mu(w, mu);
        if (!std::isfinite(wn) || wn == 0.0) {
            trace.converged = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = w[i] / wn;
        }
        const double next = rayleigh_quotient(q, v, mu);
        trace.steps.push_back({k, next, eigen_residual(q, v, next, mu)});
        const bool done = std::abs(next - z) <= cfg.tol * std::abs(next);
        z = next;
        if (done) {
            trace.converged = true;
            break;
        }
    }
    if (!trace.converged) {
        throw ConvergenceError("rqi: no convergence within " + std::to_string(cfg.max_iters) + " iterations");
    }

    if (v.back() < 0.0) {
        for (double& x : v) {
            x = -x;
        }
    }
    trace.final_vector = std::move(v);
    trace.settled_step = settled_index(trace.steps, cfg.tol);

    if (q.has_killing()) {
        const InitialGuess bracket = efficient_initials(q);
        trace.pitfall_warning = z > 2.0 / bracket.delta1;
    }
    return trace;
}

IterationTrace rqi(const TridiagonalSystem& q, const InitialGuess& guess, ShiftChoice choice,
                   const RqiConfig& cfg)
{
    double z0 = guess.z0_inverse_delta;
    switch (choice) {
    case ShiftChoice::inverse_delta:
        z0 = guess.z0_inverse_delta;
        break;
    case ShiftChoice::automatic:
        z0 = guess.z0_automatic;
        break;
    case ShiftChoice::table4:
        z0 = guess.z0_table4;
        break;
    }
    return rqi(q, guess.v0, z0, cfg);
}

ResidualInterval residual_bounds(const TridiagonalSystem& q, std::span<const double> v, double z)
{
    if (v.size() != q.size()) {
        throw std::invalid_argument("residual_bounds: v must have N+1 entries");
    }
    const std::vector<double> mu = speed_measure(q);
    if (!(norm_mu(v, mu) > 0.0)) {
        throw std::invalid_argument("residual_bounds: v must be nonzero");
    }
    const double r = eigen_residual(q, v, z, mu);
    return {z - r, z + r};
}

} // namespace maxeig
