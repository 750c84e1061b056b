#include "maxeig/initials.hpp"

#include "maxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxeig {

std::vector<double> speed_measure(const TridiagonalSystem& q)
{
    const std::size_t n = q.n_max();
    std::vector<double> mu(n + 1);
    mu[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        mu[k] = mu[k - 1] * q.upper(k - 1) / q.lower(k);
    }
    return mu;
}

HSequence h_sequence(const TridiagonalSystem& q)
{
    const std::size_t n = q.n_max();
    HSequence out;
    out.h.assign(n + 2, 1.0);
    if (n == 0) {
        out.h[1] = q.killing(0);
        return out;
    }

    out.r.assign(n, 1.0);
    bool interior_killing = false;
    for (std::size_t k = 0; k < n; ++k) {
        interior_killing = interior_killing || q.killing(k) > 0.0;
    }

    if (interior_killing) {
        // r_n - 1 = (a_n (1 - 1/r_{n-1}) + c_n) / b_n, written without the
        // cancellation of the expanded form so that r_n >= 1 holds exactly.
        out.r[0] = 1.0 + q.killing(0) / q.upper(0);
        for (std::size_t k = 1; k < n; ++k) {
            const double prev = out.r[k - 1];
            out.r[k] = 1.0 + (q.lower(k) * (prev - 1.0) / prev + q.killing(k)) / q.upper(k);
        }
        for (std::size_t k = 1; k <= n; ++k) {
            out.h[k] = out.h[k - 1] * out.r[k - 1];
        }
    }
    // h_N - h_{N-1} = h_{N-1} (r_{N-1} - 1)
    out.h[n + 1] = q.killing(n) * out.h[n] + q.lower(n) * out.h[n - 1] * (out.r[n - 1] - 1.0);
    return out;
}

std::vector<double> phi_sequence(const TridiagonalSystem& q,
                                 std::span<const double> mu,
                                 std::span<const double> h)
{
    const std::size_t n = q.n_max();
    if (mu.size() != n + 1 || h.size() != n + 2) {
        throw std::invalid_argument("phi_sequence: expected N+1 weights and N+2 h values");
    }
    if (!(h[n + 1] > 0.0)) {
        throw ZeroEigenvalueError();
    }
    std::vector<double> phi(n + 1);
    double tail = 0.0;
    for (std::size_t k = n + 1; k-- > 0;) {
        const double bk = k < n ? q.upper(k) : 1.0;
        tail += 1.0 / (h[k] * h[k + 1] * mu[k] * bk);
        phi[k] = tail;
    }
    return phi;
}

InitialsBundle initials_bundle(const TridiagonalSystem& q)
{
    InitialsBundle bundle;
    bundle.mu = speed_measure(q);
    HSequence hs = h_sequence(q);
    bundle.r = std::move(hs.r);
    bundle.h = std::move(hs.h);
    bundle.phi = phi_sequence(q, bundle.mu, bundle.h);
    return bundle;
}

InitialGuess efficient_initials(const TridiagonalSystem& q)
{
    return efficient_initials(q, initials_bundle(q));
}

InitialGuess efficient_initials(const TridiagonalSystem& q, const InitialsBundle& bundle)
{
    const std::size_t size = q.size();
    const auto& mu = bundle.mu;
    const auto& h = bundle.h;
    const auto& phi = bundle.phi;

    InitialGuess guess;
    guess.v0_raw.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        guess.v0_raw[i] = h[i] * std::sqrt(phi[i]);
    }
    const double norm = norm_mu(guess.v0_raw, mu);
    guess.v0.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        guess.v0[i] = guess.v0_raw[i] / norm;
    }

    // suffix[n] = sum_{j > n} mu_j h_j^2 phi_j^{3/2}
    std::vector<double> suffix(size, 0.0);
    for (std::size_t j = size - 1; j-- > 0;) {
        const std::size_t next = j + 1;
        suffix[j] = suffix[j + 1] + mu[next] * h[next] * h[next] * phi[next] * std::sqrt(phi[next]);
    }
    double prefix = 0.0;
    double best = -1.0;
    for (std::size_t k = 0; k < size; ++k) {
        const double root = std::sqrt(phi[k]);
        prefix += mu[k] * h[k] * h[k] * root;
        const double candidate = root * prefix + suffix[k] / root;
        if (candidate > best) {
            best = candidate;
            guess.delta1_argmax = k;
        }
    }
    guess.delta1 = best;
    guess.z0_inverse_delta = 1.0 / best;
    guess.z0_automatic = rayleigh_quotient(q, guess.v0, mu);
    guess.z0_table4 = 7.0 / (8.0 * best) + guess.z0_automatic / 8.0;
    return guess;
}

double inner_mu(std::span<const double> v, std::span<const double> w, std::span<const double> mu)
{
    if (v.size() != w.size() || v.size() != mu.size()) {
        throw std::invalid_argument("inner_mu: size mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += mu[i] * v[i] * w[i];
    }
    return s;
}

double norm_mu(std::span<const double> v, std::span<const double> mu)
{
    return std::sqrt(inner_mu(v, v, mu));
}

double rayleigh_quotient(const TridiagonalSystem& q, std::span<const double> v,
                         std::span<const double> mu)
{
    const double vv = inner_mu(v, v, mu);
    if (!(vv > 0.0)) {
        throw std::invalid_argument("rayleigh_quotient: zero vector");
    }
    if (v.size() != q.size()) {
        throw std::invalid_argument("rayleigh_quotient: size mismatch");
    }
    // When mu is the reversible measure of q the quadratic form is the sum of
    // nonnegative Dirichlet terms, which keeps tiny eigenvalues relatively
    // accurate. Otherwise fall back to the direct product.
    bool reversible = true;
    for (std::size_t i = 0; reversible && i + 1 < v.size(); ++i) {
        const double lhs = mu[i] * q.upper(i);
        const double rhs = mu[i + 1] * q.lower(i + 1);
        reversible = std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, rhs);
    }
    if (!reversible) {
        const std::vector<double> qv = maxeig::apply(q, v);
        return -inner_mu(v, qv, mu) / vv;
    }
    double form = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        form += mu[i] * q.killing(i) * v[i] * v[i];
        if (i + 1 < v.size()) {
            const double d = v[i] - v[i + 1];
            form += mu[i] * q.upper(i) * d * d;
        }
    }
    return form / vv;
}

} // namespace maxeig
