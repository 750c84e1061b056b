#include "maxeig/oracle.hpp"

#include "maxeig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace maxeig {

SymmetricTridiagonal symmetrize(const TridiagonalSystem& q)
{
    const std::size_t n = q.size();
    SymmetricTridiagonal sym;
    sym.diagonal.resize(n);
    sym.off.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        sym.diagonal[i] = q.diagonal(i);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        sym.off[i] = std::sqrt(q.lower(i + 1) * q.upper(i));
    }
    sym.gen_lower.assign(q.a().begin(), q.a().end());
    sym.gen_upper.assign(q.b().begin(), q.b().end());
    sym.gen_killing.assign(q.c().begin(), q.c().end());
    return sym;
}

SymmetricTridiagonal symmetric_from(std::vector<double> diagonal, std::vector<double> off)
{
    if (diagonal.empty() || off.size() + 1 != diagonal.size()) {
        throw std::invalid_argument("symmetric_from: expected n diagonal and n-1 off-diagonal entries");
    }
    SymmetricTridiagonal sym;
    sym.diagonal = std::move(diagonal);
    sym.off = std::move(off);
    return sym;
}

namespace {

// A zero pivot is replaced by a tiny negative one relative to the terms it
// came from, so that the next quotient stays finite.
double guard(double d, double scale)
{
    if (d != 0.0) {
        return d;
    }
    return -(std::numeric_limits<double>::epsilon() * scale + std::numeric_limits<double>::min());
}

// Pivots of the LDL^T factorization of -S - xI.
std::size_t count_plain(const SymmetricTridiagonal& sym, double x)
{
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < sym.size(); ++i) {
        const double coupling = i > 0 ? sym.off[i - 1] * sym.off[i - 1] / d : 0.0;
        d = guard(-sym.diagonal[i] - x - coupling, std::abs(sym.diagonal[i]) + std::abs(x) + std::abs(coupling));
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

// Same pivots d_i, tracked through the excess e_i = d_i - b_i:
//   e_i = c_i - x + a_i e_{i-1} / d_{i-1},   d_i = b_i + e_i   (b_N := 0).
std::size_t count_generator(const SymmetricTridiagonal& sym, double x)
{
    const std::size_t n = sym.size();
    std::size_t count = 0;
    double e = 0.0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double next = sym.gen_killing[i] - x;
        if (i > 0) {
            next += sym.gen_lower[i - 1] * e / d;
        }
        e = next;
        const double b = i + 1 < n ? sym.gen_upper[i] : 0.0;
        d = guard(b + e, b + std::abs(e));
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

struct Interval {
    double lo;
    double hi;
};

Interval gershgorin(const SymmetricTridiagonal& sym)
{
    const std::size_t n = sym.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::abs(sym.off[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::abs(sym.off[i]);
        }
        lo = std::min(lo, -sym.diagonal[i] - radius);
        hi = std::max(hi, -sym.diagonal[i] + radius);
    }
    const double pad = std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
    return {lo - pad, hi + pad};
}

// Smallest x with count(x) > index, to full double precision.
double bisect(const SymmetricTridiagonal& sym, std::size_t index, Interval box)
{
    double lo = box.lo;
    double hi = box.hi;
    for (int iter = 0; iter < 4000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count(sym, mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::size_t sturm_count(const SymmetricTridiagonal& sym, double x)
{
    return sym.has_generator() ? count_generator(sym, x) : count_plain(sym, x);
}

SpectrumResult sturm_spectrum(const SymmetricTridiagonal& sym, std::size_t k)
{
    if (k == 0 || k > sym.size()) {
        throw std::out_of_range("sturm_spectrum: requested count out of range");
    }
    const Interval box = gershgorin(sym);
    SpectrumResult out;
    out.eigenvalues.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        out.eigenvalues.push_back(bisect(sym, j, box));
    }
    out.simple.assign(k, true);
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const double a = out.eigenvalues[j];
        const double b = out.eigenvalues[j + 1];
        if (b - a <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
            out.simple[j] = false;
            out.simple[j + 1] = false;
        }
    }
    return out;
}

std::vector<double> oracle_eigenvector(const TridiagonalSystem& q, double lambda)
{
    const std::size_t n = q.size();
    if (n == 1) {
        return {1.0};
    }

    // -Q - lambda I in band form.
    std::vector<double> lower(n - 1), diag(n), upper(n - 1);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = -q.diagonal(i) - lambda;
        scale = std::max(scale, std::abs(q.diagonal(i)));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        lower[i] = -q.lower(i + 1);
        upper[i] = -q.upper(i);
    }

    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    std::vector<double> v(n);
    for (double& x : v) {
        x = dist(gen);
    }

    // The shift sits on an eigenvalue; nudge it only if elimination refuses.
    double nudge = 0.0;
    for (int step = 0; step < 2; ++step) {
        std::vector<double> w;
        for (;;) {
            try {
                w = solve_tridiagonal(lower, diag, upper, v);
                break;
            } catch (const SingularSystemError&) {
                const double bump = nudge == 0.0 ? 16.0 * std::numeric_limits<double>::epsilon() * scale : nudge;
                nudge = 2.0 * bump;
                for (double& d : diag) {
                    d += bump;
                }
            }
        }
        double big = 0.0;
        for (double x : w) {
            big = std::max(big, std::abs(x));
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = w[i] / big;
        }
    }

    const double last = v[n - 1];
    for (double& x : v) {
        x /= last;
    }
    return v;
}

ReferencePair max_eigenpair_reference(const TridiagonalSystem& q, std::size_t cap)
{
    if (q.n_max() > cap) {
        throw std::length_error("max_eigenpair_reference: system exceeds oracle cap");
    }
    ReferencePair out;
    out.lambda0 = sturm_spectrum(symmetrize(q), 1).eigenvalues.front();
    out.g = oracle_eigenvector(q, out.lambda0);
    return out;
}

} // namespace maxeig
