#pragma once

#include "maxeig/initials.hpp"
#include "maxeig/tridiag.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace maxeig {

struct IterationStep {
    std::size_t k = 0;
    double z = 0.0;         // eigenvalue estimate after step k
    double residual = 0.0;  // norm of the eigen-residual of v_k, >= 0
};

struct IterationTrace {
    std::vector<IterationStep> steps;
    std::vector<double> final_vector;
    bool converged = false;
    bool pitfall_warning = false;
    /// First k from which every later z agrees with the final z within the
    /// run's tolerance (the step at which the output became stable).
    std::size_t settled_step = 0;

    double final_z() const { return steps.back().z; }
};

// ---------------------------------------------------------------------------
// Power iteration

struct PowerConfig {
    std::size_t max_iters = 10000;
    /// Early stop when |z_k - z_{k-1}| <= tol |z_k|; 0 runs all max_iters.
    double tol = 0.0;
    /// A = Q + shift I. Defaults to max_i |Q_ii| + 1.
    std::optional<double> shift;
};

double default_power_shift(const TridiagonalSystem& q);

/// Iterates v_k = A v_{k-1} / |A v_{k-1}|_1 on A = Q + mI with v0 scaled to
/// unit l1 norm, and reports z_k = |A v_k|_1 - m, which tends to the
/// maximal eigenvalue of Q (z_k -> -lambda0). Step k = 0 is recorded.
/// v0 must be nonnegative and nonzero.
IterationTrace power_iteration(const TridiagonalSystem& q, std::span<const double> v0,
                               const PowerConfig& cfg = {});

// ---------------------------------------------------------------------------
// Rayleigh quotient iteration

/// Solves (-Q - zI) w = rhs by cancellation-free tridiagonal elimination.
/// Throws SingularSystemError on an exactly zero pivot or an overflowing
/// solution, i.e. when z sits on an eigenvalue to working precision.
std::vector<double> solve_shifted(const TridiagonalSystem& q, double z, std::span<const double> rhs);

struct RqiConfig {
    double tol = 1e-12;  // relative change in z between consecutive steps
    std::size_t max_iters = 50;
    /// Norm weights; empty means the speed measure of the system.
    std::vector<double> weights;
};

/// Weighted RQI: w_k solves (-Q - z_{k-1} I) w_k = v_{k-1},
/// v_k = w_k / |w_k|_mu and z_k = (v_k, -Q v_k)_mu. Stops when consecutive z
/// agree within tol or the shifted solve is singular. The pitfall warning is
/// raised when the limit exceeds 2 / delta1, the upper end of the bracket for
/// lambda0. The final vector is sign-fixed so its last entry is positive.
/// Throws ConvergenceError after max_iters steps.
IterationTrace rqi(const TridiagonalSystem& q, std::span<const double> v0, double z0,
                   const RqiConfig& cfg = {});

enum class ShiftChoice { inverse_delta, automatic, table4 };

/// RQI started from the efficient initial vector and the chosen z0.
IterationTrace rqi(const TridiagonalSystem& q, const InitialGuess& guess, ShiftChoice choice,
                   const RqiConfig& cfg = {});

struct ResidualInterval {
    double lower = 0.0;
    double upper = 0.0;
    double width() const { return upper - lower; }
};

/// z -/+ |(-Q - zI) v|_mu / |v|_mu. Since -Q is self-adjoint in L^2(mu), the
/// interval contains an eigenvalue of -Q.
ResidualInterval residual_bounds(const TridiagonalSystem& q, std::span<const double> v, double z);

} // namespace maxeig
