#pragma once

#include "maxeig/tridiag.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace maxeig {

using RealFunction = std::function<double(double)>;

/// L^c = a(x) d^2/dx^2 + b(x) d/dx - c(x) on (left, right).
///
/// Infinite endpoints are represented by finite cutoffs; mark them as
/// truncated to get a tail-mass warning from build_measures().
struct Operator1D {
    RealFunction a;  // > 0
    RealFunction b;
    RealFunction c;  // >= 0, empty means no killing
    double left = 0.0;
    double right = 1.0;
    double theta = 0.0;  // reference point of C(x) = int_theta^x b/a
    bool left_truncated = false;
    bool right_truncated = false;
    RealFunction h;  // optional positive L^c-harmonic function
};

/// Boundary codes, left end first: DN is Dirichlet at the left end and
/// Neumann at the right end.
enum class BoundaryKind { NN, DD, DN, ND };

const char* to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(const std::string& text);
constexpr std::array<BoundaryKind, 4> kAllKinds{BoundaryKind::NN, BoundaryKind::DD,
                                                BoundaryKind::DN, BoundaryKind::ND};

/// Speed measure mu (density e^C / a) and scale measure nu_hat (density
/// e^{-C}) sampled on a uniform grid, with cumulative trapezoidal integrals
/// from the left end.
struct MeasureGrid {
    std::vector<double> nodes;
    std::vector<double> C;
    std::vector<double> mu_density;
    std::vector<double> nu_hat_density;
    std::vector<double> mu_prefix;      // mu(left, nodes[i])
    std::vector<double> nu_hat_prefix;  // nu_hat(left, nodes[i])
    std::vector<std::string> warnings;

    std::size_t size() const { return nodes.size(); }
    double mu_total() const { return mu_prefix.back(); }
    double nu_hat_total() const { return nu_hat_prefix.back(); }
};

/// grid_size is the number of intervals (>= 16).
/// Throws std::invalid_argument for a bad grid or operator and
/// std::domain_error when a density is not finite and positive.
MeasureGrid build_measures(const Operator1D& op, std::size_t grid_size);

/// Grid from explicit densities; prefix integrals are recomputed.
MeasureGrid grid_from_densities(std::vector<double> nodes, std::vector<double> mu_density,
                                std::vector<double> nu_hat_density);

/// The same grid with mu and nu_hat exchanged.
MeasureGrid swap_measures(const MeasureGrid& grid);

struct KappaResult {
    BoundaryKind kind = BoundaryKind::NN;
    double kappa = 0.0;
    double lower = 0.0;  // (4 kappa)^{-1}
    double upper = 0.0;  // kappa^{-1}
    double arg_x = 0.0;
    double arg_y = 0.0;  // equals arg_x for the one-sided kinds
};

/// The isoperimetric constant kappa^# on the grid:
///   DN: sup_x nu_hat(left, x) mu(x, right)
///   ND: sup_x mu(left, x) nu_hat(x, right)
///   NN: sup_{x<y} nu_hat(x, y) / (mu(left, x)^{-1} + mu(y, right)^{-1})
///   DD: sup_{x<=y} mu(x, y) / (nu_hat(left, x)^{-1} + nu_hat(y, right)^{-1})
/// with lambda^# bracketed by [(4 kappa)^{-1}, kappa^{-1}].
KappaResult kappa(BoundaryKind kind, const MeasureGrid& grid);

struct RefinementReport {
    double coarse = 0.0;
    double fine = 0.0;
    double relative_change = 0.0;
};

/// kappa at grid_size and 2 * grid_size intervals.
RefinementReport kappa_refinement(const Operator1D& op, BoundaryKind kind, std::size_t grid_size);

struct DualityReport {
    double dn_vs_nd = 0.0;  // |kappa^DN(mu, nu_hat) - kappa^ND(nu_hat, mu)|, relative
    double nd_vs_dn = 0.0;
    double nn_vs_dd = 0.0;
    double dd_vs_nn = 0.0;
    double max_discrepancy = 0.0;
};

/// Exchanging D and N in lambda^# corresponds to exchanging mu and nu_hat in
/// kappa^#; reports how far the grid values are from that identity.
DualityReport duality_check(const MeasureGrid& grid);

/// mu_c = h^2 mu and nu_hat_c = nu_hat / h^2 for the operator's harmonic h.
/// Throws std::invalid_argument without h and std::domain_error if h <= 0
/// at a node.
MeasureGrid killing_transform(const Operator1D& op, std::size_t grid_size);

/// max |L^c h| / max(|a h''| + |b h'| + |c h|) over interior nodes, by
/// central differences. Small values confirm that h is harmonic.
double harmonic_residual(const Operator1D& op, std::size_t grid_size);

/// Hardy-type constant
///   B = sup_{x<=y} mu(x, y)^{1/q} / (nu_p(left, x)^{1-p} + nu_p(y, right)^{1-p})^{1/p}
/// where nu_p has density nu_hat_density^{1/(p-1)} (exp[-C/(p-1)]).
/// Requires 1 < p <= q < infinity.
double hardy_constant(const MeasureGrid& grid, double p, double q);

/// Conservative finite-difference generator on n intervals:
///   (L f)_j = [w_{j+1/2}(f_{j+1} - f_j) - w_{j-1/2}(f_j - f_{j-1})] / (dx m_j)
/// with w = e^C at midpoints and m_j = mu density * dx (halved on a
/// Neumann end node). Dirichlet ends are removed and their coupling becomes
/// killing on the neighbouring row. Requires n >= 8.
TridiagonalSystem discretize(const Operator1D& op, std::size_t n, BoundaryKind kind);

/// lambda^# of the discretized operator: the smallest eigenvalue of -Q, or
/// the spectral gap (second eigenvalue) when the system has no killing.
double discrete_leading_eigenvalue(const Operator1D& op, std::size_t n, BoundaryKind kind);

/// delta1 of the discretized operator, from the discrete formula.
/// Throws ZeroEigenvalueError when the discretization has no killing.
double delta1_continuous(const Operator1D& op, std::size_t n, BoundaryKind kind);
double delta1_continuous(const TridiagonalSystem& q);

namespace detail {

struct PairOptimum {
    double value = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
};

/// sup_{i<=j} (inner[j] - inner[i])^alpha / (left_weight[i] + right_weight[j])^beta
/// for nondecreasing inner, nonincreasing left_weight and nondecreasing
/// right_weight (weights may be +inf). Exhaustive below
/// kExhaustivePairLimit nodes, branch-and-bound above; both are exact on
/// the grid.
constexpr std::size_t kExhaustivePairLimit = 2000;

PairOptimum pair_supremum(std::span<const double> inner, std::span<const double> left_weight,
                          std::span<const double> right_weight, double alpha, double beta);
PairOptimum pair_supremum_exhaustive(std::span<const double> inner,
                                     std::span<const double> left_weight,
                                     std::span<const double> right_weight, double alpha,
                                     double beta);
PairOptimum pair_supremum_pruned(std::span<const double> inner, std::span<const double> left_weight,
                                 std::span<const double> right_weight, double alpha, double beta);

} // namespace detail

} // namespace maxeig
