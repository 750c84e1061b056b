#include "maxeig/contop.hpp"

#include "maxeig/errors.hpp"
#include "maxeig/initials.hpp"
#include "maxeig/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxeig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_operator(const Operator1D& op)
{
    if (!op.a || !op.b) {
        throw std::invalid_argument("operator: a and b are required");
    }
    if (!(std::isfinite(op.left) && std::isfinite(op.right) && op.left < op.right)) {
        throw std::invalid_argument("operator: interval must be finite with left < right");
    }
    if (!(op.theta >= op.left && op.theta <= op.right)) {
        throw std::invalid_argument("operator: reference point must lie in the interval");
    }
}

std::vector<double> uniform_nodes(double left, double right, std::size_t intervals)
{
    std::vector<double> x(intervals + 1);
    const double dx = (right - left) / static_cast<double>(intervals);
    for (std::size_t i = 0; i <= intervals; ++i) {
        x[i] = left + dx * static_cast<double>(i);
    }
    x.back() = right;
    return x;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> f)
{
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    }
    return out;
}

double drift_ratio(const Operator1D& op, double x)
{
    const double a = op.a(x);
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("operator: a(x) must be positive and finite");
    }
    return op.b(x) / a;
}

// C(x_i) = int_theta^{x_i} b/a by the trapezoidal rule on the given nodes.
std::vector<double> c_on_nodes(const Operator1D& op, std::span<const double> x)
{
    std::vector<double> ratio(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        ratio[i] = drift_ratio(op, x[i]);
    }
    std::vector<double> cum = cumulative_trapezoid(x, ratio);

    const auto it = std::upper_bound(x.begin(), x.end(), op.theta);
    const std::size_t k = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    double at_theta = cum[k];
    if (op.theta > x[k]) {
        at_theta += 0.5 * (op.theta - x[k]) * (ratio[k] + drift_ratio(op, op.theta));
    }
    for (double& v : cum) {
        v -= at_theta;
    }
    return cum;
}

bool finite_positive(double v)
{
    return std::isfinite(v) && v > 0.0;
}

double pair_value(double span, double weight, double alpha, double beta)
{
    if (alpha == 1.0 && beta == 1.0) {
        return span / weight;
    }
    return std::pow(span, alpha) / std::pow(weight, beta);
}

double reciprocal(double v)
{
    return v > 0.0 ? 1.0 / v : kInf;
}

} // namespace

const char* to_string(BoundaryKind kind)
{
    switch (kind) {
    case BoundaryKind::NN:
        return "NN";
    case BoundaryKind::DD:
        return "DD";
    case BoundaryKind::DN:
        return "DN";
    case BoundaryKind::ND:
        return "ND";
    }
    return "?";
}

BoundaryKind parse_boundary_kind(const std::string& text)
{
    std::string t;
    for (char ch : text) {
        t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
    if (t == "NN") {
        return BoundaryKind::NN;
    }
    if (t == "DD") {
        return BoundaryKind::DD;
    }
    if (t == "DN") {
        return BoundaryKind::DN;
    }
    if (t == "ND") {
        return BoundaryKind::ND;
    }
    throw ParseError("unknown boundary kind '" + text + "' (expected nn, dd, dn or nd)");
}

MeasureGrid grid_from_densities(std::vector<double> nodes, std::vector<double> mu_density,
                                std::vector<double> nu_hat_density)
{
    if (nodes.size() < 2 || mu_density.size() != nodes.size() || nu_hat_density.size() != nodes.size()) {
        throw std::invalid_argument("grid_from_densities: size mismatch");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw std::invalid_argument("grid_from_densities: nodes must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!finite_positive(mu_density[i]) || !finite_positive(nu_hat_density[i])) {
            throw std::domain_error("measure density is not finite and positive");
        }
    }
    MeasureGrid grid;
    grid.nodes = std::move(nodes);
    grid.mu_density = std::move(mu_density);
    grid.nu_hat_density = std::move(nu_hat_density);
    grid.mu_prefix = cumulative_trapezoid(grid.nodes, grid.mu_density);
    grid.nu_hat_prefix = cumulative_trapezoid(grid.nodes, grid.nu_hat_density);
    return grid;
}

MeasureGrid build_measures(const Operator1D& op, std::size_t grid_size)
{
    validate_operator(op);
    if (grid_size < 16) {
        throw std::invalid_argument("build_measures: grid_size must be at least 16");
    }
    std::vector<double> x = uniform_nodes(op.left, op.right, grid_size);
    std::vector<double> cvals = c_on_nodes(op, x);
    std::vector<double> mu(x.size()), nu(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mu[i] = std::exp(cvals[i]) / op.a(x[i]);
        nu[i] = std::exp(-cvals[i]);
    }
    MeasureGrid grid = grid_from_densities(std::move(x), std::move(mu), std::move(nu));
    grid.C = std::move(cvals);

    auto check_tail = [&](bool truncated, std::size_t idx, const char* end) {
        if (!truncated) {
            return;
        }
        if (grid.mu_density[idx] > 1e-8 * grid.mu_total()) {
            grid.warnings.push_back(std::string("speed measure has non-negligible mass at the ") + end + " cutoff");
        }
        if (grid.nu_hat_density[idx] > 1e-8 * grid.nu_hat_total()) {
            grid.warnings.push_back(std::string("scale measure has non-negligible mass at the ") + end + " cutoff");
        }
    };
    check_tail(op.left_truncated, 0, "left");
    check_tail(op.right_truncated, grid.size() - 1, "right");
    return grid;
}

MeasureGrid swap_measures(const MeasureGrid& grid)
{
    MeasureGrid out = grid;
    std::swap(out.mu_density, out.nu_hat_density);
    std::swap(out.mu_prefix, out.nu_hat_prefix);
    for (double& v : out.C) {
        v = -v;
    }
    return out;
}

namespace detail {

PairOptimum pair_supremum_exhaustive(std::span<const double> inner,
                                     std::span<const double> left_weight,
                                     std::span<const double> right_weight, double alpha,
                                     double beta)
{
    const std::size_t n = inner.size();
    PairOptimum best;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(left_weight[i])) {
            continue;
        }
        for (std::size_t j = i; j < n; ++j) {
            if (!std::isfinite(right_weight[j])) {
                continue;
            }
            const double v = pair_value(inner[j] - inner[i], left_weight[i] + right_weight[j], alpha, beta);
            if (v > best.value) {
                best = {v, i, j};
            }
        }
    }
    return best;
}

PairOptimum pair_supremum_pruned(std::span<const double> inner, std::span<const double> left_weight,
                                 std::span<const double> right_weight, double alpha, double beta)
{
    const std::size_t n = inner.size();
    const double total = inner[n - 1];
    PairOptimum best;

    // Seed the incumbent from a coarse sub-grid so pruning bites early.
    const std::size_t stride = std::max<std::size_t>(1, n / 256);
    for (std::size_t i = 0; i < n; i += stride) {
        if (!std::isfinite(left_weight[i])) {
            continue;
        }
        for (std::size_t j = i; j < n; j += stride) {
            if (!std::isfinite(right_weight[j])) {
                continue;
            }
            const double v = pair_value(inner[j] - inner[i], left_weight[i] + right_weight[j], alpha, beta);
            if (v > best.value) {
                best = {v, i, j};
            }
        }
    }

    // For fixed i and every j' >= j, the pair value is at most
    // (total - inner[i])^alpha / (left_weight[i] + right_weight[j])^beta,
    // which does not increase with j.
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(left_weight[i])) {
            continue;
        }
        const double head = total - inner[i];
        for (std::size_t j = i; j < n; ++j) {
            if (!std::isfinite(right_weight[j])) {
                break;
            }
            const double weight = left_weight[i] + right_weight[j];
            if (pair_value(head, weight, alpha, beta) <= best.value) {
                break;
            }
            const double v = pair_value(inner[j] - inner[i], weight, alpha, beta);
            if (v > best.value) {
                best = {v, i, j};
            }
        }
    }
    return best;
}

PairOptimum pair_supremum(std::span<const double> inner, std::span<const double> left_weight,
                          std::span<const double> right_weight, double alpha, double beta)
{
    if (inner.empty() || left_weight.size() != inner.size() || right_weight.size() != inner.size()) {
        throw std::invalid_argument("pair_supremum: size mismatch");
    }
    if (inner.size() <= kExhaustivePairLimit) {
        return pair_supremum_exhaustive(inner, left_weight, right_weight, alpha, beta);
    }
    return pair_supremum_pruned(inner, left_weight, right_weight, alpha, beta);
}

} // namespace detail

KappaResult kappa(BoundaryKind kind, const MeasureGrid& grid)
{
    const std::size_t n = grid.size();
    if (n < 3) {
        throw std::invalid_argument("kappa: degenerate grid");
    }
    KappaResult out;
    out.kind = kind;

    const auto& mu = grid.mu_prefix;
    const auto& nu = grid.nu_hat_prefix;

    if (kind == BoundaryKind::DN || kind == BoundaryKind::ND) {
        // DN: nu_hat(left, x) mu(x, right); ND exchanges the roles.
        const auto& head = kind == BoundaryKind::DN ? nu : mu;
        const auto& tail = kind == BoundaryKind::DN ? mu : nu;
        const double tail_total = tail.back();
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = head[i] * (tail_total - tail[i]);
            if (v > best) {
                best = v;
                arg = i;
            }
        }
        out.kappa = best;
        out.arg_x = out.arg_y = grid.nodes[arg];
    } else {
        // NN: inner nu_hat, outer mu. DD: inner mu, outer nu_hat.
        const auto& inner = kind == BoundaryKind::NN ? nu : mu;
        const auto& outer = kind == BoundaryKind::NN ? mu : nu;
        const double outer_total = outer.back();
        std::vector<double> left_w(n), right_w(n);
        for (std::size_t i = 0; i < n; ++i) {
            left_w[i] = reciprocal(outer[i]);
            right_w[i] = reciprocal(outer_total - outer[i]);
        }
        const detail::PairOptimum opt = detail::pair_supremum(inner, left_w, right_w, 1.0, 1.0);
        if (opt.value <= 0.0) {
            throw std::invalid_argument("kappa: no feasible pair on the grid");
        }
        out.kappa = opt.value;
        out.arg_x = grid.nodes[opt.i];
        out.arg_y = grid.nodes[opt.j];
    }

    if (std::isinf(out.kappa)) {
        out.lower = 0.0;
        out.upper = 0.0;
    } else {
        out.upper = 1.0 / out.kappa;
        out.lower = out.upper / 4.0;
    }
    return out;
}

RefinementReport kappa_refinement(const Operator1D& op, BoundaryKind kind, std::size_t grid_size)
{
    RefinementReport r;
    r.coarse = kappa(kind, build_measures(op, grid_size)).kappa;
    r.fine = kappa(kind, build_measures(op, 2 * grid_size)).kappa;
    r.relative_change = std::abs(r.fine - r.coarse) / std::abs(r.fine);
    return r;
}

DualityReport duality_check(const MeasureGrid& grid)
{
    const MeasureGrid swapped = swap_measures(grid);
    auto rel = [](double x, double y) {
        return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
    };
    DualityReport r;
    r.dn_vs_nd = rel(kappa(BoundaryKind::DN, grid).kappa, kappa(BoundaryKind::ND, swapped).kappa);
    r.nd_vs_dn = rel(kappa(BoundaryKind::ND, grid).kappa, kappa(BoundaryKind::DN, swapped).kappa);
    r.nn_vs_dd = rel(kappa(BoundaryKind::NN, grid).kappa, kappa(BoundaryKind::DD, swapped).kappa);
    r.dd_vs_nn = rel(kappa(BoundaryKind::DD, grid).kappa, kappa(BoundaryKind::NN, swapped).kappa);
    r.max_discrepancy = std::max({r.dn_vs_nd, r.nd_vs_dn, r.nn_vs_dd, r.dd_vs_nn});
    return r;
}

MeasureGrid killing_transform(const Operator1D& op, std::size_t grid_size)
{
    if (!op.h) {
        throw std::invalid_argument("killing_transform: a harmonic function h is required");
    }
    const MeasureGrid base = build_measures(op, grid_size);
    std::vector<double> mu(base.size()), nu(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double hv = op.h(base.nodes[i]);
        if (!(hv > 0.0) || !std::isfinite(hv)) {
            throw std::domain_error("killing_transform: h must be positive at every node");
        }
        mu[i] = hv * hv * base.mu_density[i];
        nu[i] = base.nu_hat_density[i] / (hv * hv);
    }
    MeasureGrid out = grid_from_densities(base.nodes, std::move(mu), std::move(nu));
    out.C = base.C;
    out.warnings = base.warnings;
    return out;
}

double harmonic_residual(const Operator1D& op, std::size_t grid_size)
{
    validate_operator(op);
    if (!op.h) {
        throw std::invalid_argument("harmonic_residual: a harmonic function h is required");
    }
    const std::vector<double> x = uniform_nodes(op.left, op.right, grid_size);
    const double dx = x[1] - x[0];
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double hm = op.h(x[i - 1]);
        const double h0 = op.h(x[i]);
        const double hp = op.h(x[i + 1]);
        const double second = op.a(x[i]) * (hp - 2.0 * h0 + hm) / (dx * dx);
        const double first = op.b(x[i]) * (hp - hm) / (2.0 * dx);
        const double kill = (op.c ? op.c(x[i]) : 0.0) * h0;
        worst = std::max(worst, std::abs(second + first - kill));
        scale = std::max(scale, std::abs(second) + std::abs(first) + std::abs(kill));
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

double hardy_constant(const MeasureGrid& grid, double p, double q)
{
    if (!(p > 1.0 && std::isfinite(p) && q >= p && std::isfinite(q))) {
        throw std::invalid_argument("hardy_constant: requires 1 < p <= q < infinity");
    }
    const std::size_t n = grid.size();
    std::vector<double> nu_p_prefix;
    if (p == 2.0) {
        nu_p_prefix = grid.nu_hat_prefix;
    } else {
        std::vector<double> density(n);
        for (std::size_t i = 0; i < n; ++i) {
            density[i] = std::pow(grid.nu_hat_density[i], 1.0 / (p - 1.0));
        }
        nu_p_prefix = cumulative_trapezoid(grid.nodes, density);
    }
    const double total = nu_p_prefix.back();
    std::vector<double> left_w(n), right_w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double head = nu_p_prefix[i];
        const double tail = total - nu_p_prefix[i];
        left_w[i] = head > 0.0 ? std::pow(head, 1.0 - p) : kInf;
        right_w[i] = tail > 0.0 ? std::pow(tail, 1.0 - p) : kInf;
    }
    return detail::pair_supremum(grid.mu_prefix, left_w, right_w, 1.0 / q, 1.0 / p).value;
}

TridiagonalSystem discretize(const Operator1D& op, std::size_t n, BoundaryKind kind)
{
    validate_operator(op);
    if (n < 8) {
        throw std::invalid_argument("discretize: n must be at least 8");
    }
    // Nodes and midpoints interleaved on a grid of 2n intervals.
    const std::vector<double> fine = uniform_nodes(op.left, op.right, 2 * n);
    const std::vector<double> cvals = c_on_nodes(op, fine);
    const double dx = (op.right - op.left) / static_cast<double>(n);

    const bool left_dirichlet = kind == BoundaryKind::DD || kind == BoundaryKind::DN;
    const bool right_dirichlet = kind == BoundaryKind::DD || kind == BoundaryKind::ND;
    const std::size_t first = left_dirichlet ? 1 : 0;
    const std::size_t last = right_dirichlet ? n - 1 : n;

    std::vector<double> a, b, c;
    for (std::size_t j = first; j <= last; ++j) {
        const double xj = fine[2 * j];
        double mass = std::exp(cvals[2 * j]) / op.a(xj) * dx;
        if (j == 0 || j == n) {
            mass *= 0.5;
        }
        const double w_left = j > 0 ? std::exp(cvals[2 * j - 1]) : 0.0;
        const double w_right = j < n ? std::exp(cvals[2 * j + 1]) : 0.0;
        const double rate_left = w_left / (dx * mass);
        const double rate_right = w_right / (dx * mass);

        double kill = op.c ? op.c(xj) : 0.0;
        if (kill < 0.0) {
            throw std::invalid_argument("discretize: c(x) must be nonnegative");
        }
        if (j > first) {
            a.push_back(rate_left);
        } else {
            kill += rate_left;
        }
        if (j < last) {
            b.push_back(rate_right);
        } else {
            kill += rate_right;
        }
        c.push_back(kill);
    }
    return TridiagonalSystem(std::move(a), std::move(b), std::move(c));
}

double discrete_leading_eigenvalue(const Operator1D& op, std::size_t n, BoundaryKind kind)
{
    const TridiagonalSystem q = discretize(op, n, kind);
    const SymmetricTridiagonal sym = symmetrize(q);
    if (q.has_killing()) {
        return sturm_spectrum(sym, 1).eigenvalues[0];
    }
    return sturm_spectrum(sym, 2).eigenvalues[1];
}

double delta1_continuous(const Operator1D& op, std::size_t n, BoundaryKind kind)
{
    return delta1_continuous(discretize(op, n, kind));
}

double delta1_continuous(const TridiagonalSystem& q)
{
    if (!q.has_killing()) {
        throw ZeroEigenvalueError();
    }
    return efficient_initials(q).delta1;
}

} // namespace maxeig
