#pragma once

#include "maxeig/tridiag.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace maxeig {

/// mu_0 = 1, mu_n = mu_{n-1} b_{n-1} / a_n. Independent of the killing rates.
std::vector<double> speed_measure(const TridiagonalSystem& q);

struct HSequence {
    std::vector<double> r;  // r_0 .. r_{N-1}, each >= 1
    std::vector<double> h;  // h_0 .. h_N followed by the boundary value h_{N+1}

    double boundary() const { return h.back(); }
};

/// The harmonic-type sequence h with h_0 = 1, h_n = h_{n-1} r_{n-1} and
/// boundary h_{N+1} = c_N h_N + a_N (h_N - h_{N-1}). When c vanishes below
/// N, h_0..h_N are exactly 1. For N = 0 the boundary is c_0.
HSequence h_sequence(const TridiagonalSystem& q);

/// phi_n = sum_{k=n}^{N} 1 / (h_k h_{k+1} mu_k b_k) with b_N := 1,
/// accumulated from k = N downward.
/// Throws ZeroEigenvalueError if h_{N+1} == 0 (no killing anywhere).
std::vector<double> phi_sequence(const TridiagonalSystem& q,
                                 std::span<const double> mu,
                                 std::span<const double> h);

struct InitialsBundle {
    std::vector<double> mu;
    std::vector<double> r;
    std::vector<double> h;  // includes the boundary h_{N+1}
    std::vector<double> phi;
};

InitialsBundle initials_bundle(const TridiagonalSystem& q);

struct InitialGuess {
    std::vector<double> v0_raw;  // h_i sqrt(phi_i), strictly positive
    std::vector<double> v0;      // v0_raw with unit L^2(mu) norm
    double delta1 = 0.0;
    std::size_t delta1_argmax = 0;  // smallest maximizing n
    double z0_inverse_delta = 0.0;  // 1 / delta1
    double z0_automatic = 0.0;      // (v0, -Q v0)_mu
    double z0_table4 = 0.0;         // 7 / (8 delta1) + z0_automatic / 8
};

/// The efficient initial vector and shift. delta1 is
///   max_n [ sqrt(phi_n) sum_{k<=n} mu_k h_k^2 sqrt(phi_k)
///           + phi_n^{-1/2} sum_{j>n} mu_j h_j^2 phi_j^{3/2} ]
/// evaluated in one pass with prefix/suffix accumulators.
InitialGuess efficient_initials(const TridiagonalSystem& q);
InitialGuess efficient_initials(const TridiagonalSystem& q, const InitialsBundle& bundle);

/// (v, w)_mu = sum mu_i v_i w_i.
double inner_mu(std::span<const double> v, std::span<const double> w, std::span<const double> mu);
double norm_mu(std::span<const double> v, std::span<const double> mu);

/// (v, -Q v)_mu / (v, v)_mu. Throws std::invalid_argument for v == 0.
double rayleigh_quotient(const TridiagonalSystem& q, std::span<const double> v,
                         std::span<const double> mu);

} // namespace maxeig
