#pragma once

#include "maxeig/tridiag.hpp"

#include <cstddef>
#include <vector>

namespace maxeig {

/// Symmetric tridiagonal matrix similar to Q through the diagonal scaling
/// sqrt(mu). The diagonal is Q's diagonal and off[i] = sqrt(a_{i+1} b_i).
///
/// When built from a TridiagonalSystem the generator data (couplings and
/// killing rates) is kept as well; Sturm counts then use a pivot recurrence
/// free of cancellation, which keeps small eigenvalues relatively accurate.
struct SymmetricTridiagonal {
    std::vector<double> diagonal;
    std::vector<double> off;

    std::vector<double> gen_lower;    // a_1..a_N
    std::vector<double> gen_upper;    // b_0..b_{N-1}
    std::vector<double> gen_killing;  // c_0..c_N

    std::size_t size() const { return diagonal.size(); }
    bool has_generator() const { return !gen_killing.empty(); }
};

SymmetricTridiagonal symmetrize(const TridiagonalSystem& q);

/// Plain symmetric input (no generator data).
SymmetricTridiagonal symmetric_from(std::vector<double> diagonal, std::vector<double> off);

/// Number of eigenvalues of -S strictly below x.
std::size_t sturm_count(const SymmetricTridiagonal& sym, double x);

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending eigenvalues of -Q
    std::vector<bool> simple;         // separated from its neighbours
};

/// The k smallest eigenvalues of -S by Gershgorin-seeded bisection.
/// Throws std::out_of_range when k is 0 or exceeds the order.
SpectrumResult sturm_spectrum(const SymmetricTridiagonal& sym, std::size_t k);

/// Eigenvector of Q (not of S) for an eigenvalue lambda of -Q, obtained by
/// inverse iteration on S from a positive start. Scaled so the last entry is 1
/// when it is nonzero, otherwise to unit max-norm with a positive sum.
std::vector<double> oracle_eigenvector(const TridiagonalSystem& q, double lambda);

struct ReferencePair {
    double lambda0 = 0.0;
    std::vector<double> g;  // g_N = 1, strictly positive
};

constexpr std::size_t kDefaultOracleCap = 10000;

/// lambda0 = smallest eigenvalue of -Q and its Perron vector.
/// Throws std::length_error when N exceeds cap.
ReferencePair max_eigenpair_reference(const TridiagonalSystem& q,
                                      std::size_t cap = kDefaultOracleCap);

} // namespace maxeig
