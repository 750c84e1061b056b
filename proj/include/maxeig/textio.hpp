#pragma once

#include "maxeig/contop.hpp"
#include "maxeig/dense.hpp"
#include "maxeig/tridiag.hpp"

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace maxeig {

/// Decimal literals separated by whitespace and/or commas.
/// Throws ParseError on anything that is not a finite number.
std::vector<double> parse_number_list(std::string_view text);

/// System file: three labeled arrays, one per line,
///
///     # comment
///     a: 1, 4, 9
///     b: 1 4 9
///     c: 0 0 0 16
///
/// Labels may be followed by ':' or '='. Blank lines and '#' comments are
/// ignored. An array may be empty (N = 0). Validation errors from the
/// system invariants are reported as ParseError.
TridiagonalSystem parse_system(std::istream& in);
TridiagonalSystem parse_system_file(const std::string& path);

/// Dense matrix: one row of decimal literals per line; a ';' also ends a row.
DenseMatrix parse_dense(std::istream& in);
DenseMatrix parse_dense_text(std::string_view text);

/// Built-in function families:
///   constant v            v
///   linear p0 p1          p0 + p1 x
///   power k e             k |x|^e
///   gaussian-drift s      -s x
///   table x0 y0 x1 y1 ... piecewise linear through the pairs (clamped)
RealFunction parse_function(std::string_view spec);

/// Operator file, one key per line:
///
///     interval: 0 1
///     theta: 0            (optional, default: left end)
///     a: constant 1
///     b: linear 0 -1
///     c: constant 0       (optional)
///     h: table 0 1 1 2    (optional)
///     truncated: left right   (optional)
Operator1D parse_operator(std::istream& in);
Operator1D parse_operator_file(const std::string& path);

} // namespace maxeig
