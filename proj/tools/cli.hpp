#pragma once

#include "maxeig/iterate.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maxeig::cli {

/// One requested checkpoint of an iteration trace; z is empty when the
/// trace stopped before step k.
struct TraceRow {
    std::size_t k = 0;
    std::optional<double> z;
};

/// 0..10, 50, 100, 200, ..., 900, 990, 1000 (the layout of the classical
/// power-iteration table).
std::vector<std::size_t> default_checkpoints();

/// Rows at the requested steps; an empty checkpoint list selects every step.
std::vector<TraceRow> emit_trace(const IterationTrace& trace, std::span<const std::size_t> checkpoints);

/// Printing conventions: 6 significant digits for people, 17 for machines.
std::string format_number(double value, bool machine);

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on a
/// numerical failure, 2 on a usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace maxeig::cli
