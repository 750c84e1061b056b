#include "maxeig/errors.hpp"

namespace maxeig {

ZeroEigenvalueError::ZeroEigenvalueError()
    : std::domain_error("system has no killing: maximal eigenvalue is 0 "
                        "with a constant eigenvector")
{
}

} // namespace maxeig
