#pragma once

#include <ostream>

namespace splab::cli {

// Exit codes: 0 success, 1 a validate check failed, 2 usage or parameter
// error, 3 a computation could not be completed (precision, quadrature,
// convergence or resource limits).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace splab::cli
