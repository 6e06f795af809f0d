#include "specalloc/numerics.hpp"

#include "specalloc/format.hpp"

namespace specalloc::numerics::detail {

void throw_non_finite(double x, double fx) {
  throw SolverError("function returned non-finite value " + format_number_lenient(fx) +
                    " at x=" + format_number_lenient(x));
}

void throw_bad_interval(const char* op, double lo, double hi) {
  throw DomainError(std::string(op) + ": invalid interval [" + format_number_lenient(lo) + ", " +
                    format_number_lenient(hi) + "]");
}

void throw_no_convergence(const char* op, double width, double tol) {
  throw SolverError(std::string(op) + ": bracket width " + format_number_lenient(width) +
                    " did not reach tolerance " + format_number_lenient(tol));
}

}  // namespace specalloc::numerics::detail
