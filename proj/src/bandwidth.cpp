#include "specalloc/bandwidth.hpp"

#include <cmath>

#include "specalloc/errors.hpp"
#include "specalloc/format.hpp"
#include "specalloc/numerics.hpp"

namespace specalloc {

namespace {

constexpr double kRefineTolerance = 1e-10;

void check_scalable_fraction(double s) {
  if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
    throw DomainError("scalable_fraction " + format_number_lenient(s) + " outside [0,1]");
  }
}

}  // namespace

FrictionModel::FrictionModel(double r_max, double gamma) : r_max_(r_max), gamma_(gamma) {
  if (!std::isfinite(r_max) || r_max < 1.0) {
    throw DomainError("r_max " + format_number_lenient(r_max) + " must be finite and >= 1");
  }
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw DomainError("gamma " + format_number_lenient(gamma) + " must be finite and >= 0");
  }
}

double effective_ratio(const FrictionModel& friction, AllocationFraction x) {
  const double r_max = friction.r_max();
  return r_max / (1.0 + friction.gamma() * r_max * x.value());
}

NormalizedTime execution_time_mem(double scalable_fraction, const FrictionModel& friction,
                                  AllocationFraction x) {
  check_scalable_fraction(scalable_fraction);
  const double s = scalable_fraction;
  const double r = effective_ratio(friction, x);
  const double a = x.value();
  // Same expression shape as execution_time so that gamma = 0 matches bit for bit.
  return NormalizedTime((1.0 - s) / (1.0 + (r - 1.0) * a) + s / (1.0 - a));
}

double mem_origin_derivative(double scalable_fraction, const FrictionModel& friction) {
  check_scalable_fraction(scalable_fraction);
  return -(1.0 - scalable_fraction) * (friction.r_max() - 1.0) + scalable_fraction;
}

double mem_collapse_threshold(const FrictionModel& friction) {
  return collapse_threshold(friction.r_max());
}

OptimalAllocation optimal_allocation_mem(double scalable_fraction, const FrictionModel& friction) {
  check_scalable_fraction(scalable_fraction);
  if (scalable_fraction >= mem_collapse_threshold(friction)) {
    return {AllocationFraction::zero(), NormalizedTime(1.0), Regime::Collapse,
            SolveMethod::ClosedForm};
  }
  if (scalable_fraction == 0.0) {
    throw DegenerateInputError(
        "degenerate scalable_fraction 0: the optimum sits at the excluded endpoint x -> 1");
  }

  auto objective = [&](double x) {
    return execution_time_mem(scalable_fraction, friction, AllocationFraction(x)).value();
  };
  const numerics::MinimizeResult best =
      numerics::seeded_minimum(objective, 0.0, kMaxAllocation, kRefineTolerance);
  return {AllocationFraction(best.x_min), NormalizedTime(best.f_min), Regime::Interior,
          SolveMethod::Numeric};
}

}  // namespace specalloc
