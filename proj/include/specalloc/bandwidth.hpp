#pragma once

// Bandwidth-limited variant of the allocation model. Specialized compute
// loses efficiency as its share grows because data supply does not keep up:
//
//   R_eff(x) = R_max / (1 + gamma R_max x)
//   T_mem(x) = (1 - S) / (1 + (R_eff(x) - 1) x) + S / (1 - x)
//
// The derivative at the origin does not depend on gamma, so the collapse
// threshold is the baseline one with R = R_max. Convexity of T_mem is not
// known, so its interior optimum is found numerically with a global scan.
//
// Heavy friction can push R_eff below 1; the formula is evaluated as written.

#include "specalloc/model.hpp"

namespace specalloc {

class FrictionModel {
 public:
  /// Throws DomainError unless r_max >= 1 and gamma >= 0, both finite.
  FrictionModel(double r_max, double gamma);

  double r_max() const noexcept { return r_max_; }
  double gamma() const noexcept { return gamma_; }

  friend bool operator==(const FrictionModel&, const FrictionModel&) = default;

 private:
  double r_max_;
  double gamma_;
};

double effective_ratio(const FrictionModel& friction, AllocationFraction x);

/// Throws DomainError unless 0 <= S <= 1. With gamma = 0 this is bit-identical
/// to execution_time at R = r_max.
NormalizedTime execution_time_mem(double scalable_fraction, const FrictionModel& friction,
                                  AllocationFraction x);

/// -(1 - S)(R_max - 1) + S.
double mem_origin_derivative(double scalable_fraction, const FrictionModel& friction);

double mem_collapse_threshold(const FrictionModel& friction);

/// Collapse is answered in closed form: there T_mem(x) >= T(x) >= 1 = T_mem(0)
/// for every x. Interior points are solved by a 4096-point scan followed by
/// golden-section refinement. Throws DegenerateInputError for S = 0 and
/// SolverError if refinement fails.
OptimalAllocation optimal_allocation_mem(double scalable_fraction, const FrictionModel& friction);

}  // namespace specalloc
