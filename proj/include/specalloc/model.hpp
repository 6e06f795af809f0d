#pragma once

// Baseline allocation model: a constrained hardware budget is split between
// specialized logic (share x) and programmable compute (share 1 - x).
//
//   T(x) = (1 - S) / (1 + (R - 1) x) + S / (1 - x)
//
// S is the value-scalable fraction of the workload and R the efficiency
// advantage of specialized hardware on the bounded remainder. T is strictly
// convex on [0, 1), so the optimum is either interior or pinned at x = 0.

#include <cmath>
#include <string_view>

namespace specalloc {

/// Allocations are clamped to [0, 1 - kAllocationEpsilon] to stay off the pole at x = 1.
inline constexpr double kAllocationEpsilon = 1e-9;
inline constexpr double kMaxAllocation = 1.0 - kAllocationEpsilon;

namespace detail {
[[noreturn]] void throw_bad_allocation(double value);
[[noreturn]] void throw_bad_time(double value);
}  // namespace detail

/// One modeled workload/hardware scenario (S, R).
class WorkloadPoint {
 public:
  /// Throws DomainError unless 0 <= S <= 1 and R >= 1, both finite.
  WorkloadPoint(double scalable_fraction, double efficiency_ratio);

  double scalable_fraction() const noexcept { return scalable_fraction_; }
  double efficiency_ratio() const noexcept { return efficiency_ratio_; }

  friend bool operator==(const WorkloadPoint&, const WorkloadPoint&) = default;

 private:
  double scalable_fraction_;
  double efficiency_ratio_;
};

/// Share x of the constrained resource given to specialized logic.
class AllocationFraction {
 public:
  /// Throws DomainError unless 0 <= x <= kMaxAllocation.
  explicit AllocationFraction(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0 || value > kMaxAllocation) detail::throw_bad_allocation(value);
  }

  static AllocationFraction zero() noexcept { return AllocationFraction(); }

  double value() const noexcept { return value_; }

  friend auto operator<=>(const AllocationFraction&, const AllocationFraction&) = default;

 private:
  AllocationFraction() = default;
  double value_ = 0.0;
};

/// Execution time normalized so that x = 0 takes exactly 1.
class NormalizedTime {
 public:
  /// Throws DomainError unless value > 0 and finite.
  explicit NormalizedTime(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) detail::throw_bad_time(value);
  }

  double value() const noexcept { return value_; }

  friend auto operator<=>(const NormalizedTime&, const NormalizedTime&) = default;

 private:
  double value_;
};

enum class Regime { Interior, Collapse };
enum class SolveMethod { ClosedForm, Numeric };

std::string_view to_string(Regime regime) noexcept;
std::string_view to_string(SolveMethod method) noexcept;

struct OptimalAllocation {
  AllocationFraction x_star;
  NormalizedTime time_at_optimum;
  Regime regime;
  SolveMethod method;
};

/// Parameters of the classical laws: parallel fraction P and processor count N.
class ClassicParams {
 public:
  /// Throws DomainError unless 0 <= P <= 1 and N >= 1, both finite. N may be fractional.
  ClassicParams(double parallel_fraction, double processors);

  double parallel_fraction() const noexcept { return parallel_fraction_; }
  double processors() const noexcept { return processors_; }

 private:
  double parallel_fraction_;
  double processors_;
};

inline NormalizedTime execution_time(const WorkloadPoint& point, AllocationFraction x) {
  const double s = point.scalable_fraction();
  const double r = point.efficiency_ratio();
  const double a = x.value();
  return NormalizedTime((1.0 - s) / (1.0 + (r - 1.0) * a) + s / (1.0 - a));
}

inline double execution_time_derivative(const WorkloadPoint& point, AllocationFraction x) {
  const double s = point.scalable_fraction();
  const double rm1 = point.efficiency_ratio() - 1.0;
  const double a = x.value();
  const double bounded = 1.0 + rm1 * a;
  const double programmable = 1.0 - a;
  return -(1.0 - s) * rm1 / (bounded * bounded) + s / (programmable * programmable);
}

inline double execution_time_second_derivative(const WorkloadPoint& point, AllocationFraction x) {
  const double s = point.scalable_fraction();
  const double rm1 = point.efficiency_ratio() - 1.0;
  const double a = x.value();
  const double bounded = 1.0 + rm1 * a;
  const double programmable = 1.0 - a;
  return 2.0 * (1.0 - s) * rm1 * rm1 / (bounded * bounded * bounded) +
         2.0 * s / (programmable * programmable * programmable);
}

/// S_c = 1 - 1/R. Throws DomainError for R < 1.
double collapse_threshold(double efficiency_ratio);

/// R_c = 1/(1 - S), the smallest R that justifies any specialization.
///
/// S is read as the decimal literal it round-trips to, so inputs such as 0.9
/// and 0.95 give exactly 10 and 20. Throws DomainError unless 0 <= S < 1.
double critical_ratio(double scalable_fraction);

/// Collapse iff S >= collapse_threshold(R). The boundary itself collapses:
/// T'(0) = 0 there and strict convexity pins the minimum to x = 0.
Regime classify(const WorkloadPoint& point);

/// Closed-form stationary point of T. Requires 0 < S < S_c(R); throws DomainError otherwise.
AllocationFraction interior_optimum(const WorkloadPoint& point);

/// Global minimizer of T over [0, 1). Throws DegenerateInputError for S = 0,
/// where the optimum runs off to the excluded endpoint x -> 1.
OptimalAllocation optimal_allocation(const WorkloadPoint& point);

double amdahl_speedup(const ClassicParams& params);
NormalizedTime amdahl_time(const ClassicParams& params);
double gustafson_speedup(const ClassicParams& params);

}  // namespace specalloc
