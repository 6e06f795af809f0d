#include "specalloc/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <system_error>

#include "specalloc/errors.hpp"
#include "specalloc/format.hpp"

namespace specalloc {

WorkloadPoint::WorkloadPoint(double scalable_fraction, double efficiency_ratio)
    : scalable_fraction_(scalable_fraction), efficiency_ratio_(efficiency_ratio) {
  if (!std::isfinite(scalable_fraction) || scalable_fraction < 0.0 || scalable_fraction > 1.0) {
    throw DomainError("scalable_fraction " + format_number_lenient(scalable_fraction) +
                      " outside [0,1]");
  }
  if (!std::isfinite(efficiency_ratio) || efficiency_ratio < 1.0) {
    throw DomainError("efficiency_ratio " + format_number_lenient(efficiency_ratio) +
                      " must be finite and >= 1");
  }
}

void detail::throw_bad_allocation(double value) {
  throw DomainError("allocation " + format_number_lenient(value) + " outside [0, 1-1e-9]");
}

void detail::throw_bad_time(double value) {
  throw DomainError("normalized time " + format_number_lenient(value) + " must be finite and positive");
}

ClassicParams::ClassicParams(double parallel_fraction, double processors)
    : parallel_fraction_(parallel_fraction), processors_(processors) {
  if (!std::isfinite(parallel_fraction) || parallel_fraction < 0.0 || parallel_fraction > 1.0) {
    throw DomainError("parallel_fraction " + format_number_lenient(parallel_fraction) +
                      " outside [0,1]");
  }
  if (!std::isfinite(processors) || processors < 1.0) {
    throw DomainError("processors " + format_number_lenient(processors) +
                      " must be finite and >= 1");
  }
}

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::Interior ? "interior" : "collapse";
}

std::string_view to_string(SolveMethod method) noexcept {
  return method == SolveMethod::ClosedForm ? "closed_form" : "numeric";
}

double collapse_threshold(double efficiency_ratio) {
  if (!std::isfinite(efficiency_ratio) || efficiency_ratio < 1.0) {
    throw DomainError("efficiency_ratio " + format_number_lenient(efficiency_ratio) +
                      " must be finite and >= 1");
  }
  return 1.0 - 1.0 / efficiency_ratio;
}

namespace {

// 10^k / (10^k - D) for S = D * 10^-k, rounded once from extended precision.
// Returns NaN when S has more decimals than fit in 64-bit integers.
double decimal_critical_ratio(double s) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), s, std::chars_format::scientific);
  if (res.ec != std::errc()) return std::nan("");
  const std::string text(buf, res.ptr);
  const auto e_pos = text.find('e');
  std::string mantissa = text.substr(0, e_pos);
  const int exponent = std::stoi(text.substr(e_pos + 1));
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) mantissa.erase(dot, 1);
  const int places = static_cast<int>(mantissa.size()) - 1 - exponent;
  if (places < 1 || places > 18) return std::nan("");

  std::uint64_t digits = 0;
  for (char c : mantissa) digits = digits * 10 + static_cast<std::uint64_t>(c - '0');
  std::uint64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  return static_cast<double>(static_cast<long double>(scale) /
                             static_cast<long double>(scale - digits));
}

}  // namespace

double critical_ratio(double scalable_fraction) {
  if (!std::isfinite(scalable_fraction) || scalable_fraction < 0.0 || scalable_fraction >= 1.0) {
    throw DomainError("scalable_fraction " + format_number_lenient(scalable_fraction) +
                      " outside [0,1); the critical ratio diverges at S = 1");
  }
  if (scalable_fraction == 0.0) return 1.0;
  const double decimal = decimal_critical_ratio(scalable_fraction);
  return std::isnan(decimal) ? 1.0 / (1.0 - scalable_fraction) : decimal;
}

Regime classify(const WorkloadPoint& point) {
  return point.scalable_fraction() >= collapse_threshold(point.efficiency_ratio())
             ? Regime::Collapse
             : Regime::Interior;
}

AllocationFraction interior_optimum(const WorkloadPoint& point) {
  const double s = point.scalable_fraction();
  const double r = point.efficiency_ratio();
  if (s <= 0.0 || classify(point) != Regime::Interior) {
    throw DomainError("interior_optimum requires 0 < S < 1 - 1/R, got S=" +
                      format_number_lenient(s) + " R=" + format_number_lenient(r));
  }
  const double rm1 = r - 1.0;
  const double root = std::sqrt((1.0 - s) * rm1 / s);
  // sqrt(q) - 1 rewritten as (q - 1)/(sqrt(q) + 1) to avoid cancellation near S_c.
  const double excess = std::fma(1.0 - s, rm1, -s) / s;
  const double x = excess / ((root + 1.0) * (root + rm1));
  // Past the clamp the constrained convex optimum is the clamp itself.
  return AllocationFraction(std::clamp(x, 0.0, kMaxAllocation));
}

OptimalAllocation optimal_allocation(const WorkloadPoint& point) {
  // Checked before the S = 0 case so that the flat objective (S = 0, R = 1) ties to x = 0.
  if (classify(point) == Regime::Collapse) {
    return {AllocationFraction::zero(), NormalizedTime(1.0), Regime::Collapse,
            SolveMethod::ClosedForm};
  }
  if (point.scalable_fraction() == 0.0) {
    throw DegenerateInputError(
        "degenerate scalable_fraction 0: the optimum sits at the excluded endpoint x -> 1");
  }
  const AllocationFraction x = interior_optimum(point);
  return {x, execution_time(point, x), Regime::Interior, SolveMethod::ClosedForm};
}

double amdahl_speedup(const ClassicParams& params) {
  return 1.0 / amdahl_time(params).value();
}

NormalizedTime amdahl_time(const ClassicParams& params) {
  const double p = params.parallel_fraction();
  return NormalizedTime((1.0 - p) + p / params.processors());
}

double gustafson_speedup(const ClassicParams& params) {
  const double p = params.parallel_fraction();
  return (1.0 - p) + p * params.processors();
}

}  // namespace specalloc
