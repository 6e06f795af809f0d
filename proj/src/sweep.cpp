#include "specalloc/sweep.hpp"

#include <cmath>

#include "specalloc/errors.hpp"
#include "specalloc/format.hpp"

namespace specalloc {

SweepGrid::SweepGrid(double lo, double hi, std::size_t count) : lo_(lo), hi_(hi), count_(count) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("grid needs finite lo < hi, got " + format_number_lenient(lo) + ":" +
                      format_number_lenient(hi));
  }
  if (count < 2) throw DomainError("grid count must be >= 2, got " + std::to_string(count));
}

double SweepGrid::at(std::size_t i) const {
  if (i >= count_) throw DomainError("grid index out of range");
  if (i + 1 == count_) return hi_;
  return lo_ + static_cast<double>(i) * (hi_ - lo_) / static_cast<double>(count_ - 1);
}

std::vector<double> SweepGrid::samples() const {
  std::vector<double> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) out.push_back(at(i));
  return out;
}

SweepGrid default_allocation_grid() { return {0.0, 0.65, 300}; }
SweepGrid default_locus_grid() { return {0.01, 0.9, 200}; }
SweepGrid default_boundary_grid() { return {0.0, 0.966, 300}; }
SweepGrid default_processor_grid() { return {1.0, 64.0, 200}; }
SweepGrid default_ratio_grid() { return {1.0, 30.0, 59}; }

std::string scalable_label(double scalable_fraction) {
  return "S=" + format_number(scalable_fraction);
}

namespace {

template <typename TimeAt>
Table time_table(std::span<const double> scalable_fractions, const SweepGrid& x_grid,
                 TimeAt time_at) {
  std::vector<std::string> labels;
  for (double s : scalable_fractions) labels.push_back(scalable_label(s));

  Table table;
  table.reserve(x_grid.count());
  for (double x : x_grid.samples()) {
    const AllocationFraction allocation(x);
    CurveSample row{x, {}};
    for (std::size_t i = 0; i < scalable_fractions.size(); ++i) {
      row.values.push_back({labels[i], time_at(scalable_fractions[i], allocation)});
    }
    table.push_back(std::move(row));
  }
  return table;
}

CurveSample locus_row(double s, const OptimalAllocation& opt) {
  return {s, {{"x_star", opt.x_star.value()}, {"time", opt.time_at_optimum.value()}}};
}

}  // namespace

Table time_curves(double efficiency_ratio, std::span<const double> scalable_fractions,
                  const SweepGrid& x_grid) {
  for (double s : scalable_fractions) static_cast<void>(WorkloadPoint(s, efficiency_ratio));
  return time_table(scalable_fractions, x_grid, [&](double s, AllocationFraction x) {
    return execution_time(WorkloadPoint(s, efficiency_ratio), x).value();
  });
}

Table time_curves(const FrictionModel& friction, std::span<const double> scalable_fractions,
                  const SweepGrid& x_grid) {
  return time_table(scalable_fractions, x_grid, [&](double s, AllocationFraction x) {
    return execution_time_mem(s, friction, x).value();
  });
}

Table optimal_locus(double efficiency_ratio, const SweepGrid& s_grid) {
  Table table;
  for (double s : s_grid.samples()) {
    table.push_back(locus_row(s, optimal_allocation(WorkloadPoint(s, efficiency_ratio))));
  }
  return table;
}

Table optimal_locus(const FrictionModel& friction, const SweepGrid& s_grid) {
  Table table;
  for (double s : s_grid.samples()) {
    table.push_back(locus_row(s, optimal_allocation_mem(s, friction)));
  }
  return table;
}

Table phase_boundary(const SweepGrid& s_grid) {
  Table table;
  for (double s : s_grid.samples()) table.push_back({s, {{"r_c", critical_ratio(s)}}});
  return table;
}

Table classic_curves(std::span<const double> parallel_fractions, const SweepGrid& n_grid,
                     CurveForm form) {
  for (double p : parallel_fractions) static_cast<void>(ClassicParams(p, 1.0));
  if (n_grid.lo() < 1.0) {
    throw DomainError("processor grid must start at N >= 1, got " + format_number(n_grid.lo()));
  }
  Table table;
  for (double n : n_grid.samples()) {
    CurveSample row{n, {}};
    for (double p : parallel_fractions) {
      const ClassicParams params(p, n);
      const double value =
          form == CurveForm::Speedup ? amdahl_speedup(params) : amdahl_time(params).value();
      row.values.push_back({"amdahl_P=" + format_number(p), value});
    }
    for (double p : parallel_fractions) {
      const double speedup = gustafson_speedup(ClassicParams(p, n));
      row.values.push_back(
          {"gustafson_P=" + format_number(p), form == CurveForm::Speedup ? speedup : 1.0 / speedup});
    }
    table.push_back(std::move(row));
  }
  return table;
}

Table regime_grid(const SweepGrid& s_grid, const SweepGrid& r_grid) {
  if (s_grid.hi() >= 1.0) {
    throw DomainError("regime grid needs S < 1, got hi=" + format_number(s_grid.hi()));
  }
  const std::vector<double> ratios = r_grid.samples();
  Table table;
  for (double s : s_grid.samples()) {
    for (double r : ratios) {
      const WorkloadPoint point(s, r);
      const Regime regime = classify(point);
      double x_star = 0.0;
      if (regime == Regime::Interior) {
        // S = 0 has no finite optimum; report the clamp, where T is smallest on [0, 1 - 1e-9].
        x_star = s == 0.0 ? kMaxAllocation : interior_optimum(point).value();
      }
      table.push_back({s,
                       {{"R", r},
                        {"x_star", x_star},
                        {"collapse", regime == Regime::Collapse ? 1.0 : 0.0}}});
    }
  }
  return table;
}

}  // namespace specalloc
