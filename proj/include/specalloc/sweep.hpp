#pragma once

// Tabular datasets over parameter grids: time-allocation curves, the optimal
// locus, the phase boundary R_c(S), classical-law curves and regime maps.
// Rows come out ordered by abscissa.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specalloc/bandwidth.hpp"
#include "specalloc/model.hpp"

namespace specalloc {

/// Linear grid lo + i (hi - lo)/(count - 1), i = 0..count-1.
class SweepGrid {
 public:
  /// Throws DomainError unless lo < hi (finite) and count >= 2.
  SweepGrid(double lo, double hi, std::size_t count);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t count() const noexcept { return count_; }

  /// The last sample is exactly hi.
  double at(std::size_t i) const;
  std::vector<double> samples() const;

  friend bool operator==(const SweepGrid&, const SweepGrid&) = default;

 private:
  double lo_;
  double hi_;
  std::size_t count_;
};

struct LabeledValue {
  std::string label;
  double value;

  friend bool operator==(const LabeledValue&, const LabeledValue&) = default;
};

struct CurveSample {
  double abscissa;
  std::vector<LabeledValue> values;

  friend bool operator==(const CurveSample&, const CurveSample&) = default;
};

using Table = std::vector<CurveSample>;

enum class CurveForm { Speedup, Time };

// Default grids.
SweepGrid default_allocation_grid();    // x in [0, 0.65], 300 points
SweepGrid default_locus_grid();         // S in [0.01, 0.9], 200 points
SweepGrid default_boundary_grid();      // S in [0, 0.966], 300 points
SweepGrid default_processor_grid();     // N in [1, 64], 200 points
SweepGrid default_ratio_grid();         // R in [1, 30], 59 points

/// Column label for one scalable fraction, e.g. "S=0.2".
std::string scalable_label(double scalable_fraction);

/// T(x) per S, one row per x. Columns are labeled by scalable_label.
Table time_curves(double efficiency_ratio, std::span<const double> scalable_fractions,
                  const SweepGrid& x_grid);
/// Same as above with T_mem.
Table time_curves(const FrictionModel& friction, std::span<const double> scalable_fractions,
                  const SweepGrid& x_grid);

/// Columns "x_star" and "time" per S. Collapse rows report (0, 1).
Table optimal_locus(double efficiency_ratio, const SweepGrid& s_grid);
Table optimal_locus(const FrictionModel& friction, const SweepGrid& s_grid);

/// Column "r_c" per S. Throws DomainError if the grid reaches S = 1.
Table phase_boundary(const SweepGrid& s_grid);

/// Columns "amdahl_P=<p>" for every P, then "gustafson_P=<p>". The time form
/// of Gustafson's law is the reciprocal of its speedup.
Table classic_curves(std::span<const double> parallel_fractions, const SweepGrid& n_grid,
                     CurveForm form);

/// One row per (S, R) cell, S-major. Columns "R", "x_star" and "collapse" (1 or 0).
Table regime_grid(const SweepGrid& s_grid, const SweepGrid& r_grid);

}  // namespace specalloc
