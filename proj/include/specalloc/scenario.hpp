#pragma once

// Declarative analysis requests, read from JSON scenario documents:
//
//   {"name": "curves",
//    "analyses": [{"kind": "time_curves", "efficiency_ratio": 10,
//                  "scalable_fraction": [0.2, 0.5], "x_grid": {"lo": 0, "hi": 0.65, "count": 300}}]}
//
// Validation happens at parse time; any key not used by an analysis kind is
// rejected.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "specalloc/bandwidth.hpp"
#include "specalloc/sweep.hpp"

namespace specalloc {

enum class AnalysisKind {
  Eval,
  Optimize,
  Threshold,
  TimeCurves,
  Locus,
  PhaseBoundary,
  Classic,
  RegimeGrid,
};

std::string_view to_string(AnalysisKind kind) noexcept;
std::optional<AnalysisKind> parse_analysis_kind(std::string_view text) noexcept;
/// Table-producing kinds default to CSV output, scalar ones to JSON.
bool produces_table(AnalysisKind kind) noexcept;

/// Either a fixed efficiency ratio or the bandwidth friction model.
using RatioSpec = std::variant<double, FrictionModel>;

struct EvalRequest {
  double scalable_fraction;
  RatioSpec ratio;
  double allocation;
  friend bool operator==(const EvalRequest&, const EvalRequest&) = default;
};

struct OptimizeRequest {
  double scalable_fraction;
  RatioSpec ratio;
  friend bool operator==(const OptimizeRequest&, const OptimizeRequest&) = default;
};

/// At least one of the two is present.
struct ThresholdRequest {
  std::optional<double> scalable_fraction;
  std::optional<RatioSpec> ratio;
  friend bool operator==(const ThresholdRequest&, const ThresholdRequest&) = default;
};

struct TimeCurvesRequest {
  RatioSpec ratio;
  std::vector<double> scalable_fractions;
  SweepGrid x_grid;
  friend bool operator==(const TimeCurvesRequest&, const TimeCurvesRequest&) = default;
};

struct LocusRequest {
  RatioSpec ratio;
  SweepGrid s_grid;
  friend bool operator==(const LocusRequest&, const LocusRequest&) = default;
};

struct PhaseBoundaryRequest {
  SweepGrid s_grid;
  friend bool operator==(const PhaseBoundaryRequest&, const PhaseBoundaryRequest&) = default;
};

struct ClassicRequest {
  std::vector<double> parallel_fractions;
  SweepGrid n_grid;
  CurveForm form;
  friend bool operator==(const ClassicRequest&, const ClassicRequest&) = default;
};

struct RegimeGridRequest {
  SweepGrid s_grid;
  SweepGrid r_grid;
  friend bool operator==(const RegimeGridRequest&, const RegimeGridRequest&) = default;
};

using AnalysisRequest =
    std::variant<EvalRequest, OptimizeRequest, ThresholdRequest, TimeCurvesRequest, LocusRequest,
                 PhaseBoundaryRequest, ClassicRequest, RegimeGridRequest>;

AnalysisKind kind_of(const AnalysisRequest& request) noexcept;

struct Scenario {
  std::string name;
  std::vector<AnalysisRequest> analyses;
};

/// Throws SyntaxError on malformed JSON and ValidationError (naming the
/// offending field, e.g. "analyses[0].scalable_fraction") on schema or range
/// violations.
Scenario parse_scenario(std::string_view text);

/// Scalar results keep their insertion order; "regime" is a string, the rest numbers.
using ScalarValue = std::variant<double, std::string>;
struct NamedScalar {
  std::string key;
  ScalarValue value;
};

struct AnalysisResult {
  AnalysisRequest request;
  std::variant<std::vector<NamedScalar>, Table> output;
};

/// Runs one request. Model errors propagate (DegenerateInputError, SolverError, DomainError).
AnalysisResult run_analysis(const AnalysisRequest& request);
std::vector<AnalysisResult> run_scenario(const Scenario& scenario);

/// The result as a table; scalar results become a single row keyed by their main input.
Table as_table(const AnalysisResult& result);

/// "abscissa,<label>..." header, then one row per sample in abscissa order,
/// every line ending in a single '\n'. Throws DomainError when samples carry
/// different label sets.
std::string emit_csv(const Table& samples);

/// A JSON array holding one {"kind", "parameters", "results"} object per
/// analysis, numbers rendered by format_number. Parameters use the scenario
/// schema keys, so they parse back to the same request.
std::string emit_json(const std::vector<AnalysisResult>& results);

}  // namespace specalloc
