#include "specalloc/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include <json.hpp>

#include "specalloc/errors.hpp"
#include "specalloc/format.hpp"

namespace specalloc {

namespace {

using Json = nlohmann::json;

constexpr std::array<std::pair<AnalysisKind, std::string_view>, 8> kKindNames{{
    {AnalysisKind::Eval, "eval"},
    {AnalysisKind::Optimize, "optimize"},
    {AnalysisKind::Threshold, "threshold"},
    {AnalysisKind::TimeCurves, "time_curves"},
    {AnalysisKind::Locus, "locus"},
    {AnalysisKind::PhaseBoundary, "phase_boundary"},
    {AnalysisKind::Classic, "classic"},
    {AnalysisKind::RegimeGrid, "regime_grid"},
}};

// Reads one analysis object. Every accessor records the key it consumed so
// leftovers can be reported as unknown.
class FieldReader {
 public:
  FieldReader(const Json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) fail(path_, "must be an object");
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ValidationError(field, field + " " + what);
  }

  std::string field(std::string_view key) const { return path_ + "." + std::string(key); }

  bool has(std::string_view key) const { return object_.contains(std::string(key)); }

  const Json& take(std::string_view key) {
    consumed_.insert(std::string(key));
    return object_.at(std::string(key));
  }

  double number(std::string_view key) { return as_number(take(key), field(key)); }

  double number_in(std::string_view key, double lo, double hi, std::string_view range) {
    const double v = number(key);
    if (v < lo || v > hi) fail(field(key), format_number(v) + " outside " + std::string(range));
    return v;
  }

  double require_in(std::string_view key, double lo, double hi, std::string_view range) {
    if (!has(key)) fail(field(key), "is required");
    return number_in(key, lo, hi, range);
  }

  std::vector<double> number_list(std::string_view key, bool allow_scalar) {
    const Json& node = take(key);
    const std::string name = field(key);
    std::vector<double> out;
    if (allow_scalar && node.is_number()) {
      out.push_back(as_number(node, name));
    } else if (node.is_array()) {
      for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(as_number(node[i], name + "[" + std::to_string(i) + "]"));
      }
    } else {
      fail(name, "must be an array of numbers");
    }
    if (out.empty()) fail(name, "must not be empty");
    return out;
  }

  std::optional<RatioSpec> ratio() {
    const bool fixed = has("efficiency_ratio");
    const bool friction = has("friction");
    if (fixed && friction) {
      fail(field("friction"), "cannot be combined with efficiency_ratio");
    }
    if (fixed) {
      const double r = number("efficiency_ratio");
      if (r < 1.0) fail(field("efficiency_ratio"), format_number(r) + " must be >= 1");
      return RatioSpec{r};
    }
    if (friction) {
      const Json& node = take("friction");
      const std::string name = field("friction");
      FieldReader inner(node, name);
      const double r_max = inner.require_in("r_max", 1.0, HUGE_VAL, "[1,inf)");
      const double gamma = inner.require_in("gamma", 0.0, HUGE_VAL, "[0,inf)");
      inner.reject_unknown();
      return RatioSpec{FrictionModel(r_max, gamma)};
    }
    return std::nullopt;
  }

  RatioSpec require_ratio() {
    auto r = ratio();
    if (!r) fail(field("efficiency_ratio"), "is required (or friction)");
    return *r;
  }

  SweepGrid grid(std::string_view key, const SweepGrid& fallback) {
    if (!has(key)) return fallback;
    FieldReader inner(take(key), field(key));
    const double lo = inner.require_in("lo", -HUGE_VAL, HUGE_VAL, "(-inf,inf)");
    const double hi = inner.require_in("hi", -HUGE_VAL, HUGE_VAL, "(-inf,inf)");
    if (!inner.has("count")) fail(inner.field("count"), "is required");
    const Json& count = inner.take("count");
    const double c = as_number(count, inner.field("count"));
    if (c != std::floor(c) || c < 2.0 || c > 1e8) {
      fail(inner.field("count"), format_number(c) + " must be an integer in [2, 1e8]");
    }
    inner.reject_unknown();
    if (!(lo < hi)) fail(field(key), "needs lo < hi, got " + format_number(lo) + ":" + format_number(hi));
    return SweepGrid(lo, hi, static_cast<std::size_t>(c));
  }

  void check_grid(std::string_view key, const SweepGrid& g, double lo, double hi, bool hi_open,
                  std::string_view range) const {
    const bool hi_bad = hi_open ? g.hi() >= hi : g.hi() > hi;
    if (g.lo() < lo || hi_bad) {
      fail(field(key), format_number(g.lo()) + ":" + format_number(g.hi()) + " outside " +
                           std::string(range));
    }
  }

  void reject_unknown() const {
    for (const auto& item : object_.items()) {
      if (!consumed_.contains(item.key())) fail(field(item.key()), "is not a known key");
    }
  }

 private:
  double as_number(const Json& node, const std::string& name) const {
    if (!node.is_number()) fail(name, "must be a number");
    const double v = node.get<double>();
    if (!std::isfinite(v)) fail(name, "must be finite");
    return v;
  }

  const Json& object_;
  std::string path_;
  std::set<std::string> consumed_;
};

AnalysisRequest parse_analysis(const Json& node, const std::string& path) {
  FieldReader in(node, path);
  if (!in.has("kind")) in.fail(in.field("kind"), "is required");
  const Json& kind_node = in.take("kind");
  if (!kind_node.is_string()) in.fail(in.field("kind"), "must be a string");
  const auto kind = parse_analysis_kind(kind_node.get<std::string>());
  if (!kind) in.fail(in.field("kind"), "'" + kind_node.get<std::string>() + "' is not a known kind");

  auto scalable = [&]() { return in.require_in("scalable_fraction", 0.0, 1.0, "[0,1]"); };

  AnalysisRequest request = [&]() -> AnalysisRequest {
    switch (*kind) {
      case AnalysisKind::Eval: {
        const double s = scalable();
        RatioSpec ratio = in.require_ratio();
        const double x = in.require_in("allocation", 0.0, kMaxAllocation, "[0,1-1e-9]");
        return EvalRequest{s, ratio, x};
      }
      case AnalysisKind::Optimize: {
        const double s = scalable();
        return OptimizeRequest{s, in.require_ratio()};
      }
      case AnalysisKind::Threshold: {
        ThresholdRequest t;
        if (in.has("scalable_fraction")) {
          t.scalable_fraction = in.number_in("scalable_fraction", 0.0, 1.0, "[0,1]");
          if (*t.scalable_fraction >= 1.0) {
            in.fail(in.field("scalable_fraction"),
                    "1 outside [0,1): the critical ratio diverges at S = 1");
          }
        }
        t.ratio = in.ratio();
        if (!t.scalable_fraction && !t.ratio) {
          in.fail(in.field("efficiency_ratio"), "is required (or friction or scalable_fraction)");
        }
        return t;
      }
      case AnalysisKind::TimeCurves: {
        RatioSpec ratio = in.require_ratio();
        if (!in.has("scalable_fraction")) in.fail(in.field("scalable_fraction"), "is required");
        std::vector<double> fractions = in.number_list("scalable_fraction", true);
        for (std::size_t i = 0; i < fractions.size(); ++i) {
          if (fractions[i] < 0.0 || fractions[i] > 1.0) {
            in.fail(in.field("scalable_fraction"),
                    format_number(fractions[i]) + " outside [0,1]");
          }
        }
        const SweepGrid g = in.grid("x_grid", default_allocation_grid());
        in.check_grid("x_grid", g, 0.0, kMaxAllocation, false, "[0,1-1e-9]");
        return TimeCurvesRequest{ratio, std::move(fractions), g};
      }
      case AnalysisKind::Locus: {
        RatioSpec ratio = in.require_ratio();
        const SweepGrid g = in.grid("s_grid", default_locus_grid());
        in.check_grid("s_grid", g, 0.0, 1.0, false, "[0,1]");
        return LocusRequest{ratio, g};
      }
      case AnalysisKind::PhaseBoundary: {
        const SweepGrid g = in.grid("s_grid", default_boundary_grid());
        in.check_grid("s_grid", g, 0.0, 1.0, true, "[0,1)");
        return PhaseBoundaryRequest{g};
      }
      case AnalysisKind::Classic: {
        if (!in.has("parallel_fractions")) in.fail(in.field("parallel_fractions"), "is required");
        std::vector<double> fractions = in.number_list("parallel_fractions", false);
        for (double p : fractions) {
          if (p < 0.0 || p > 1.0) {
            in.fail(in.field("parallel_fractions"), format_number(p) + " outside [0,1]");
          }
        }
        const SweepGrid g = in.grid("n_grid", default_processor_grid());
        in.check_grid("n_grid", g, 1.0, HUGE_VAL, false, "[1,inf)");
        CurveForm form = CurveForm::Speedup;
        if (in.has("form")) {
          const Json& f = in.take("form");
          if (f == "time") {
            form = CurveForm::Time;
          } else if (f != "speedup") {
            in.fail(in.field("form"), "must be \"speedup\" or \"time\"");
          }
        }
        return ClassicRequest{std::move(fractions), g, form};
      }
      case AnalysisKind::RegimeGrid: {
        const SweepGrid s = in.grid("s_grid", default_boundary_grid());
        in.check_grid("s_grid", s, 0.0, 1.0, true, "[0,1)");
        const SweepGrid r = in.grid("r_grid", default_ratio_grid());
        in.check_grid("r_grid", r, 1.0, HUGE_VAL, false, "[1,inf)");
        return RegimeGridRequest{s, r};
      }
    }
    in.fail(in.field("kind"), "is not handled");
  }();

  in.reject_unknown();
  return request;
}

// ---------------------------------------------------------------------------
// Emission

class JsonWriter {
 public:
  void raw(std::string_view text) { out_ += text; }
  void string(std::string_view text) { out_ += Json(std::string(text)).dump(); }
  void number(double v) { out_ += format_number(v); }
  void key(std::string_view k) {
    separator();
    string(k);
    out_ += ':';
    first_ = true;
  }
  void separator() {
    if (!first_) out_ += ',';
    first_ = false;
  }
  void open(char c) {
    separator();
    out_ += c;
    first_ = true;
  }
  void close(char c) {
    out_ += c;
    first_ = false;
  }
  void value(double v) {
    separator();
    number(v);
  }
  void value(std::string_view s) {
    separator();
    string(s);
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
  bool first_ = true;
};

void write_grid(JsonWriter& w, std::string_view key, const SweepGrid& g) {
  w.key(key);
  w.open('{');
  w.key("lo");
  w.value(g.lo());
  w.key("hi");
  w.value(g.hi());
  w.key("count");
  w.separator();
  w.raw(std::to_string(g.count()));
  w.close('}');
}

void write_ratio(JsonWriter& w, const RatioSpec& ratio) {
  if (const double* r = std::get_if<double>(&ratio)) {
    w.key("efficiency_ratio");
    w.value(*r);
    return;
  }
  const auto& fm = std::get<FrictionModel>(ratio);
  w.key("friction");
  w.open('{');
  w.key("r_max");
  w.value(fm.r_max());
  w.key("gamma");
  w.value(fm.gamma());
  w.close('}');
}

void write_list(JsonWriter& w, std::string_view key, const std::vector<double>& values) {
  w.key(key);
  w.open('[');
  for (double v : values) w.value(v);
  w.close(']');
}

// Keys follow the schema order: scalable_fraction, efficiency_ratio/friction,
// allocation, grids, parallel_fractions, form.
void write_parameters(JsonWriter& w, const AnalysisRequest& request) {
  w.key("parameters");
  w.open('{');
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, EvalRequest>) {
          w.key("scalable_fraction");
          w.value(r.scalable_fraction);
          write_ratio(w, r.ratio);
          w.key("allocation");
          w.value(r.allocation);
        } else if constexpr (std::is_same_v<T, OptimizeRequest>) {
          w.key("scalable_fraction");
          w.value(r.scalable_fraction);
          write_ratio(w, r.ratio);
        } else if constexpr (std::is_same_v<T, ThresholdRequest>) {
          if (r.scalable_fraction) {
            w.key("scalable_fraction");
            w.value(*r.scalable_fraction);
          }
          if (r.ratio) write_ratio(w, *r.ratio);
        } else if constexpr (std::is_same_v<T, TimeCurvesRequest>) {
          write_list(w, "scalable_fraction", r.scalable_fractions);
          write_ratio(w, r.ratio);
          write_grid(w, "x_grid", r.x_grid);
        } else if constexpr (std::is_same_v<T, LocusRequest>) {
          write_ratio(w, r.ratio);
          write_grid(w, "s_grid", r.s_grid);
        } else if constexpr (std::is_same_v<T, PhaseBoundaryRequest>) {
          write_grid(w, "s_grid", r.s_grid);
        } else if constexpr (std::is_same_v<T, ClassicRequest>) {
          write_grid(w, "n_grid", r.n_grid);
          write_list(w, "parallel_fractions", r.parallel_fractions);
          w.key("form");
          w.value(r.form == CurveForm::Speedup ? "speedup" : "time");
        } else if constexpr (std::is_same_v<T, RegimeGridRequest>) {
          write_grid(w, "s_grid", r.s_grid);
          write_grid(w, "r_grid", r.r_grid);
        }
      },
      request);
  w.close('}');
}

std::vector<std::string> labels_of(const CurveSample& sample) {
  std::vector<std::string> labels;
  for (const auto& v : sample.values) labels.push_back(v.label);
  return labels;
}

Table sorted_checked(const Table& samples) {
  if (!samples.empty()) {
    const auto labels = labels_of(samples.front());
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
      throw DomainError("duplicate column label within a sample");
    }
    for (const auto& s : samples) {
      if (labels_of(s) != labels) throw DomainError("samples carry inconsistent label sets");
    }
  }
  Table sorted = samples;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CurveSample& a, const CurveSample& b) { return a.abscissa < b.abscissa; });
  return sorted;
}

void write_results(JsonWriter& w, const AnalysisResult& result) {
  w.key("results");
  w.open('{');
  if (const auto* scalars = std::get_if<std::vector<NamedScalar>>(&result.output)) {
    for (const auto& item : *scalars) {
      w.key(item.key);
      std::visit([&](const auto& v) { w.value(v); }, item.value);
    }
  } else {
    const Table table = sorted_checked(std::get<Table>(result.output));
    w.key("columns");
    w.open('[');
    w.value(std::string_view("abscissa"));
    if (!table.empty()) {
      for (const auto& label : labels_of(table.front())) w.value(label);
    }
    w.close(']');
    w.key("rows");
    w.open('[');
    for (const auto& row : table) {
      w.open('[');
      w.value(row.abscissa);
      for (const auto& v : row.values) w.value(v.value);
      w.close(']');
    }
    w.close(']');
  }
  w.close('}');
}

std::vector<NamedScalar> threshold_results(const ThresholdRequest& r) {
  std::vector<NamedScalar> out;
  if (r.ratio) {
    const double s_c = std::holds_alternative<double>(*r.ratio)
                           ? collapse_threshold(std::get<double>(*r.ratio))
                           : mem_collapse_threshold(std::get<FrictionModel>(*r.ratio));
    out.push_back({"s_c", s_c});
  }
  if (r.scalable_fraction) out.push_back({"r_c", critical_ratio(*r.scalable_fraction)});
  return out;
}

}  // namespace

std::string_view to_string(AnalysisKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<AnalysisKind> parse_analysis_kind(std::string_view text) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

bool produces_table(AnalysisKind kind) noexcept {
  return kind != AnalysisKind::Eval && kind != AnalysisKind::Optimize &&
         kind != AnalysisKind::Threshold;
}

AnalysisKind kind_of(const AnalysisRequest& request) noexcept {
  return static_cast<AnalysisKind>(request.index());
}

Scenario parse_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw SyntaxError(std::string("malformed scenario document: ") + e.what());
  }
  FieldReader top(doc, "scenario");
  if (!top.has("name")) top.fail("name", "is required");
  const Json& name = top.take("name");
  if (!name.is_string() || name.get<std::string>().empty()) {
    top.fail("name", "must be a non-empty string");
  }
  if (!top.has("analyses")) top.fail("analyses", "is required");
  const Json& analyses = top.take("analyses");
  if (!analyses.is_array() || analyses.empty()) top.fail("analyses", "must be a non-empty array");
  for (const auto& item : doc.items()) {
    if (item.key() != "name" && item.key() != "analyses") top.fail(item.key(), "is not a known key");
  }

  Scenario scenario{name.get<std::string>(), {}};
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    scenario.analyses.push_back(parse_analysis(analyses[i], "analyses[" + std::to_string(i) + "]"));
  }
  return scenario;
}

AnalysisResult run_analysis(const AnalysisRequest& request) {
  auto output = std::visit(
      [](const auto& r) -> std::variant<std::vector<NamedScalar>, Table> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, EvalRequest>) {
          const AllocationFraction x(r.allocation);
          if (const double* ratio = std::get_if<double>(&r.ratio)) {
            return std::vector<NamedScalar>{
                {"time", execution_time(WorkloadPoint(r.scalable_fraction, *ratio), x).value()}};
          }
          const auto& fm = std::get<FrictionModel>(r.ratio);
          return std::vector<NamedScalar>{
              {"time", execution_time_mem(r.scalable_fraction, fm, x).value()},
              {"effective_ratio", effective_ratio(fm, x)}};
        } else if constexpr (std::is_same_v<T, OptimizeRequest>) {
          const OptimalAllocation opt =
              std::holds_alternative<double>(r.ratio)
                  ? optimal_allocation(WorkloadPoint(r.scalable_fraction, std::get<double>(r.ratio)))
                  : optimal_allocation_mem(r.scalable_fraction, std::get<FrictionModel>(r.ratio));
          return std::vector<NamedScalar>{{"x_star", opt.x_star.value()},
                                          {"time", opt.time_at_optimum.value()},
                                          {"regime", std::string(to_string(opt.regime))}};
        } else if constexpr (std::is_same_v<T, ThresholdRequest>) {
          return threshold_results(r);
        } else if constexpr (std::is_same_v<T, TimeCurvesRequest>) {
          return std::visit([&](const auto& ratio) { return time_curves(ratio, r.scalable_fractions, r.x_grid); },
                            r.ratio);
        } else if constexpr (std::is_same_v<T, LocusRequest>) {
          return std::visit([&](const auto& ratio) { return optimal_locus(ratio, r.s_grid); }, r.ratio);
        } else if constexpr (std::is_same_v<T, PhaseBoundaryRequest>) {
          return phase_boundary(r.s_grid);
        } else if constexpr (std::is_same_v<T, ClassicRequest>) {
          return classic_curves(r.parallel_fractions, r.n_grid, r.form);
        } else {
          return regime_grid(r.s_grid, r.r_grid);
        }
      },
      request);
  return {request, std::move(output)};
}

std::vector<AnalysisResult> run_scenario(const Scenario& scenario) {
  std::vector<AnalysisResult> results;
  results.reserve(scenario.analyses.size());
  for (const auto& request : scenario.analyses) results.push_back(run_analysis(request));
  return results;
}

Table as_table(const AnalysisResult& result) {
  if (const auto* table = std::get_if<Table>(&result.output)) return *table;
  const auto& scalars = std::get<std::vector<NamedScalar>>(result.output);

  double abscissa = 0.0;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, EvalRequest>) {
          abscissa = r.allocation;
        } else if constexpr (std::is_same_v<T, OptimizeRequest>) {
          abscissa = r.scalable_fraction;
        } else if constexpr (std::is_same_v<T, ThresholdRequest>) {
          if (r.scalable_fraction) {
            abscissa = *r.scalable_fraction;
          } else if (const double* ratio = std::get_if<double>(&*r.ratio)) {
            abscissa = *ratio;
          } else {
            abscissa = std::get<FrictionModel>(*r.ratio).r_max();
          }
        }
      },
      result.request);

  CurveSample row{abscissa, {}};
  for (const auto& item : scalars) {
    if (const double* v = std::get_if<double>(&item.value)) {
      row.values.push_back({item.key, *v});
    } else {
      row.values.push_back({"collapse", std::get<std::string>(item.value) == "collapse" ? 1.0 : 0.0});
    }
  }
  return {row};
}

std::string emit_csv(const Table& samples) {
  const Table table = sorted_checked(samples);
  std::string out = "abscissa";
  if (!table.empty()) {
    for (const auto& label : labels_of(table.front())) {
      out += ',';
      out += label;
    }
  }
  out += '\n';
  for (const auto& row : table) {
    out += format_number(row.abscissa);
    for (const auto& v : row.values) {
      out += ',';
      out += format_number(v.value);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const std::vector<AnalysisResult>& results) {
  JsonWriter w;
  w.open('[');
  for (const auto& result : results) {
    w.open('{');
    w.key("kind");
    w.value(to_string(kind_of(result.request)));
    write_parameters(w, result.request);
    write_results(w, result);
    w.close('}');
  }
  w.close(']');
  w.raw("\n");
  return w.take();
}

}  // namespace specalloc
