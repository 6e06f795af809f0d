#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "specalloc/bandwidth.hpp"
#include "specalloc/cli.hpp"
#include "specalloc/errors.hpp"
#include "specalloc/format.hpp"
#include "specalloc/model.hpp"
#include "specalloc/scenario.hpp"
#include "specalloc/sweep.hpp"

namespace py = pybind11;
using namespace specalloc;

namespace {

py::dict to_dict(const OptimalAllocation& opt) {
  py::dict d;
  d["x_star"] = opt.x_star.value();
  d["time"] = opt.time_at_optimum.value();
  d["regime"] = std::string(to_string(opt.regime));
  d["method"] = std::string(to_string(opt.method));
  return d;
}

double time_of(double s, double r, double x) {
  return execution_time(WorkloadPoint(s, r), AllocationFraction(x)).value();
}

// (columns, rows) with the abscissa as the first column.
py::tuple to_columns(const Table& table) {
  py::list columns;
  columns.append("abscissa");
  if (!table.empty()) {
    for (const auto& v : table.front().values) columns.append(v.label);
  }
  py::list rows;
  for (const auto& sample : table) {
    py::list row;
    row.append(sample.abscissa);
    for (const auto& v : sample.values) row.append(v.value);
    rows.append(row);
  }
  return py::make_tuple(columns, rows);
}

}  // namespace

PYBIND11_MODULE(_specalloc, m) {
  m.doc() = "Optimal specialization allocation model";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", error.ptr());
  py::register_exception<SolverError>(m, "SolverError", error.ptr());
  py::register_exception<SyntaxError>(m, "ScenarioSyntaxError", error.ptr());

  m.attr("MAX_ALLOCATION") = kMaxAllocation;

  m.def("execution_time", &time_of, py::arg("scalable_fraction"), py::arg("efficiency_ratio"),
        py::arg("allocation"), "Normalized execution time T(x)");
  m.def(
      "execution_time_derivative",
      [](double s, double r, double x) { return execution_time_derivative(WorkloadPoint(s, r), AllocationFraction(x)); },
      py::arg("scalable_fraction"), py::arg("efficiency_ratio"), py::arg("allocation"));
  m.def(
      "execution_time_second_derivative",
      [](double s, double r, double x) {
        return execution_time_second_derivative(WorkloadPoint(s, r), AllocationFraction(x));
      },
      py::arg("scalable_fraction"), py::arg("efficiency_ratio"), py::arg("allocation"));
  m.def("collapse_threshold", &collapse_threshold, py::arg("efficiency_ratio"));
  m.def("critical_ratio", &critical_ratio, py::arg("scalable_fraction"));
  m.def(
      "optimal_allocation", [](double s, double r) { return to_dict(optimal_allocation(WorkloadPoint(s, r))); },
      py::arg("scalable_fraction"), py::arg("efficiency_ratio"));

  m.def(
      "effective_ratio",
      [](double r_max, double gamma, double x) { return effective_ratio(FrictionModel(r_max, gamma), AllocationFraction(x)); },
      py::arg("r_max"), py::arg("gamma"), py::arg("allocation"));
  m.def(
      "execution_time_mem",
      [](double s, double r_max, double gamma, double x) {
        return execution_time_mem(s, FrictionModel(r_max, gamma), AllocationFraction(x)).value();
      },
      py::arg("scalable_fraction"), py::arg("r_max"), py::arg("gamma"), py::arg("allocation"));
  m.def(
      "optimal_allocation_mem",
      [](double s, double r_max, double gamma) { return to_dict(optimal_allocation_mem(s, FrictionModel(r_max, gamma))); },
      py::arg("scalable_fraction"), py::arg("r_max"), py::arg("gamma"));

  m.def(
      "amdahl_speedup", [](double p, double n) { return amdahl_speedup(ClassicParams(p, n)); },
      py::arg("parallel_fraction"), py::arg("processors"));
  m.def(
      "gustafson_speedup", [](double p, double n) { return gustafson_speedup(ClassicParams(p, n)); },
      py::arg("parallel_fraction"), py::arg("processors"));

  m.def("format_number", &format_number, py::arg("value"));

  m.def(
      "run_scenario_json",
      [](const std::string& text) { return emit_json(run_scenario(parse_scenario(text))); }, py::arg("document"),
      "Run a scenario document and return the JSON results document");
  m.def(
      "run_scenario_csv",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& result : run_scenario(parse_scenario(text))) out.push_back(emit_csv(as_table(result)));
        return out;
      },
      py::arg("document"), "Run a scenario document and return one CSV document per analysis");
  m.def(
      "run_scenario_tables",
      [](const std::string& text) {
        py::list out;
        for (const auto& result : run_scenario(parse_scenario(text))) out.append(to_columns(as_table(result)));
        return out;
      },
      py::arg("document"), "Run a scenario document and return (columns, rows) per analysis");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "specalloc");
        std::ostringstream out, err;
        const int status = cli::run(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (status, stdout, stderr)");
}
