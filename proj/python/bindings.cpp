#include "shifttower/commutant.hpp"
#include "shifttower/entropy.hpp"
#include "shifttower/errors.hpp"
#include "shifttower/job.hpp"
#include "shifttower/relations.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace shifttower;

namespace {

RawSpec make_raw(const std::string& variant, const std::vector<long long>& dims,
                 const std::vector<std::string>& traces) {
  RawSpec raw;
  raw.variant = parse_variant(variant);
  raw.dims = dims;
  for (const auto& t : traces) raw.traces.push_back(parse_fraction(t));
  return raw;
}

std::vector<std::string> fractions(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(fraction_string(q));
  return out;
}

}  // namespace

PYBIND11_MODULE(_shifttower, m) {
  m.doc() = "Shift towers built from finite-dimensional algebras";
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);

  m.def(
      "validate_spec",
      [](const std::string& variant, const std::vector<long long>& dims, const std::vector<std::string>& traces) {
        const AlgebraSpec s = validate_spec(make_raw(variant, dims, traces));
        py::dict d;
        d["variant"] = to_string(s.variant);
        d["n"] = s.n;
        d["j"] = s.j;
        d["a"] = s.a;
        d["a_prime"] = s.a_prime;
        d["s"] = fractions(s.s);
        d["N"] = s.N;
        d["block_offsets"] = s.offset;
        return d;
      },
      py::arg("variant"), py::arg("dims"), py::arg("traces") = std::vector<std::string>{});

  m.def(
      "run_job_json",
      [](const std::string& config, const std::string& command) {
        const JobConfig cfg = parse_config(nlohmann::json::parse(config));
        JobResult r;
        {
          py::gil_scoped_release release;
          r = run_job(cfg, parse_command(command));
        }
        return py::make_tuple(r.report.dump(), r.exit_code);
      },
      py::arg("config"), py::arg("command"), "Runs a job; returns (report JSON text, exit code).");

  m.def(
      "spanning_dimension",
      [](const std::string& variant, const std::vector<long long>& dims, const std::vector<std::string>& traces) {
        const RankResult r = verify_spanning(validate_spec(make_raw(variant, dims, traces)));
        return py::make_tuple(r.dimension, r.target);
      },
      py::arg("variant"), py::arg("dims"), py::arg("traces") = std::vector<std::string>{});

  m.def(
      "commutant_structure",
      [](const std::string& variant, const std::vector<long long>& dims, const std::vector<std::string>& traces,
         int depth, int window, int truncation, unsigned seed) {
        const TowerContext ctx(validate_spec(make_raw(variant, dims, traces)), truncation);
        CommutantReport rep;
        {
          py::gil_scoped_release release;
          rep = compute_commutant(ctx, depth, window, seed);
        }
        py::dict d;
        d["dimension"] = rep.basis.elements.size();
        d["dimension_vector"] = rep.structure.dimension_vector();
        d["trace_vector"] = fractions(rep.structure.trace_vector());
        d["containment"] = rep.containment_pass;
        d["locality"] = rep.locality;
        d["matches_prediction"] = rep.matches_prediction;
        return d;
      },
      py::arg("variant"), py::arg("dims"), py::arg("traces") = std::vector<std::string>{}, py::arg("depth") = 1,
      py::arg("window") = 2, py::arg("truncation") = 16, py::arg("seed") = 1);

  m.def(
      "vn_entropy",
      [](const std::vector<int>& dims, const std::vector<std::string>& traces) {
        std::vector<Rational> t;
        for (const auto& s : traces) {
          const auto [e, f] = parse_fraction(s);
          t.emplace_back(e, f);
        }
        return vn_entropy(dims, t);
      },
      py::arg("dims"), py::arg("traces"));

  m.def(
      "restricted_shift_entropy",
      [](const std::vector<long long>& dims) { return restricted_shift_entropy(validate_spec(make_raw("simplified", dims, {}))); },
      py::arg("dims"));

  m.def("shift_stream", [](int length) { return ShiftSets(length).stream(length); }, py::arg("length"));
  m.def("default_truncation", &default_truncation, py::arg("depth"));
}
