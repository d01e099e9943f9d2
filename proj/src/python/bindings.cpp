#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vsalisp/bench.hpp"
#include "vsalisp/cleanup.hpp"
#include "vsalisp/cli.hpp"
#include "vsalisp/eval.hpp"
#include "vsalisp/oracle.hpp"

namespace py = pybind11;
using namespace vsalisp;

namespace {

std::vector<double> to_list(const Hypervector& v) { return v.components(); }
Hypervector from_list(std::vector<double> v) { return Hypervector(std::move(v)); }

SessionConfig make_config(std::size_t dim, std::uint64_t seed, double theta_up, double theta_down,
                          const std::string& memory, std::size_t step_limit) {
  SessionConfig c;
  c.dim = dim;
  c.seed = seed;
  c.thresholds = {theta_up, theta_down};
  const auto kind = parse_memory_kind(memory);
  if (!kind) throw Error("unknown memory kind " + memory);
  c.memory_kind = *kind;
  c.step_limit = step_limit;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_vsalisp, m) {
  m.doc() = "Lisp interpreter over holographic reduced representations";

  py::register_exception<Error>(m, "VsaError");

  m.def("bind", [](std::vector<double> u, std::vector<double> v) {
    return to_list(bind(from_list(std::move(u)), from_list(std::move(v))));
  });
  m.def("unbind", [](std::vector<double> u, std::vector<double> w) {
    return to_list(unbind(from_list(std::move(u)), from_list(std::move(w))));
  });
  m.def("similarity", [](std::vector<double> u, std::vector<double> v) {
    return similarity(from_list(std::move(u)), from_list(std::move(v)));
  });
  m.def("normalize", [](std::vector<double> v) { return to_list(normalize(from_list(std::move(v)))); });
  m.def("sample_atom", [](std::size_t dim, std::uint64_t seed, const std::string& name) {
    return to_list(AtomRegistry::sample(dim, seed, name));
  }, py::arg("dim"), py::arg("seed"), py::arg("name"));

  m.def("parse_print", [](const std::string& text) { return print(parse(text)); },
        "Parse one expression and print it back in canonical form.");

  py::class_<EvalSession>(m, "Session")
      .def(py::init([](std::size_t dim, std::uint64_t seed, double up, double down,
                       const std::string& memory, std::size_t steps) {
             return std::make_unique<EvalSession>(make_config(dim, seed, up, down, memory, steps));
           }),
           py::arg("dim") = 2048, py::arg("seed") = 1, py::arg("theta_up") = 0.8,
           py::arg("theta_down") = 0.2, py::arg("memory") = "lookup",
           py::arg("step_limit") = 100000)
      .def("eval", [](EvalSession& s, const std::string& text) { return print(s.evaluate(parse(text))); })
      .def("encode", [](EvalSession& s, const std::string& text) {
        return to_list(s.codec().encode(parse(text)));
      })
      .def("decode", [](EvalSession& s, std::vector<double> v) {
        return print(s.codec().decode(from_list(std::move(v))));
      })
      .def("branch_log", [](const EvalSession& s) {
        std::vector<std::string> out;
        for (Branch b : s.branch_log()) out.emplace_back(to_string(b));
        return out;
      })
      .def_property_readonly("memory_rows", [](EvalSession& s) { return s.memory().rows(); })
      .def_property_readonly("steps", &EvalSession::steps);

  py::class_<Oracle>(m, "Oracle")
      .def(py::init<>())
      .def("eval", [](Oracle& o, const std::string& text) { return print(o.eval(parse(text))); });

  m.def("bench", [](const std::string& kind, std::size_t dim, std::uint64_t seed) {
    SessionConfig c;
    c.dim = dim;
    c.seed = seed;
    if (kind == "kanerva") return bench_kanerva(c).to_tsv();
    if (kind == "capacity") return bench_capacity(c).to_tsv();
    if (kind == "update_rules") return bench_update_rules(c).to_tsv();
    throw Error("unknown bench " + kind);
  }, py::arg("kind"), py::arg("dim") = 2048, py::arg("seed") = 1);
}
