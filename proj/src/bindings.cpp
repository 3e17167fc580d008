// Python extension module pnet._core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pnet/antireduct.hpp"
#include "pnet/bounds.hpp"
#include "pnet/dot.hpp"
#include "pnet/mell.hpp"
#include "pnet/reduce.hpp"
#include "pnet/switching.hpp"
#include "pnet/syntax.hpp"
#include "pnet/verify.hpp"

namespace py = pybind11;
using namespace pnet;

namespace {

py::int_ to_int(const mpz_class& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

RedirectPolicy parse_policy(const std::string& s) {
  if (s == "first") return RedirectPolicy::FirstPremise;
  if (s == "any") return RedirectPolicy::AnyPremise;
  throw py::value_error("policy must be 'first' or 'any'");
}

py::dict bounds_dict(const BoundReport& br) {
  py::list checks;
  for (const auto& c : br.checks) {
    py::dict d;
    d["name"] = c.name;
    d["lhs"] = to_int(c.lhs);
    d["rhs"] = to_int(c.rhs);
    d["ok"] = c.ok;
    checks.append(d);
  }
  py::dict out;
  out["kind"] = step_kind_name(br.kind);
  out["size_p"] = br.size_p;
  out["size_q"] = br.size_q;
  out["ln_p"] = br.ln_p;
  out["ln_q"] = br.ln_q;
  out["jd_p"] = br.jd_p;
  out["jd_q"] = br.jd_q;
  out["ok"] = br.ok();
  out["checks"] = checks;
  return out;
}

struct PyReduct {
  Net source;
  Reduct reduct;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Proof-net cut elimination, path bounds, Taylor expansion and antireduct search";

  static py::exception<Error> error(m, "PnetError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("code") = errc_name(e.code());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Net>(m, "Net")
      .def(py::init([](const std::string& text) { return parse_net(text); }), py::arg("text"))
      .def("__str__", [](const Net& n) { return print_net(n); })
      .def("__repr__", [](const Net& n) { return "Net(" + py::repr(py::str(print_net(n))).cast<std::string>() + ")"; })
      .def("__eq__", [](const Net& a, const Net& b) { return alpha_equal(a, b); })
      .def("__hash__", [](const Net& n) { return py::hash(py::str(canonical_key(n))); })
      .def("key", [](const Net& n, bool multiset) {
            return canonical_key(n, multiset ? CanonMode::ExponentialMultiset : CanonMode::Ordered);
          }, py::arg("exponential_multiset") = false)
      .def_property_readonly("size", [](const Net& n) { return size(n); })
      .def_property_readonly("ln", [](const Net& n) { return max_path_length(n).ln; })
      .def_property_readonly("jd", [](const Net& n) { return jump_degree(n).max; })
      .def_property_readonly("acyclic", [](const Net& n) { return is_acyclic(n).acyclic; })
      .def_property_readonly("cut_count", [](const Net& n) { return n.cuts.size(); })
      .def("reducible_cuts", [](const Net& n) { return reducible_cuts(n); })
      .def("classify", [](const Net& n, int cut) { return std::string(cut_kind_name(classify_cut(n, cut).kind)); },
           py::arg("cut"))
      .def("reduce", [](const Net& n, std::optional<std::vector<int>> cuts, const std::string& policy) {
            std::vector<PyReduct> out;
            for (auto& r : parallel_reduce(n, cuts ? *cuts : reducible_cuts(n), parse_policy(policy)))
              out.push_back(PyReduct{n, std::move(r)});
            return out;
          }, py::arg("cuts") = py::none(), py::arg("policy") = "first")
      .def("dot", [](const Net& n) { return export_dot(n); });

  py::class_<PyReduct>(m, "Reduct")
      .def_property_readonly("net", [](const PyReduct& r) { return r.reduct.net; })
      .def_property_readonly("kind", [](const PyReduct& r) { return std::string(step_kind_name(r.reduct.record.kind)); })
      .def_property_readonly("eliminated", [](const PyReduct& r) { return r.reduct.record.eliminated; })
      .def("bounds", [](const PyReduct& r) { return bounds_dict(check_bounds(r.source, r.reduct.net, r.reduct.record)); });

  py::class_<MellNet>(m, "MellNet")
      .def(py::init([](const std::string& text) { return parse_mell(text); }), py::arg("text"))
      .def("__str__", [](const MellNet& n) { return print_mell(n); })
      .def("__eq__", [](const MellNet& a, const MellNet& b) { return mell_alpha_equal(a, b); })
      .def_property_readonly("size", [](const MellNet& n) { return mell_measures(n).size; })
      .def_property_readonly("toplevel_size", [](const MellNet& n) { return mell_measures(n).tlsize; })
      .def_property_readonly("depth", [](const MellNet& n) { return mell_measures(n).depth; })
      .def_property_readonly("acyclic", [](const MellNet& n) { return mell_acyclic(n); })
      .def("taylor", [](const MellNet& n, int budget, bool exhaustive) {
            std::vector<Net> out;
            for (auto& e : taylor_expand(n, budget, exhaustive ? JumpPolicy::Exhaustive : JumpPolicy::Deterministic))
              out.push_back(std::move(e.net));
            return out;
          }, py::arg("budget"), py::arg("exhaustive") = false)
      .def("dot", [](const MellNet& n) { return export_dot(n); });

  m.def("psi", [](unsigned long i, unsigned long j, unsigned long k) { return to_int(psi(i, j, k)); },
        py::arg("size"), py::arg("jd"), py::arg("ln"));
  m.def("phi", [](unsigned long n) { return to_int(phi(n)); }, py::arg("n"));
  m.def("theta", [](unsigned long ln, unsigned long jd) { return to_int(theta(ln, jd)); }, py::arg("ln"), py::arg("jd"));

  m.def("antireducts", [](const Net& q, int k, std::size_t n, int jd, std::size_t size_cap, bool allow_cyclic) {
        SearchOptions o;
        o.size_cap = size_cap;
        o.refuse_cyclic_target = !allow_cyclic;
        AntireductSet a = antireducts(q, k, n, jd, o);
        return py::make_tuple(a.nets, a.visited());
      }, py::arg("target"), py::arg("k"), py::arg("ln"), py::arg("jd"), py::arg("size_cap") = 0,
        py::arg("allow_cyclic") = false,
        "Antireducts of target within k steps, path length ln and jump degree jd; returns (nets, visited).");
  m.def("reduces_to", [](const Net& p, const Net& q, int k) { return reduces_to(p, q, k); }, py::arg("p"), py::arg("q"),
        py::arg("k"));
  m.def("verify", [](std::uint64_t seed, std::size_t cases) { return run_verify(seed, cases).to_json(); },
        py::arg("seed"), py::arg("cases"), "Seeded property run; returns the JSON report.");
}
