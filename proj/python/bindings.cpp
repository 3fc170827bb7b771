#include "inducedym/abeliandual.hpp"
#include "inducedym/cellcomplex.hpp"
#include "inducedym/errors.hpp"
#include "inducedym/fockcheck.hpp"
#include "inducedym/montecarlo.hpp"
#include "inducedym/repn.hpp"
#include "inducedym/residues.hpp"
#include "inducedym/twodim.hpp"
#include "inducedym/weights.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace inducedym;

namespace {

ModelCouplings model(int n_c, int n_b, int n_f, double alpha_b, double alpha_f) {
  ModelCouplings c;
  c.n_c = n_c;
  c.n_b = n_b;
  c.n_f = n_f;
  c.alpha_b = alpha_b;
  c.alpha_f = alpha_f;
  c.validate();
  return c;
}

// exact results come back as "p/q" strings so Python can hand them to fractions.Fraction
py::dict exact_dict(const ExactNumber& x) {
  py::dict d;
  d["value"] = x.to_double();
  d["exact"] = x.is_exact() ? py::object(py::str(x.exact->str())) : py::object(py::none());
  return d;
}

Contour contour_of(const std::vector<std::pair<std::size_t, int>>& steps) {
  Contour c;
  for (auto [l, s] : steps) c.steps.push_back({l, s});
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Induced lattice U(N) gauge model: compiled core";

  static py::exception<Error> error(m, "InducedYMError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (e.module() + "." + e.code() + ": " + e.what()).c_str());
    }
  });

  m.def("weyl_dimension", [](const std::vector<int>& l) { return weyl_dimension(Signature(l)); }, py::arg("signature"));
  m.def("casimir2", [](const std::vector<int>& l) { return casimir2(Signature(l)); }, py::arg("signature"));
  m.def("casimir1", [](const std::vector<int>& l) { return casimir1(Signature(l)).str(); }, py::arg("signature"));
  m.def("character", [](const std::vector<int>& l, const std::vector<double>& theta) { return character(Signature(l), theta); },
        py::arg("signature"), py::arg("theta"));
  m.def("signatures_in_box",
        [](int n_c, int max_abs) {
          std::vector<std::vector<int>> out;
          for (auto& s : signatures_in_box(n_c, max_abs)) out.push_back(s.parts());
          return out;
        },
        py::arg("n_c"), py::arg("max_abs"));

  m.def("char_coefficient",
        [](const std::vector<int>& l, int n_b, int n_f, double alpha_b, double alpha_f) {
          return char_coefficient(Signature(l), model(static_cast<int>(l.size()), n_b, n_f, alpha_b, alpha_f)).to_double();
        },
        py::arg("signature"), py::arg("n_b") = 0, py::arg("n_f") = 0, py::arg("alpha_b") = 0.0, py::arg("alpha_f") = 0.0);
  m.def("char_coefficient_ratio",
        [](const std::vector<int>& l, int n_b, int n_f, double alpha_b, double alpha_f) {
          return char_coefficient_ratio(Signature(l), model(static_cast<int>(l.size()), n_b, n_f, alpha_b, alpha_f));
        },
        py::arg("signature"), py::arg("n_b") = 0, py::arg("n_f") = 0, py::arg("alpha_b") = 0.0, py::arg("alpha_f") = 0.0);
  m.def("wilson_loop_one_plaquette",
        [](int n_c, int n_b, int n_f, double alpha_b, double alpha_f) {
          return wilson_loop_one_plaquette(model(n_c, n_b, n_f, alpha_b, alpha_f));
        },
        py::arg("n_c"), py::arg("n_b") = 0, py::arg("n_f") = 0, py::arg("alpha_b") = 0.0, py::arg("alpha_f") = 0.0);
  m.def("moments",
        [](int n_b, int n_c) {
          auto r = moments_B1B2(n_b, n_c);
          return py::dict(py::arg("b1") = r.b1, py::arg("b2") = r.b2, py::arg("trace_square") = r.trace_square,
                          py::arg("square_trace") = r.square_trace);
        },
        py::arg("n_b"), py::arg("n_c"));

  m.def("wilson_exact",
        [](int n_c, int n_b, int n_f, const std::string& alpha_b, const std::string& alpha_f) {
          ResidueCouplings c;
          c.n_c = n_c;
          c.n_b = n_b;
          c.n_f = n_f;
          c.alpha_b = CouplingValue::parse(alpha_b);
          c.alpha_f = CouplingValue::parse(alpha_f);
          auto w = wilson_exact(c);
          auto d = exact_dict(w.value);
          d["regime"] = w.regime;
          return d;
        },
        py::arg("n_c"), py::arg("n_b") = 0, py::arg("n_f") = 0, py::arg("alpha_b") = "0", py::arg("alpha_f") = "0");
  m.def("char_coefficient_exact",
        [](const std::vector<int>& l, int n_b, int n_f, const std::string& alpha_b, const std::string& alpha_f) {
          ResidueCouplings c;
          c.n_c = static_cast<int>(l.size());
          c.n_b = n_b;
          c.n_f = n_f;
          c.alpha_b = CouplingValue::parse(alpha_b);
          c.alpha_f = CouplingValue::parse(alpha_f);
          return exact_dict(char_coefficient_oracle(Signature(l), c));
        },
        py::arg("signature"), py::arg("n_b") = 0, py::arg("n_f") = 0, py::arg("alpha_b") = "0", py::arg("alpha_f") = "0");

  m.def("z_genus",
        [](int n_c, int genus, double mu, const std::string& kind, double r, int max_abs, double tail_tol) {
          ContinuumParams p;
          p.n_c = n_c;
          p.genus = genus;
          p.mu = mu;
          p.kind = parse_casimir_kind(kind);
          p.r = r;
          p.max_abs = max_abs;
          p.tail_tol = tail_tol;
          auto z = z_genus(p);
          return py::make_tuple(z.value, z.tail_bound);
        },
        py::arg("n_c"), py::arg("genus"), py::arg("mu"), py::arg("kind") = "quadratic", py::arg("r") = 0.0,
        py::arg("max_abs") = 4, py::arg("tail_tol") = 1e-8);
  m.def("lattice_partition",
        [](int genus, const std::vector<double>& alphas, int n_c, int n_b, int max_abs, double tail_tol) {
          auto z = lattice_partition_closed_surface(genus, alphas, model(n_c, n_b, 0, 0.0, 0.0), max_abs, tail_tol);
          return py::make_tuple(z.value, z.tail_bound);
        },
        py::arg("genus"), py::arg("alphas"), py::arg("n_c"), py::arg("n_b"), py::arg("max_abs") = 6,
        py::arg("tail_tol") = 1e-8);

  py::class_<CellComplex>(m, "CellComplex")
      .def_static("hypercubic", &build_hypercubic, py::arg("extents"), py::arg("periodic"))
      .def_static("from_json", [](const std::string& text) { return CellComplex::from_json(nlohmann::json::parse(text)); })
      .def("to_json", [](const CellComplex& c) { return c.to_json().dump(); })
      .def_property_readonly("num_sites", &CellComplex::num_sites)
      .def_property_readonly("num_links", &CellComplex::num_links)
      .def_property_readonly("num_plaquettes", &CellComplex::num_plaquettes)
      .def("plaquette_boundary", [](const CellComplex& c, std::size_t p) {
        std::vector<std::pair<std::size_t, int>> out;
        for (auto& s : c.plaquette(p).boundary) out.push_back({s.link, s.sign});
        return out;
      });

  m.def("dual_partition",
        [](const CellComplex& c, double alpha, int n_max) {
          auto d = dual_partition(c, DualWeightConfig::uniform(c, alpha, n_max));
          return py::make_tuple(d.value, d.tail_bound);
        },
        py::arg("complex"), py::arg("alpha"), py::arg("n_max") = 12);
  m.def("dual_wilson",
        [](const CellComplex& c, const std::vector<std::pair<std::size_t, int>>& contour, double alpha, int n_max) {
          auto d = dual_wilson(c, contour_of(contour), DualWeightConfig::uniform(c, alpha, n_max));
          return py::make_tuple(d.value, d.tail_bound);
        },
        py::arg("complex"), py::arg("contour"), py::arg("alpha"), py::arg("n_max") = 12);
  m.def("u1_oracle",
        [](const CellComplex& c, double alpha, int grid) {
          return direct_u1_oracle(c, std::vector<double>(c.num_plaquettes(), alpha), grid).value;
        },
        py::arg("complex"), py::arg("alpha"), py::arg("grid") = 32);

  m.def("monte_carlo",
        [](const CellComplex& c, int n_c, int n_b, double alpha_b, std::optional<double> beta, std::size_t measurements,
           std::uint64_t seed, int chains) {
          McModel mm;
          mm.couplings = model(n_c, n_b, 0, alpha_b, 0.0);
          mm.beta = beta;
          McConfig cfg;
          cfg.measurements = measurements;
          cfg.seed = seed;
          auto rep = mc_run_chains(c, mm, cfg, chains, 1);
          py::dict obs;
          for (auto& o : rep.observables)
            obs[py::str(o.name)] = py::dict(py::arg("mean") = o.mean, py::arg("error") = o.error, py::arg("tau_int") = o.tau_int);
          return py::dict(py::arg("observables") = obs, py::arg("acceptance") = rep.acceptance,
                          py::arg("unitarity_defect") = rep.unitarity_defect);
        },
        py::arg("complex"), py::arg("n_c"), py::arg("n_b") = 0, py::arg("alpha_b") = 0.0, py::arg("beta") = py::none(),
        py::arg("measurements") = 10000, py::arg("seed") = 1, py::arg("chains") = 1);

  m.def("fock_check",
        [](const Eigen::MatrixXcd& u, double alpha, int n_b, int cutoff) {
          return verify_det_identity(u, alpha, n_b, cutoff).relative_error;
        },
        py::arg("u"), py::arg("alpha"), py::arg("n_b"), py::arg("cutoff"));
  m.def("singlet_hilbert_partial_sum",
        [](int n_c, int n_b, int degree, double alpha) {
          return hilbert_partial_sum(singlet_hilbert_series(n_c, n_b, degree), alpha);
        },
        py::arg("n_c"), py::arg("n_b"), py::arg("degree"), py::arg("alpha"));
}
