// Python entry points. Specs, requests and reports cross the boundary as JSON
// text; the package wrapper turns them into dicts.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wbpr/errors.hpp"
#include "wbpr/serialization.hpp"

namespace py = pybind11;
using namespace wbpr;

namespace {

SpecFile parse_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  return spec_from_json(j);
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

Grid1D grid_or_default(const SpecFile& s, const std::optional<std::string>& grid) {
  if (!grid) return s.default_grid();
  return parse_grid(*grid, s.disc ? GridKind::disc_diameter : GridKind::real_line);
}

std::string factorize(const std::vector<Complex>& coeffs, bool strip) {
  SpecFile s;
  const auto d = factorize_polynomial(coeffs);
  if (strip) {
    s.f = lower(d);
  } else {
    s.disc = true;
    s.f.disc = d;
  }
  return to_json(s).dump();
}

std::vector<Complex> evaluate(const std::string& spec, const std::vector<Complex>& points) {
  const SpecFile s = parse_spec(spec);
  const auto e = s.evaluator();
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(e(p));
  return out;
}

std::string solve(const std::string& spec, const std::string& request) {
  const SpecFile s = parse_spec(spec);
  return to_json(apply_request(s, request_from_json(parse(request), s.f.disc.outer.size()))).dump();
}

std::string verify(const std::string& f, const std::string& g, const std::optional<std::string>& grid, double tol) {
  const SpecFile a = parse_spec(f), b = parse_spec(g);
  if (a.disc != b.disc) throw DomainError("f and g live on different domains (disc vs strip)");
  auto r = compare_modulus(a.evaluator(), b.evaluator(), grid_or_default(a, grid), tol);
  if (a.disc) {
    r.merge(check_lemma_conditions(a.f.disc, b.f.disc), "lemma.");
  } else {
    r.merge(check_lemma_conditions(a.f, b.f), "lemma.");
  }
  return to_json(r).dump();
}

std::string enumerate(const std::string& spec, const std::string& sigma_menu, const std::string& outer_menu,
                      std::size_t flip_cap, std::size_t max_solutions, std::uint64_t seed, bool dedup,
                      const std::optional<std::string>& grid, double tol) {
  const SpecFile s = parse_spec(spec);
  if (s.disc) throw DomainError("enumerate works on strip specs");
  std::vector<OddSingularPerturbation> sigmas;
  for (const auto& m : parse(sigma_menu)) sigmas.emplace_back(measure_from_json(m));
  std::vector<OuterModifier> outers;
  for (const auto& m : parse(outer_menu)) outers.push_back(outer_modifier_from_json(m, s.f.disc.outer.size()));
  EnumerationOptions o;
  o.flip_cap = flip_cap;
  o.max_solutions = max_solutions;
  o.seed = seed;
  o.dedup = dedup;
  o.grid = grid_or_default(s, grid);
  o.tol = tol;
  const auto e = enumerate_solutions(s.f, o, sigmas, outers);
  Json arr = Json::array();
  for (const auto& sol : e.solutions) {
    SpecFile g;
    g.f = sol.g;
    Json kept = Json::array();
    for (const auto& [i, k] : sol.flip.kept()) kept.push_back({i, k});
    arr.push_back({{"spec", to_json(g)},
                   {"kept", kept},
                   {"sigma_index", sol.sigma_index},
                   {"outer_index", sol.outer_index},
                   {"report", to_json(sol.report)}});
  }
  return Json{{"candidates", e.candidates}, {"solutions", arr}}.dump();
}

std::string lemma_conditions(const std::string& f, const std::string& g) {
  const SpecFile a = parse_spec(f), b = parse_spec(g);
  if (a.disc != b.disc) throw DomainError("f and g live on different domains (disc vs strip)");
  return to_json(a.disc ? check_lemma_conditions(a.f.disc, b.f.disc) : check_lemma_conditions(a.f, b.f)).dump();
}

std::map<std::int64_t, double> coefficients(const std::vector<double>& alphas, const std::vector<int>& signs) {
  const auto t = riesz_coefficients(RieszSpec(alphas, signs));
  return {t.entries().begin(), t.entries().end()};
}

std::string pauli(const std::vector<double>& alphas, const std::vector<int>& a, const std::vector<int>& b,
                  const std::string& xgrid, const std::string& xigrid) {
  return to_json(verify_pauli_pair(RieszSpec(alphas, a), RieszSpec(alphas, b), SpectralEnvelope::indicator(),
                                   parse_grid(xgrid), parse_grid(xigrid)))
      .dump();
}

py::dict uniqueness(const std::string& f, const std::string& g, double theta, double a, double half_length, int samples) {
  const SpecFile sf = parse_spec(f), sg = parse_spec(g);
  if (sf.disc || sg.disc) throw DomainError("segment uniqueness works on strip specs");
  const auto r = conclude_uniqueness(sf.f, sg.f, SegmentSpec{a, theta, half_length, samples}, env_real_grid());
  py::dict out;
  out["verdict"] = to_string(r.verdict);
  out["c"] = r.c ? py::cast(*r.c) : py::none();
  out["report"] = to_json(r.report).dump();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Phase retrieval of wide-band signals: factorization data, solution families, verification";

  auto base = py::register_exception<Error>(m, "WbprError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DominanceViolated>(m, "DominanceViolated", base.ptr());

  m.def("factorize", &factorize, py::arg("coeffs"), py::arg("strip") = false,
        "Spec JSON for a polynomial given by ascending coefficients");
  m.def("evaluate", &evaluate, py::arg("spec"), py::arg("points"));
  m.def("solve", &solve, py::arg("spec"), py::arg("request"), "Apply a solution request (JSON) to a spec");
  m.def("verify", &verify, py::arg("f"), py::arg("g"), py::arg("grid") = std::nullopt, py::arg("tol") = 1e-6);
  m.def("lemma_conditions", &lemma_conditions, py::arg("f"), py::arg("g"));
  m.def("enumerate", &enumerate, py::arg("spec"), py::arg("sigma_menu") = "[]", py::arg("outer_menu") = "[]",
        py::arg("flip_cap") = std::size_t{1} << 20, py::arg("max_solutions") = std::size_t{1} << 16,
        py::arg("seed") = 0, py::arg("dedup") = true, py::arg("grid") = std::nullopt, py::arg("tol") = 1e-6);

  m.def("phi", &phi);
  m.def("phi_inv", &phi_inv);

  m.def("default_alpha", &default_alpha);
  m.def("display_alpha", &display_alpha);
  m.def("riesz_coefficients", &coefficients, py::arg("alphas"), py::arg("signs"));
  m.def("eval_riesz", [](const std::vector<double>& alphas, const std::vector<int>& signs, double x) {
    return eval_riesz(RieszSpec(alphas, signs), x);
  });
  m.def("verify_pauli_pair", &pauli, py::arg("alphas"), py::arg("signs_a"), py::arg("signs_b"),
        py::arg("xgrid") = "-2:2:64", py::arg("xigrid") = "-130:130:521");

  m.def("reference_solutions", [](Complex fx, Complex hx) {
    const auto r = reference_solutions({fx, hx});
    return std::make_pair(r.same, r.reflected);
  });
  m.def("conclude_uniqueness", &uniqueness, py::arg("f"), py::arg("g"), py::arg("theta") = 1.0, py::arg("a") = 0.0,
        py::arg("half_length") = 1.0, py::arg("samples") = 129);
}
