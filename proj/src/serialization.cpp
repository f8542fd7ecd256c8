#include "wbpr/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wbpr/errors.hpp"

namespace wbpr {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("\"") + what + "\" must be a number");
  return j.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.is_object() && j.contains(key) ? number(j.at(key), key) : fallback;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("\"") + what + "\" must be an array");
  return j;
}

// Re-throw library validation errors as parse errors naming the section.
template <typename F>
auto guarded(const char* section, F&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string(section) + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string(section) + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Evaluator SpecFile::evaluator() const {
  if (disc) return wbpr::evaluator(f.disc);
  return wbpr::evaluator(f);
}

Grid1D SpecFile::default_grid() const { return disc ? default_disc_grid() : env_real_grid(); }

Json to_json(const ZeroMultiset& z) {
  Json out = Json::array();
  for (const auto& e : z.entries()) out.push_back({{"re", e.point.real()}, {"im", e.point.imag()}, {"mult", e.multiplicity}});
  return out;
}

Json to_json(const AtomicMeasure& m) {
  Json out = Json::array();
  for (const auto& a : m.atoms()) out.push_back({{"theta", a.theta}, {"mass", a.mass}});
  return out;
}

Json to_json(const BoundaryLogModulus& L) {
  return {{"M", L.size()}, {"samples", std::vector<double>(L.samples().begin(), L.samples().end())}};
}

Json to_json(const DiscFactorization& d) {
  return {{"phase", d.phase}, {"zeros", to_json(d.zeros)}, {"atoms", to_json(d.singular)}, {"outer", to_json(d.outer)}};
}

Json to_json(const StripFunction& f) {
  Json out = to_json(f.disc);
  out["corner_plus"] = f.corner_plus;
  out["corner_minus"] = f.corner_minus;
  out["scale"] = f.scale;
  out["eta"] = f.eta;
  return out;
}

Json to_json(const SpecFile& s) {
  Json out = s.disc ? to_json(s.f.disc) : to_json(s.f);
  out["domain"] = s.disc ? "disc" : "strip";
  return out;
}

Json to_json(const StripData& d) {
  Json zeros = Json::array();
  for (const auto& z : d.zeros) zeros.push_back({{"re", z.point.real()}, {"im", z.point.imag()}, {"mult", z.multiplicity}});
  Json atoms = Json::array();
  for (const auto& a : d.boundary_atoms) atoms.push_back({{"x", a.x}, {"side", a.side > 0 ? "+" : "-"}, {"mass", a.mass}});
  auto side = [](const std::vector<std::pair<double, double>>& s) {
    Json out = Json::array();
    for (const auto& [x, v] : s) out.push_back({x, v});
    return out;
  };
  return {{"phase", d.phase},          {"zeros", zeros},
          {"boundary_atoms", atoms},   {"corners", {d.corner_plus, d.corner_minus}},
          {"outer_top", side(d.outer_top)}, {"outer_bottom", side(d.outer_bottom)},
          {"M", d.grid_size},          {"scale", d.scale},
          {"eta", d.eta}};
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj{{"name", c.name},
            {"pass", c.pass},
            {"argmax", {c.argmax.real(), c.argmax.imag()}},
            {"detail", c.detail}};
    cj["max_err"] = std::isfinite(c.max_err) ? Json(c.max_err) : Json("inf");
    checks.push_back(cj);
  }
  return {{"passed", r.passed()}, {"checks", checks}, {"metadata", r.metadata}};
}

// ---------------------------------------------------------------------------

ZeroMultiset zeros_from_json(const Json& j) {
  return guarded("zeros", [&] {
    std::vector<ZeroEntry> out;
    for (const auto& e : array(j, "zeros")) {
      const int mult = e.contains("mult") ? e.at("mult").get<int>() : 1;
      out.push_back({Complex(number(require(e, "re"), "re"), number(require(e, "im"), "im")), mult});
    }
    return ZeroMultiset(std::move(out));
  });
}

AtomicMeasure measure_from_json(const Json& j) {
  return guarded("atoms", [&] {
    std::vector<Atom> out;
    for (const auto& a : array(j, "atoms")) {
      out.push_back({number(require(a, "theta"), "theta"), number(require(a, "mass"), "mass")});
    }
    return AtomicMeasure(std::move(out));
  });
}

BoundaryLogModulus outer_from_json(const Json& j) {
  return guarded("outer", [&] {
    if (j.contains("samples")) {
      std::vector<double> s;
      for (const auto& v : array(j.at("samples"), "samples")) s.push_back(number(v, "samples"));
      if (j.contains("M") && j.at("M").get<std::size_t>() != s.size()) {
        throw ParseError("outer: M does not match the sample count");
      }
      return BoundaryLogModulus(std::move(s));
    }
    return BoundaryLogModulus(j.contains("M") ? j.at("M").get<std::size_t>() : BoundaryLogModulus::kDefaultSize);
  });
}

DiscFactorization disc_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("spec must be a JSON object");
  DiscFactorization d;
  d.phase = number_or(j, "phase", 0.0);
  if (j.contains("zeros")) d.zeros = zeros_from_json(j.at("zeros"));
  if (j.contains("atoms")) d.singular = measure_from_json(j.at("atoms"));
  d.outer = j.contains("outer") ? outer_from_json(j.at("outer")) : BoundaryLogModulus();
  return d;
}

StripFunction strip_from_json(const Json& j) {
  StripFunction f;
  f.disc = disc_from_json(j);
  f.corner_plus = number_or(j, "corner_plus", 0.0);
  f.corner_minus = number_or(j, "corner_minus", 0.0);
  f.scale = number_or(j, "scale", 1.0);
  f.eta = number_or(j, "eta", 0.0);
  guarded("strip", [&] {
    validate(f);
    return 0;
  });
  return f;
}

SpecFile spec_from_json(const Json& j) {
  SpecFile s;
  const std::string domain = j.is_object() && j.contains("domain") ? j.at("domain").get<std::string>() : "strip";
  if (domain == "disc") {
    s.disc = true;
    s.f.disc = disc_from_json(j);
  } else if (domain == "strip") {
    s.f = strip_from_json(j);
  } else {
    throw ParseError("domain must be \"disc\" or \"strip\", got \"" + domain + "\"");
  }
  return s;
}

StripData strip_data_from_json(const Json& j) {
  return guarded("strip input", [&] {
    StripData d;
    d.phase = number_or(j, "phase", 0.0);
    if (j.contains("zeros")) {
      for (const auto& e : array(j.at("zeros"), "zeros")) {
        const int mult = e.contains("mult") ? e.at("mult").get<int>() : 1;
        d.zeros.push_back({Complex(number(require(e, "re"), "re"), number(require(e, "im"), "im")), mult});
      }
    }
    if (j.contains("boundary_atoms")) {
      for (const auto& a : array(j.at("boundary_atoms"), "boundary_atoms")) {
        const std::string side = require(a, "side").get<std::string>();
        if (side != "+" && side != "-") throw ParseError("boundary atom side must be \"+\" or \"-\"");
        d.boundary_atoms.push_back({number(require(a, "x"), "x"), side == "+" ? 1 : -1, number(require(a, "mass"), "mass")});
      }
    }
    if (j.contains("corners")) {
      const auto& c = array(j.at("corners"), "corners");
      if (c.size() != 2) throw ParseError("corners must be [a_plus, a_minus]");
      d.corner_plus = number(c[0], "corners");
      d.corner_minus = number(c[1], "corners");
    }
    auto side = [&](const char* key) {
      std::vector<std::pair<double, double>> out;
      if (!j.contains(key)) return out;
      for (const auto& p : array(j.at(key), key)) {
        if (!p.is_array() || p.size() != 2) throw ParseError(std::string(key) + " entries must be [x, value]");
        out.emplace_back(number(p[0], key), number(p[1], key));
      }
      return out;
    };
    d.outer_top = side("outer_top");
    d.outer_bottom = side("outer_bottom");
    if (j.contains("M")) d.grid_size = j.at("M").get<std::size_t>();
    d.scale = number_or(j, "scale", 1.0);
    d.eta = number_or(j, "eta", 0.0);
    return d;
  });
}

FlipSelection selection_from_tokens(const std::vector<std::string>& tokens) {
  FlipSelection sel;
  for (const auto& t : tokens) {
    const auto colon = t.find(':');
    try {
      std::size_t used = 0;
      const std::string head = t.substr(0, colon);
      const long index = std::stol(head, &used);
      if (used != head.size() || index < 0) throw ParseError("bad selection token \"" + t + "\"");
      int copies = FlipSelection::kAllCopies;
      if (colon != std::string::npos) {
        const std::string tail = t.substr(colon + 1);
        copies = std::stoi(tail, &used);
        if (used != tail.size() || copies < 0) throw ParseError("bad selection token \"" + t + "\"");
      }
      sel.keep(static_cast<std::size_t>(index), copies);
    } catch (const std::logic_error&) {
      throw ParseError("bad selection token \"" + t + "\"");
    }
  }
  return sel;
}

FlipSelection selection_from_json(const Json& j) {
  std::vector<std::string> tokens;
  for (const auto& t : array(j, "flip")) {
    if (t.is_number_integer()) {
      tokens.push_back(std::to_string(t.get<long>()));
    } else if (t.is_string()) {
      tokens.push_back(t.get<std::string>());
    } else {
      throw ParseError("flip entries must be integers or \"i:k\" strings");
    }
  }
  return selection_from_tokens(tokens);
}

OuterModifier outer_modifier_from_json(const Json& j, std::size_t grid_size) {
  return guarded("outer modifier", [&]() -> OuterModifier {
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "star") return StarQuotient{};
    if (kind == "exp") return ExponentialModifier{number(require(j, "eta"), "eta")};
    if (kind != "odd") throw ParseError("outer kind must be star, exp or odd");
    OddBoundary u;
    if (j.contains("samples")) {
      std::vector<double> s;
      for (const auto& v : array(j.at("samples"), "samples")) s.push_back(number(v, "samples"));
      u.log_modulus = BoundaryLogModulus(std::move(s));
    } else {
      std::vector<double> c;
      for (const auto& v : array(require(j, "sin_coeffs"), "sin_coeffs")) c.push_back(number(v, "sin_coeffs"));
      u = OddBoundary::from_function(
          [c](double t) {
            double s = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::sin(static_cast<double>(k + 1) * t);
            return s;
          },
          grid_size);
    }
    validate(OuterModifier(u), grid_size);
    return u;
  });
}

SolutionRequest request_from_json(const Json& j, std::size_t grid_size) {
  if (!j.is_object()) throw ParseError("solution request must be a JSON object");
  SolutionRequest r;
  if (j.contains("flip")) r.flip = selection_from_json(j.at("flip"));
  if (j.contains("sigma_plus")) {
    r.sigma = guarded("sigma_plus", [&] { return OddSingularPerturbation(measure_from_json(j.at("sigma_plus"))); });
  }
  if (j.contains("outer") && !j.at("outer").is_null()) r.outer = outer_modifier_from_json(j.at("outer"), grid_size);
  r.phase = number_or(j, "phase", 0.0);
  r.eta = number_or(j, "eta", 0.0);
  if (j.contains("star")) {
    if (!j.at("star").is_boolean()) throw ParseError("\"star\" must be a boolean");
    r.use_star = j.at("star").get<bool>();
  }
  return r;
}

SpecFile apply_request(const SpecFile& spec, const SolutionRequest& req) {
  const FlipSelection sel = req.flip ? *req.flip : FlipSelection::keep_all(spec.f.disc.zeros);
  SpecFile out = spec;
  if (spec.disc) {
    if (req.eta != 0.0) throw InvalidModifier("eta applies to strip specs only");
    out.f.disc = disc_solution(spec.f.disc, sel, req.sigma, req.outer);
    if (req.use_star) out.f.disc = star(out.f.disc);
    out.f.disc.phase += req.phase;
    return out;
  }
  out.f = strip_solution(spec.f, sel, req.sigma, req.outer);
  if (req.phase != 0.0 || req.eta != 0.0 || req.use_star) {
    out.f = trivial_solutions(out.f, std::polar(1.0, req.phase), req.eta, req.use_star);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json load_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string modulus_csv(const std::vector<ModulusSample>& samples) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,abs_f,abs_g,rel_err\n";
  for (const auto& s : samples) {
    os << s.point.real() << ',' << s.point.imag() << ',' << s.abs_f << ',' << s.abs_g << ',' << s.rel_err << '\n';
  }
  return os.str();
}

Grid1D env_real_grid() {
  if (const char* v = std::getenv("WBPR_GRID_DEFAULT"); v != nullptr && *v != '\0') return parse_grid(v);
  return default_real_grid();
}

Grid1D parse_grid(const std::string& text, GridKind kind) {
  double a = 0.0, b = 0.0;
  long n = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &tail) != 3 || n < 2) {
    throw ParseError("grid must look like a:b:n with n >= 2, got \"" + text + "\"");
  }
  Grid1D g;
  g.start = a;
  g.stop = b;
  g.count = static_cast<std::size_t>(n);
  g.kind = kind;
  return g;
}

}  // namespace wbpr
