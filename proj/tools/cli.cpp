#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "wbpr/errors.hpp"
#include "wbpr/serialization.hpp"

namespace wbpr::cli {

namespace {

// Failed verification: exit 1 with the first failing check named.
int finish(const VerificationReport& r, std::ostream& out, std::ostream& err) {
  for (const auto& c : r.checks) {
    out << (c.pass ? "  ok   " : "  FAIL ") << c.name << "  max_err " << std::setprecision(6) << c.max_err;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
  for (const auto& c : r.checks) {
    if (!c.pass) {
      err << "verification failed: " << c.name << "\n";
      return kExitFailed;
    }
  }
  return kExitOk;
}

void write_report(const std::string& path, const VerificationReport& r) {
  if (!path.empty()) write_atomic(path, dump(to_json(r)));
}

SpecFile load_spec(const std::string& path) { return spec_from_json(load_json(path)); }

Grid1D grid_for(const SpecFile& s, const std::string& text) {
  if (text.empty()) return s.default_grid();
  return parse_grid(text, s.disc ? GridKind::disc_diameter : GridKind::real_line);
}

Json selection_json(const FlipSelection& sel) {
  Json out = Json::array();
  for (const auto& [i, k] : sel.kept()) {
    if (k == FlipSelection::kAllCopies) {
      out.push_back(i);
    } else {
      out.push_back(std::to_string(i) + ":" + std::to_string(k));
    }
  }
  return out;
}

// Complex number from "re" or "re,im".
Complex parse_complex(const std::string& s) {
  double re = 0.0, im = 0.0;
  char tail = 0;
  const int n = std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &tail);
  if (n == 1 && s.find(',') == std::string::npos) return {re, 0.0};
  if (n != 2) throw ParseError("bad complex number \"" + s + "\" (expected re or re,im)");
  return {re, im};
}

DerivationKind parse_kind(const std::string& s) {
  if (s == "d") return Derivative{};
  double v = 0.0;
  char tail = 0;
  if (s.rfind("delta:", 0) == 0 && std::sscanf(s.c_str() + 6, "%lf%c", &v, &tail) == 1) return ShiftDifference{v};
  if (s.rfind("gamma:", 0) == 0 && std::sscanf(s.c_str() + 6, "%lf%c", &v, &tail) == 1) return DilationDifference{v};
  throw ParseError("derivation kind must be d, delta:b or gamma:q, got \"" + s + "\"");
}

std::vector<double> real_points(const Grid1D& g) {
  std::vector<double> xs;
  for (const auto& p : g.points()) xs.push_back(p.real());
  return xs;
}

// Spacing b / k so that x and x + b are both grid points.
Grid1D align_to_shift(Grid1D g, double b) {
  const double h0 = (g.stop - g.start) / static_cast<double>(g.count - 1);
  const double k = std::max(1.0, std::round(std::abs(b) / h0));
  const double h = std::abs(b) / k;
  g.count = static_cast<std::size_t>(std::floor((g.stop - g.start) / h + 1e-9)) + 1;
  g.stop = g.start + h * static_cast<double>(g.count - 1);
  return g;
}

std::vector<double> parse_alpha(const std::string& mode, int depth) {
  if (mode == "display") return display_alpha(depth);
  if (mode == "default") return default_alpha(depth);
  std::vector<double> out;
  std::stringstream ss(mode);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw ParseError("bad alpha list \"" + mode + "\"");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != depth) throw ParseError("alpha list length must equal --depth");
  return out;
}

struct Options {
  // shared
  std::string f, g, out, report, grid, csv;
  double tol = 1e-6;
  bool verify = false;
  // factorize
  std::vector<std::string> coeffs;
  std::string poly, strip_data, domain = "disc";
  // flip
  std::vector<std::string> select;
  // perturb
  std::vector<std::string> atoms;
  std::string sigma;
  // outer
  std::string kind;
  double eta = 0.0;
  std::vector<double> sin_coeffs;
  // enumerate
  std::string sigma_menu, outer_menu, request;
  std::size_t flip_cap = std::size_t{1} << 20;
  std::size_t max_solutions = std::size_t{1} << 16;
  std::uint64_t seed = 0;
  bool no_dedup = false;
  // pauli
  int depth = 3;
  std::string signs, base_signs, alpha = "display", xgrid = "-2:2:64", xigrid, out_dir = ".";
  // couple
  std::string input, deriv = "d";
  double theta = 1.0, a = 0.0, half_length = 1.0;
  int samples = 129;
  // export
  std::string format = "spec";
};

// Runs check_lemma_conditions next to the modulus comparison when both are specs.
VerificationReport verify_pair(const SpecFile& f, const SpecFile& g, const Grid1D& grid, double tol) {
  if (f.disc != g.disc) throw DomainError("f and g live on different domains (disc vs strip)");
  VerificationReport r = compare_modulus(f.evaluator(), g.evaluator(), grid, tol);
  if (f.disc) {
    r.merge(check_lemma_conditions(f.f.disc, g.f.disc), "lemma.");
  } else {
    r.merge(check_lemma_conditions(f.f, g.f), "lemma.");
  }
  return r;
}

int emit_solution(const Options& o, const SpecFile& f, const SpecFile& g, std::ostream& out, std::ostream& err) {
  if (!o.out.empty()) write_atomic(o.out, dump(to_json(g)));
  out << "wrote " << (o.out.empty() ? "(nothing)" : o.out) << ": " << g.f.disc.zeros.count() << " zeros, "
      << g.f.disc.singular.size() << " atoms\n";
  if (!o.verify) return kExitOk;
  const auto r = verify_pair(f, g, grid_for(f, o.grid), o.tol);
  write_report(o.report, r);
  return finish(r, out, err);
}

int cmd_factorize(const Options& o, std::ostream& out) {
  SpecFile s;
  if (!o.strip_data.empty()) {
    if (!o.poly.empty() || !o.coeffs.empty()) throw ParseError("--strip-data excludes --poly / --coeffs");
    s.f = lift(strip_data_from_json(load_json(o.strip_data)));
  } else {
    std::vector<Complex> c;
    if (!o.poly.empty()) {
      const Json j = load_json(o.poly);
      const Json& arr = j.is_object() && j.contains("coeffs") ? j.at("coeffs") : j;
      if (!arr.is_array()) throw ParseError("polynomial file must hold a coeffs array");
      for (const auto& v : arr) {
        if (v.is_number()) {
          c.emplace_back(v.get<double>(), 0.0);
        } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
          c.emplace_back(v[0].get<double>(), v[1].get<double>());
        } else {
          throw ParseError("coefficients must be numbers or [re, im] pairs");
        }
      }
    } else {
      for (const auto& t : o.coeffs) c.push_back(parse_complex(t));
    }
    if (c.empty()) throw ParseError("factorize needs --coeffs, --poly or --strip-data");
    const auto d = factorize_polynomial(c);
    if (o.domain == "disc") {
      s.disc = true;
      s.f.disc = d;
    } else {
      s.f = lower(d);
    }
  }
  if (!o.out.empty()) write_atomic(o.out, dump(to_json(s)));
  out << (s.disc ? "disc" : "strip") << " spec: " << s.f.disc.zeros.count() << " zeros in the disc, "
      << s.f.disc.singular.size() << " atoms, M = " << s.f.disc.outer.size() << "\n";
  return kExitOk;
}

int cmd_flip(const Options& o, std::ostream& out, std::ostream& err) {
  const SpecFile f = load_spec(o.f);
  SolutionRequest req;
  if (o.select.size() == 1 && o.select[0] == "none") {
    req.flip = FlipSelection::flip_all();
  } else {
    req.flip = selection_from_tokens(o.select);
  }
  return emit_solution(o, f, apply_request(f, req), out, err);
}

int cmd_perturb(const Options& o, std::ostream& out, std::ostream& err) {
  const SpecFile f = load_spec(o.f);
  SolutionRequest req;
  if (!o.sigma.empty()) {
    req.sigma = OddSingularPerturbation(measure_from_json(load_json(o.sigma)));
  } else {
    std::vector<Atom> atoms;
    for (const auto& t : o.atoms) {
      double th = 0.0, m = 0.0;
      char tail = 0;
      if (std::sscanf(t.c_str(), "%lf:%lf%c", &th, &m, &tail) != 2) throw ParseError("atom must be theta:mass, got \"" + t + "\"");
      atoms.push_back({th, m});
    }
    req.sigma = OddSingularPerturbation(AtomicMeasure(atoms));
  }
  return emit_solution(o, f, apply_request(f, req), out, err);
}

int cmd_outer(const Options& o, std::ostream& out, std::ostream& err) {
  const SpecFile f = load_spec(o.f);
  Json mod{{"kind", o.kind}};
  if (o.kind == "exp") mod["eta"] = o.eta;
  if (o.kind == "odd") mod["sin_coeffs"] = o.sin_coeffs;
  SolutionRequest req;
  req.outer = outer_modifier_from_json(mod, f.f.disc.outer.size());
  return emit_solution(o, f, apply_request(f, req), out, err);
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream& err) {
  const SpecFile f = load_spec(o.f);
  const std::size_t M = f.f.disc.outer.size();
  if (!o.request.empty()) {
    return emit_solution(o, f, apply_request(f, request_from_json(load_json(o.request), M)), out, err);
  }
  if (f.disc) throw DomainError("enumerate works on strip specs; convert with factorize --domain strip");
  std::vector<OddSingularPerturbation> sigmas;
  if (!o.sigma_menu.empty()) {
    const Json j = load_json(o.sigma_menu);
    if (!j.is_array()) throw ParseError("sigma menu must be an array of atom lists");
    for (const auto& m : j) sigmas.emplace_back(measure_from_json(m));
  }
  std::vector<OuterModifier> outers;
  if (!o.outer_menu.empty()) {
    const Json j = load_json(o.outer_menu);
    if (!j.is_array()) throw ParseError("outer menu must be an array of modifiers");
    for (const auto& m : j) outers.push_back(outer_modifier_from_json(m, M));
  }
  EnumerationOptions opts;
  opts.flip_cap = o.flip_cap;
  opts.max_solutions = o.max_solutions;
  opts.seed = o.seed;
  opts.grid = grid_for(f, o.grid);
  opts.tol = o.tol;
  opts.dedup = !o.no_dedup;
  const auto e = enumerate_solutions(f.f, opts, sigmas, outers);

  Json arr = Json::array();
  VerificationReport all;
  for (std::size_t i = 0; i < e.solutions.size(); ++i) {
    const auto& s = e.solutions[i];
    SpecFile g;
    g.f = s.g;
    arr.push_back({{"spec", to_json(g)},
                   {"flip", selection_json(s.flip)},
                   {"sigma_index", s.sigma_index},
                   {"outer_index", s.outer_index},
                   {"report", to_json(s.report)}});
    all.merge(s.report, "solution" + std::to_string(i) + ".");
  }
  if (!o.out.empty()) write_atomic(o.out, dump(arr));
  out << e.candidates << " candidates, " << e.solutions.size() << " distinct solutions\n";
  for (const auto& c : all.checks) {
    if (!c.pass) {
      err << "verification failed: " << c.name << "\n";
      return kExitFailed;
    }
  }
  return kExitOk;
}

int cmd_pauli(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.depth < 1) throw ParseError("--depth must be positive");
  const auto alphas = parse_alpha(o.alpha, o.depth);
  const auto signs = parse_signs(o.signs);
  const auto base = o.base_signs.empty() ? std::vector<int>(signs.size(), 1) : parse_signs(o.base_signs);
  if (static_cast<int>(signs.size()) != o.depth || static_cast<int>(base.size()) != o.depth) {
    throw ParseError("sign patterns must have --depth characters");
  }
  const RieszSpec a(alphas, base), b(alphas, signs);
  const Grid1D xs = parse_grid(o.xgrid);
  Grid1D xis;
  if (o.xigrid.empty()) {
    // covers the support of both spectra
    const double reach = (std::pow(3.0, o.depth + 1) - 3.0) / 2.0 + 2.0;
    xis = Grid1D::real_line(-reach, reach, static_cast<std::size_t>(8 * reach) + 1);
  } else {
    xis = parse_grid(o.xigrid);
  }
  const auto env = SpectralEnvelope::indicator();
  const auto fa = pauli_partner(a, env), fb = pauli_partner(b, env);

  std::filesystem::create_directories(o.out_dir);
  auto table = [](const Grid1D& g, const char* head, const std::function<Complex(double)>& p,
                  const std::function<Complex(double)>& q) {
    std::ostringstream os;
    os << head << "\n" << std::setprecision(17);
    for (const auto& z : g.points()) {
      const double u = std::abs(p(z.real())), v = std::abs(q(z.real()));
      os << z.real() << "," << u << "," << v << "," << std::abs(u - v) << "\n";
    }
    return os.str();
  };
  const auto dir = std::filesystem::path(o.out_dir);
  write_atomic((dir / "pauli_time.csv").string(), table(xs, "x,abs_f,abs_f_prime,absdiff", fa.time, fb.time));
  write_atomic((dir / "pauli_freq.csv").string(), table(xis, "xi,abs_fhat,abs_fhat_prime,absdiff", fa.freq, fb.freq));

  auto r = verify_pauli_pair(a, b, env, xs, xis);
  r.metadata["alpha"] = o.alpha;
  write_atomic((dir / "pauli_report.json").string(), dump(to_json(r)));
  out << "pauli " << format_signs(base) << " vs " << format_signs(signs) << " at depth " << o.depth << " (" << o.alpha
      << " alpha)\n";
  return finish(r, out, err);
}

int cmd_couple_reference(const Options& o, std::ostream& out, std::ostream& err) {
  std::stringstream in(read_text(o.input));
  std::string line;
  std::ostringstream csv;
  csv << "fx_re,fx_im,hx_re,hx_im,g1_re,g1_im,g2_re,g2_im\n" << std::setprecision(17);
  Check circles{"circles", true, 0.0, {}, ""};
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' || line[0] == '+' || line[0] == '.')) continue;
    double v[4];
    char tail = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &v[3], &tail) != 4) {
      throw ParseError(o.input + ":" + std::to_string(row) + ": expected fx_re,fx_im,hx_re,hx_im");
    }
    const ReferencePoint p{Complex(v[0], v[1]), Complex(v[2], v[3])};
    const auto r = reference_solutions(p);
    const double s = std::max(1.0, std::abs(p.fx) + std::abs(p.hx));
    for (const Complex g : {r.same, r.reflected}) {
      const double e = std::max(std::abs(std::abs(g) - std::abs(p.fx)), std::abs(std::abs(g - p.hx) - std::abs(p.fx - p.hx))) / s;
      if (e > circles.max_err) {
        circles.max_err = e;
        circles.argmax = p.fx;
      }
    }
    csv << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << "," << r.same.real() << "," << r.same.imag() << ","
        << r.reflected.real() << "," << r.reflected.imag() << "\n";
  }
  circles.pass = circles.max_err <= 1e-12;
  VerificationReport rep;
  rep.checks.push_back(circles);
  rep.metadata["input"] = o.input;
  if (!o.out.empty()) write_atomic(o.out, csv.str());
  write_report(o.report, rep);
  return finish(rep, out, err);
}

int cmd_couple_derivation(const Options& o, std::ostream& out, std::ostream& err) {
  const SpecFile f = load_spec(o.f), g = load_spec(o.g);
  if (f.disc || g.disc) throw DomainError("couple derivation works on strip specs");
  const auto kind = parse_kind(o.deriv);
  Grid1D grid = grid_for(f, o.grid);
  if (const auto* s = std::get_if<ShiftDifference>(&kind)) grid = align_to_shift(grid, s->b);
  const auto r = check_derivation_dichotomy(f.f, g.f, kind, real_points(grid));
  auto rep = r.report;
  rep.metadata["grid"] = grid.describe();
  write_report(o.report, rep);
  out << "branch: " << to_string(r.branch);
  if (r.beta) out << "  beta = " << std::setprecision(12) << r.beta->real() << (r.beta->imag() < 0 ? "-" : "+") << std::abs(r.beta->imag()) << "i";
  out << "\n";
  return finish(rep, out, err);
}

int cmd_couple_segment(const Options& o, std::ostream& out, std::ostream& err) {
  const SpecFile f = load_spec(o.f), g = load_spec(o.g);
  if (f.disc || g.disc) throw DomainError("couple segment works on strip specs");
  SegmentSpec seg{o.a, o.theta, o.half_length, o.samples};
  seg.validate();
  const auto r = conclude_uniqueness(f.f, g.f, seg, grid_for(f, o.grid));
  auto rep = r.report;
  rep.metadata["verdict"] = to_string(r.verdict);
  write_report(o.report, rep);
  out << "verdict: " << to_string(r.verdict);
  if (r.c) out << "  c = " << std::setprecision(12) << r.c->real() << (r.c->imag() < 0 ? "-" : "+") << std::abs(r.c->imag()) << "i";
  out << "\n";
  return finish(rep, out, err);
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const SpecFile f = load_spec(o.f), g = load_spec(o.g);
  const Grid1D grid = grid_for(f, o.grid);
  const auto r = verify_pair(f, g, grid, o.tol);
  write_report(o.report, r);
  if (!o.csv.empty()) write_atomic(o.csv, modulus_csv(sample_modulus(f.evaluator(), g.evaluator(), grid)));
  out << "verify on " << grid.describe() << " at tol " << o.tol << "\n";
  return finish(r, out, err);
}

int cmd_export(const Options& o, std::ostream& out) {
  const SpecFile f = load_spec(o.f);
  std::string text;
  if (o.format == "spec") {
    text = dump(to_json(f));
  } else if (o.format == "strip-data") {
    if (f.disc) throw DomainError("strip-data export needs a strip spec");
    text = dump(to_json(to_strip_data(f.f)));
  } else if (o.format == "csv") {
    const auto e = f.evaluator();
    std::ostringstream os;
    os << "re,im,abs_f,arg_f\n" << std::setprecision(17);
    for (const auto& z : grid_for(f, o.grid).points()) {
      const Complex v = e(z);
      os << z.real() << "," << z.imag() << "," << std::abs(v) << "," << std::arg(v) << "\n";
    }
    text = os.str();
  } else {
    throw ParseError("--format must be spec, strip-data or csv");
  }
  if (o.out.empty()) {
    out << text;
  } else {
    write_atomic(o.out, text);
    out << "wrote " << o.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase retrieval toolkit for wide-band signals", "wbpr"};
  app.require_subcommand(1);
  Options o;

  auto add_verify = [&](CLI::App* c) {
    c->add_flag("--verify", o.verify, "Check g against f after building it");
    c->add_option("--grid", o.grid, "Sampling grid a:b:n");
    c->add_option("--tol", o.tol, "Modulus tolerance");
    c->add_option("--report", o.report, "JSON report path");
  };

  auto* factorize = app.add_subcommand("factorize", "Build a spec from polynomial coefficients or strip data");
  factorize->add_option("--coeffs", o.coeffs, "Coefficients c0 c1 ... (re or re,im)");
  factorize->add_option("--poly", o.poly, "JSON file with a coeffs array");
  factorize->add_option("--strip-data", o.strip_data, "Strip-side data to lift");
  factorize->add_option("--domain", o.domain, "disc or strip")->check(CLI::IsMember({"disc", "strip"}));
  factorize->add_option("--out", o.out, "Output spec");

  auto* flip = app.add_subcommand("flip", "Conjugate every zero not kept");
  flip->add_option("--f", o.f, "Input spec")->required();
  flip->add_option("--select", o.select, "Kept zeros: i or i:k (\"none\" flips all)")->required();
  flip->add_option("--out", o.out, "Output spec");
  add_verify(flip);

  auto* perturb = app.add_subcommand("perturb", "Odd singular-measure perturbation");
  perturb->add_option("--f", o.f, "Input spec")->required();
  auto* atom_opt = perturb->add_option("--atom", o.atoms, "sigma_plus atom theta:mass");
  perturb->add_option("--sigma", o.sigma, "JSON atom list")->excludes(atom_opt);
  perturb->add_option("--out", o.out, "Output spec");
  add_verify(perturb);

  auto* outer = app.add_subcommand("outer", "Outer modifier");
  outer->add_option("--f", o.f, "Input spec")->required();
  outer->add_option("--kind", o.kind, "star, exp or odd")->required()->check(CLI::IsMember({"star", "exp", "odd"}));
  outer->add_option("--eta", o.eta, "Exponent for kind exp");
  outer->add_option("--sin-coeffs", o.sin_coeffs, "log|u| = sum c_k sin(k theta), k = 1, 2, ...");
  outer->add_option("--out", o.out, "Output spec");
  add_verify(outer);

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate the solution family of a strip spec");
  enumerate->add_option("--f", o.f, "Input spec")->required();
  enumerate->add_option("--sigma-menu", o.sigma_menu, "JSON array of sigma_plus atom lists");
  enumerate->add_option("--outer-menu", o.outer_menu, "JSON array of outer modifiers");
  enumerate->add_option("--request", o.request, "Single solution request instead of the full family");
  enumerate->add_option("--flip-cap", o.flip_cap, "Maximum flip selections");
  enumerate->add_option("--max-solutions", o.max_solutions, "Budget on candidates");
  enumerate->add_option("--seed", o.seed, "Seed for sampled flips");
  enumerate->add_flag("--no-dedup", o.no_dedup, "Keep duplicates");
  enumerate->add_option("--grid", o.grid, "Sampling grid a:b:n");
  enumerate->add_option("--tol", o.tol, "Modulus tolerance");
  enumerate->add_option("--out", o.out, "Output JSON");
  enumerate->add_option("--report", o.report, "Report path (with --request)");
  enumerate->add_flag("--verify", o.verify, "Verify (with --request)");

  auto* pauli = app.add_subcommand("pauli", "Riesz-product Pauli partners");
  pauli->add_option("--depth", o.depth, "Depth N");
  pauli->add_option("--signs", o.signs, "Sign pattern, e.g. ++-")->required();
  pauli->add_option("--base-signs", o.base_signs, "Pattern compared against (default all +)");
  pauli->add_option("--alpha", o.alpha, "default, display or a comma list");
  pauli->add_option("--xgrid", o.xgrid, "Time grid a:b:n");
  pauli->add_option("--xigrid", o.xigrid, "Frequency grid a:b:n");
  pauli->add_option("--out-dir", o.out_dir, "Directory for CSV and report");

  auto* couple = app.add_subcommand("couple", "Coupled-constraint experiments");
  couple->require_subcommand(1);
  auto* reference = couple->add_subcommand("reference", "Both solutions of |g| = |f|, |g - h| = |f - h| per point");
  reference->add_option("--in", o.input, "CSV of fx_re,fx_im,hx_re,hx_im")->required();
  reference->add_option("--out", o.out, "Output CSV");
  reference->add_option("--report", o.report, "JSON report path");
  auto* derivation = couple->add_subcommand("derivation", "Classify g against beta f / beta f*");
  derivation->add_option("--kind", o.deriv, "d, delta:b or gamma:q");
  derivation->add_option("--f", o.f, "Spec f")->required();
  derivation->add_option("--g", o.g, "Spec g")->required();
  derivation->add_option("--grid", o.grid, "Grid a:b:n");
  derivation->add_option("--report", o.report, "JSON report path");
  auto* segment = couple->add_subcommand("segment", "Uniqueness from agreement on a segment");
  segment->add_option("--f", o.f, "Spec f")->required();
  segment->add_option("--g", o.g, "Spec g")->required();
  segment->add_option("--theta", o.theta, "Segment angle");
  segment->add_option("--a", o.a, "Segment centre on the real axis");
  segment->add_option("--len", o.half_length, "Half length");
  segment->add_option("--samples", o.samples, "Points on the segment");
  segment->add_option("--grid", o.grid, "Real-line grid a:b:n");
  segment->add_option("--report", o.report, "JSON report path");

  auto* verify = app.add_subcommand("verify", "Compare |f| and |g| and check the factorization conditions");
  verify->add_option("--f", o.f, "Spec f")->required();
  verify->add_option("--g", o.g, "Spec g")->required();
  verify->add_option("--grid", o.grid, "Grid a:b:n");
  verify->add_option("--tol", o.tol, "Modulus tolerance");
  verify->add_option("--report", o.report, "JSON report path");
  verify->add_option("--csv", o.csv, "Per-point CSV path");

  auto* exp = app.add_subcommand("export", "Re-emit a spec as JSON, strip data or CSV samples");
  exp->add_option("--f", o.f, "Spec")->required();
  exp->add_option("--format", o.format, "spec, strip-data or csv");
  exp->add_option("--grid", o.grid, "Grid for csv");
  exp->add_option("--out", o.out, "Output path (stdout if omitted)");

  std::vector<std::string> argv_store{"wbpr"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (factorize->parsed()) return cmd_factorize(o, out);
    if (flip->parsed()) return cmd_flip(o, out, err);
    if (perturb->parsed()) return cmd_perturb(o, out, err);
    if (outer->parsed()) return cmd_outer(o, out, err);
    if (enumerate->parsed()) return cmd_enumerate(o, out, err);
    if (pauli->parsed()) return cmd_pauli(o, out, err);
    if (reference->parsed()) return cmd_couple_reference(o, out, err);
    if (derivation->parsed()) return cmd_couple_derivation(o, out, err);
    if (segment->parsed()) return cmd_couple_segment(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (exp->parsed()) return cmd_export(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitParse;
}

}  // namespace wbpr::cli
