// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "wbpr/coupled_constraints.hpp"
#include "wbpr/errors.hpp"
#include "wbpr/riesz_pauli.hpp"
#include "wbpr/solution_set.hpp"
#include "wbpr/verify_harness.hpp"

using namespace wbpr;
namespace t = wbpr::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --- 1 ---------------------------------------------------------------------
Outcome flip_soundness() {
  Outcome out;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = t::random_disc(rng, 6, 3);
    const auto g = flip_zeros(f, t::random_selection(rng, f.zeros));
    const auto r = compare_modulus(evaluator(f), evaluator(g), default_disc_grid(), 1e-9);
    worst = std::max(worst, r.find("modulus")->max_err);
    out.require(r.passed(), "pair " + std::to_string(i) + " max_err " + sci(r.find("modulus")->max_err));
  }
  const double secs = seconds_since(t0);
  out.require(secs < 5.0, "runtime " + sci(secs) + " s");
  out.detail = (out.pass ? "" : out.detail + " | ") + "100 pairs, worst " + sci(worst) + ", " + sci(secs) + " s";
  return out;
}

// --- 2 ---------------------------------------------------------------------
Outcome singular_perturbation() {
  Outcome out;
  std::mt19937_64 rng(1002);
  int used = 0;
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const auto f = t::random_disc(rng, 4, 3);
    const auto sigma = t::admissible_sigma(rng, f.singular);
    if (sigma.empty()) continue;
    ++used;
    const auto g = perturb_singular(f, sigma);
    const SignedMeasure lf = f.singular.as_signed() + f.singular.as_signed().conjugated();
    const SignedMeasure lg = g.singular.as_signed() + g.singular.as_signed().conjugated();
    out.require(lf.distance(lg) == 0.0, "measure identity off by " + sci(lf.distance(lg)));
    const auto r = compare_modulus(evaluator(f), evaluator(g), default_disc_grid(), 1e-9);
    worst = std::max(worst, r.find("modulus")->max_err);
    out.require(r.passed(), "modulus " + sci(r.find("modulus")->max_err));
  }
  out.require(used >= 20, "only " + std::to_string(used) + " nonempty menus");

  DiscFactorization f;
  f.singular = AtomicMeasure({{-kPi / 2, 0.25}});
  bool named = false;
  try {
    perturb_singular(f, OddSingularPerturbation(AtomicMeasure({{kPi / 2, 0.5}})));
  } catch (const DominanceViolated& e) {
    named = std::string(e.what()).find("theta=1.57") != std::string::npos;
  }
  out.require(named, "dominance violation not rejected with the atom named");
  out.detail = (out.pass ? "" : out.detail + " | ") + std::to_string(used) + " perturbations exact, worst modulus " + sci(worst);
  return out;
}

// --- 3 ---------------------------------------------------------------------
Outcome outer_modifier() {
  Outcome out;
  std::mt19937_64 rng(1003);
  const Grid1D grid = Grid1D::disc_diameter(-0.9, 0.9, 257);
  double worst_full = 0.0, worst_half = 0.0;
  for (int i = 0; i < 10; ++i) {
    const std::uint64_t seed = rng();
    double err[2];
    for (int h = 0; h < 2; ++h) {
      const std::size_t M = h == 0 ? 4096 : 2048;
      std::mt19937_64 local(seed);
      const auto f = t::random_disc(local, 4, 2, M);
      const auto g = modify_outer(f, t::random_odd(local, M));
      err[h] = compare_modulus(evaluator(f), evaluator(g), grid, 1e-6).find("modulus")->max_err;
    }
    worst_full = std::max(worst_full, err[0]);
    worst_half = std::max(worst_half, err[1]);
  }
  out.require(worst_full < 1e-6, "M=4096 error " + sci(worst_full));
  out.require(worst_half < 2e-6, "M=2048 error " + sci(worst_half) + " exceeds twice the bound");
  out.detail = (out.pass ? "" : out.detail + " | ") + "M=4096 " + sci(worst_full) + ", M=2048 " + sci(worst_half);
  return out;
}

// --- 4 ---------------------------------------------------------------------
Outcome uv_contract() {
  Outcome out;
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto f = t::random_disc(rng, 5, 3);
    const auto sel = t::random_selection(rng, f.zeros);
    const auto sigma = i % 2 ? t::admissible_sigma(rng, f.singular) : OddSingularPerturbation{};
    std::optional<OuterModifier> mod;
    if (i % 4 == 1) mod = t::random_odd(rng);
    if (i % 4 == 3) mod = StarQuotient{};
    const auto g = disc_solution(f, sel, sigma, mod);
    const auto uv = uv_split(f, sel, sigma, mod);
    const auto vs = uv.v.star();
    for (int k = 0; k < 32; ++k) {
      const Complex w = std::polar(t::uniform(rng, 0.0, 0.9), t::uniform(rng, -kPi, kPi));
      const Complex u = uv.u.eval(w);
      worst = std::max({worst, t::rel_err(u * uv.v.eval(w), eval_disc(f, w)), t::rel_err(u * vs.eval(w), eval_disc(g, w))});
    }
  }
  out.require(worst < 1e-8, "relative error " + sci(worst));
  out.detail = (out.pass ? "" : out.detail + " | ") + "20 triples x 32 points, worst " + sci(worst);
  return out;
}

// --- 5 ---------------------------------------------------------------------
Outcome strip_transfer() {
  Outcome out;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1005);
  double rt = 0.0, wp = 0.0, corner = 0.0, poly = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Complex z(t::uniform(rng, -4, 4), t::uniform(rng, -0.95, 0.95));
    rt = std::max(rt, std::abs(phi_inv(phi(z)) - z) / std::max(1.0, std::abs(z)));
    const Complex w = std::polar(t::uniform(rng, 0, 0.95), t::uniform(rng, -kPi, kPi));
    rt = std::max(rt, std::abs(phi(phi_inv(w)) - w));
    wp = std::max(wp, std::abs(weight_W(z) * phi_prime(z) - kPi));
    const double a = t::uniform(rng, 0.1, 2.0);
    const Complex zc(t::uniform(rng, -2, 2), t::uniform(rng, -0.95, 0.95));
    corner = std::max({corner, t::rel_err(eval_singular_inner(AtomicMeasure({{0.0, a}}), phi(zc)), std::exp(-a * std::exp(0.5 * kPi * zc))),
                       t::rel_err(eval_singular_inner(AtomicMeasure({{kPi, a}}), phi(zc)), std::exp(-a * std::exp(-0.5 * kPi * zc)))});
  }
  // outer function of log|P| against P itself, P(w) = (2 - w)(3 + i w)
  auto P = [](Complex w) { return (2.0 - w) * (3.0 + Complex(0, 1) * w); };
  const auto L = BoundaryLogModulus::from_function([&](double th) { return std::log(std::abs(P(std::polar(1.0, th)))); });
  const Complex p0 = P(0.0);
  for (int i = 0; i < 200; ++i) {
    const Complex w = std::polar(t::uniform(rng, 0, 0.9), t::uniform(rng, -kPi, kPi));
    // the outer function is normalized positive at 0
    poly = std::max(poly, t::rel_err(eval_outer(L, w) * (p0 / std::abs(p0)), P(w)));
  }
  const double secs = seconds_since(t0);
  out.require(rt < 1e-12, "round trip " + sci(rt));
  out.require(wp < 1e-10, "W phi' " + sci(wp));
  out.require(corner < 1e-12, "corner identity " + sci(corner));
  out.require(poly < 1e-6, "polynomial reconstruction " + sci(poly));
  out.require(secs < 1.0, "runtime " + sci(secs) + " s");
  out.detail = (out.pass ? "" : out.detail + " | ") + "round trip " + sci(rt) + ", W phi' " + sci(wp) + ", corner " + sci(corner) +
               ", polynomial " + sci(poly) + ", " + sci(secs) + " s";
  return out;
}

// --- 6 ---------------------------------------------------------------------
Outcome pauli_family() {
  Outcome out;
  const auto t0 = Clock::now();
  const int n = 4;
  const auto alphas = display_alpha(n);
  const Grid1D xs = Grid1D::real_line(-2.0, 2.0, 64);
  const Grid1D xis = Grid1D::real_line(-130.0, 130.0, 521);
  const auto env = SpectralEnvelope::indicator();
  std::vector<RieszSpec> specs;
  for (int bits = 0; bits < (1 << n); ++bits) {
    std::vector<int> s(n);
    for (int j = 0; j < n; ++j) s[j] = (bits >> j) & 1 ? -1 : 1;
    specs.emplace_back(alphas, s);
  }
  double time_err = 0.0, freq_err = 0.0, min_ratio = INFINITY;
  int pairs = 0;
  for (std::size_t a = 0; a < specs.size(); ++a) {
    for (std::size_t b = a + 1; b < specs.size(); ++b) {
      const auto r = verify_pauli_pair(specs[a], specs[b], env, xs, xis);
      ++pairs;
      time_err = std::max(time_err, r.find("time.time_modulus")->max_err);
      freq_err = std::max(freq_err, r.find("freq.spectral_modulus")->max_err);
      min_ratio = std::min(min_ratio, r.find("ratio")->max_err);
      out.require(r.find("coefficients")->pass, "coefficient tables differ");
      out.require(r.passed(), format_signs(specs[a].signs()) + " vs " + format_signs(specs[b].signs()));
    }
  }
  out.require(time_err < 1e-13, "time modulus " + sci(time_err));
  out.require(freq_err < 1e-12, "spectral modulus " + sci(freq_err));
  out.require(min_ratio >= 1e-6, "ratio variation " + sci(min_ratio));
  for (int d = 1; d <= 4; ++d) {
    const auto table = riesz_coefficients(RieszSpec(default_alpha(d)));
    for (const auto& [k, a] : table.entries()) {
      if (a != 0.0 && std::abs(a) > std::exp(-2.0 * std::abs(static_cast<double>(k)))) {
        out.require(false, "decay fails at N=" + std::to_string(d) + " k=" + std::to_string(k));
      }
    }
  }
  const double secs = seconds_since(t0);
  out.require(secs < 2.0, "runtime " + sci(secs) + " s");
  out.detail = (out.pass ? "" : out.detail + " | ") + std::to_string(pairs) + " pairs, time " + sci(time_err) + ", spectral " +
               sci(freq_err) + ", min ratio variation " + sci(min_ratio) + ", " + sci(secs) + " s";
  return out;
}

// --- 7 ---------------------------------------------------------------------
Outcome reference_coupling() {
  Outcome out;
  std::mt19937_64 rng(1007);
  double circle = 0.0, oracle = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ReferencePoint p{Complex(t::uniform(rng, -3, 3), t::uniform(rng, -3, 3)),
                           Complex(t::uniform(rng, -3, 3), t::uniform(rng, -3, 3))};
    if (std::abs(p.hx) < 1e-6) continue;
    const auto r = reference_solutions(p);
    const double s = std::max(1.0, std::abs(p.fx) + std::abs(p.hx));
    for (const Complex g : {r.same, r.reflected}) {
      circle = std::max({circle, std::abs(std::abs(g) - std::abs(p.fx)) / s,
                         std::abs(std::abs(g - p.hx) - std::abs(p.fx - p.hx)) / s});
    }
    // |g|^2 = R0^2 and |g - h|^2 = R1^2: along u = h/|h| the real part is fixed,
    // the normal part solves a quadratic.
    const double d = std::abs(p.hx), r0 = std::abs(p.fx), r1 = std::abs(p.fx - p.hx);
    const double a = (r0 * r0 - r1 * r1 + d * d) / (2 * d);
    const double q = std::sqrt(std::max(r0 * r0 - a * a, 0.0));
    const Complex u = p.hx / d;
    const Complex o1 = (a + Complex(0, q)) * u, o2 = (a - Complex(0, q)) * u;
    oracle = std::max(oracle, std::min(std::max(std::abs(r.same - o1), std::abs(r.reflected - o2)),
                                       std::max(std::abs(r.same - o2), std::abs(r.reflected - o1))));
  }
  out.require(circle < 1e-12, "circle residual " + sci(circle));
  out.require(oracle < 1e-10, "oracle disagreement " + sci(oracle));
  out.detail = (out.pass ? "" : out.detail + " | ") + "1000 pairs, circle residual " + sci(circle) + ", oracle " + sci(oracle);
  return out;
}

// --- 8 ---------------------------------------------------------------------
Outcome dichotomy() {
  Outcome out;
  const auto f = t::strip_with_zero(Complex(0.5, 0.3));
  std::vector<double> grid;
  for (int k = 0; k < 61; ++k) grid.push_back(-3.0 + 0.1 * k);
  const Evaluator fe = evaluator(f);

  const Evaluator two = [fe](Complex z) { return 2.0 * fe(z); };
  const auto a = check_derivation_dichotomy(fe, two, Derivative{}, grid);
  out.require(a.branch == DichotomyBranch::beta_f && a.beta && std::abs(*a.beta - 2.0) < 1e-8, "g = 2f: " + to_string(a.branch));

  const auto b = check_derivation_dichotomy(f, star(f), Derivative{}, grid);
  out.require(b.branch == DichotomyBranch::beta_f_star && b.beta && std::abs(*b.beta - 1.0) < 1e-8, "g = f*: " + to_string(b.branch));

  const auto g = trivial_solutions(f, 1.0, 2.0 * kPi, false);
  std::vector<double> short_grid(grid.begin(), grid.end() - 10);
  const auto c = check_derivation_dichotomy(f, g, ShiftDifference{1.0}, short_grid);
  double v_err = 0.0;
  for (const auto& [x, v] : c.ratio) v_err = std::max(v_err, std::abs(v - std::polar(1.0, 2 * kPi * x)));
  out.require(c.branch == DichotomyBranch::periodic_f && !c.ratio.empty() && v_err < 1e-8,
              "g = e^{2 pi i z} f: " + to_string(c.branch) + ", V error " + sci(v_err));
  out.detail = (out.pass ? "" : out.detail + " | ") + "beta " + sci(std::abs(*a.beta - 2.0)) + ", beta* " +
               sci(std::abs(*b.beta - 1.0)) + ", V " + sci(v_err);
  return out;
}

// --- 9 ---------------------------------------------------------------------
Outcome segment_uniqueness() {
  Outcome out;
  const auto f = t::strip_with_zero(Complex(0.3, 0.2));
  const Complex c = std::polar(1.0, 0.7);
  const SegmentSpec seg{0.0, 1.0, 1.0, 129};
  const auto u = conclude_uniqueness(f, trivial_solutions(f, c, 0.0, false), seg, default_real_grid());
  const double c_err = u.c ? std::abs(*u.c - c) : INFINITY;
  out.require(u.verdict == UniquenessVerdict::unique && c_err < 1e-10, "g = cf: " + to_string(u.verdict) + ", c error " + sci(c_err));

  const auto flipped = strip_solution(f, FlipSelection{}, {}, std::nullopt);
  const double dev = segment_agreement(f, flipped, seg).find("segment")->max_err;
  out.require(dev > 1e-6, "flip deviation " + sci(dev));

  std::mt19937_64 rng(1009);
  int agree = 0;
  for (int i = 0; i < 50; ++i) {
    const auto d = t::random_disc(rng, 4, 0);
    const auto other = i % 2 ? d.zeros : flip_zeros(d, t::random_selection(rng, d.zeros)).zeros;
    const bool same = approx_equal(d.zeros, other);
    const bool empty = rotation_orbit_witness(d.zeros, other, 1.0, 12).difference.empty();
    if (same == empty) ++agree;
  }
  out.require(agree == 50, "orbit witness wrong on " + std::to_string(50 - agree) + " of 50");
  out.detail = (out.pass ? "" : out.detail + " | ") + "c error " + sci(c_err) + ", flip deviation " + sci(dev) + ", orbit 50/50";
  return out;
}

// --- 10 --------------------------------------------------------------------
Outcome lemma_checker() {
  Outcome out;
  std::mt19937_64 rng(1010);
  int pairs = 0;
  for (int i = 0; i < 30; ++i) {
    const auto f = t::random_disc(rng, 5, 3);
    std::optional<OuterModifier> mod;
    if (i % 3 == 1) mod = t::random_odd(rng);
    if (i % 3 == 2) mod = StarQuotient{};
    const auto g = disc_solution(f, t::random_selection(rng, f.zeros), t::admissible_sigma(rng, f.singular), mod);
    ++pairs;
    const auto r = check_lemma_conditions(f, g);
    out.require(r.passed(), "disc pair " + std::to_string(i));
  }
  const auto sf = lower(t::random_disc(rng, 3, 2));
  EnumerationOptions opts;
  opts.dedup = false;
  const auto e = enumerate_solutions(sf, opts, {t::admissible_sigma(rng, sf.disc.singular)}, {t::random_odd(rng), StarQuotient{}});
  for (const auto& s : e.solutions) {
    ++pairs;
    out.require(check_lemma_conditions(sf, s.g).passed(), "enumerated solution");
  }

  const auto f = t::random_disc(rng, 4, 2);
  auto bad = f;
  auto entries = bad.zeros.entries();
  entries.push_back({Complex(-0.41, 0.27), 1});
  bad.zeros = ZeroMultiset(entries);
  const auto r = check_lemma_conditions(f, bad);
  const bool only_i = !r.find("zeros")->pass && r.find("measures")->pass && r.find("boundary")->pass;
  out.require(only_i, "corrupted pair does not fail exactly condition (i)");
  out.detail = (out.pass ? "" : out.detail + " | ") + std::to_string(pairs) + " pairs pass; corrupted pair fails zeros only";
  return out;
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items{
      {"flip soundness", flip_soundness},
      {"singular-perturbation soundness", singular_perturbation},
      {"outer-modifier soundness", outer_modifier},
      {"uv-split contract", uv_contract},
      {"strip transfer", strip_transfer},
      {"pauli family", pauli_family},
      {"reference coupling", reference_coupling},
      {"derivation dichotomy", dichotomy},
      {"segment uniqueness", segment_uniqueness},
      {"lemma-conditions checker", lemma_checker},
  };
  int failed = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Outcome o;
    try {
      o = items[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, items[i].name, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}
