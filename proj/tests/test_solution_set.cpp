#include "doctest.h"

#include <cmath>

#include "support.hpp"
#include "wbpr/errors.hpp"
#include "wbpr/solution_set.hpp"

using namespace wbpr;
using wbpr::testing::rel_err;

namespace {

DiscFactorization one_zero(Complex a) {
  DiscFactorization f;
  f.zeros = ZeroMultiset({{a, 1}});
  return f;
}

double max_real_mismatch(const DiscFactorization& f, const DiscFactorization& g) {
  double worst = 0.0;
  for (double x = -0.95; x <= 0.95; x += 0.05) {
    worst = std::max(worst, std::abs(std::abs(eval_disc(g, x)) - std::abs(eval_disc(f, x))) / std::abs(eval_disc(f, x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("flip_zeros: keeping everything is the identity") {
  std::mt19937_64 rng(1);
  const auto f = wbpr::testing::random_disc(rng);
  CHECK(flip_zeros(f, FlipSelection::keep_all(f.zeros)) == f);
}

TEST_CASE("flip_zeros: an empty selection conjugates the zero") {
  const auto f = one_zero(Complex(0.3, 0.2));
  const auto g = flip_zeros(f, FlipSelection::flip_all());
  REQUIRE(g.zeros.size() == 1);
  CHECK(g.zeros.entries()[0].point == Complex(0.3, -0.2));
  for (double x : {0.0, 0.5, -0.5, 0.9, -0.9}) {
    CHECK(std::abs(std::abs(eval_disc(g, x)) - std::abs(eval_disc(f, x))) < 1e-10);
  }
  CHECK(flip_zeros(g, FlipSelection::flip_all()) == f);
}

TEST_CASE("flip_zeros: real zeros are fixed") {
  const auto f = one_zero(Complex(0.4, 0.0));
  CHECK(flip_zeros(f, FlipSelection::flip_all()) == f);
}

TEST_CASE("flip_zeros: partial multiplicities") {
  DiscFactorization f;
  f.zeros = ZeroMultiset({{Complex(0.2, 0.5), 2}});
  FlipSelection sel;
  sel.keep(0, 1);
  const auto g = flip_zeros(f, sel);
  CHECK(approx_equal(g.zeros, ZeroMultiset({{Complex(0.2, 0.5), 1}, {Complex(0.2, -0.5), 1}})));
  CHECK(max_real_mismatch(f, g) < 1e-12);
}

TEST_CASE("flip selections are validated") {
  const auto f = one_zero(Complex(0.3, 0.2));
  FlipSelection bad;
  bad.keep(3);
  CHECK_THROWS_AS(flip_zeros(f, bad), SelectionError);
  FlipSelection too_many;
  too_many.keep(0, 2);
  CHECK_THROWS_AS(flip_zeros(f, too_many), SelectionError);
  CHECK_THROWS_AS(FlipSelection().keep(0, -3), SelectionError);
}

TEST_CASE("perturb_singular: examples") {
  DiscFactorization f;
  f.singular = AtomicMeasure({{-kPi / 2, 1.0}});
  CHECK(perturb_singular(f, OddSingularPerturbation{}) == f);

  const auto g = perturb_singular(f, OddSingularPerturbation(AtomicMeasure({{kPi / 2, 1.0}})));
  CHECK(g.singular == AtomicMeasure({{kPi / 2, 1.0}}));
  CHECK(g.singular == f.singular.conjugated());

  try {
    perturb_singular(f, OddSingularPerturbation(AtomicMeasure({{kPi / 2, 2.0}})));
    FAIL("expected DominanceViolated");
  } catch (const DominanceViolated& e) {
    CHECK(std::string(e.what()).find("theta=1.57") != std::string::npos);
  }
}

TEST_CASE("perturb_singular: exact atom identity and equal moduli") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto f = wbpr::testing::random_disc(rng);
    const auto p = wbpr::testing::admissible_sigma(rng, f.singular);
    const auto g = perturb_singular(f, p);
    const auto lhs = f.singular.as_signed() + f.singular.as_signed().conjugated();
    const auto rhs = g.singular.as_signed() + g.singular.as_signed().conjugated();
    CHECK(lhs == rhs);
    CHECK(max_real_mismatch(f, g) < 1e-12);
  }
}

TEST_CASE("odd perturbations reject real-axis and mirrored atoms") {
  CHECK_THROWS_AS(OddSingularPerturbation(AtomicMeasure({{0.0, 1.0}})), DomainError);
  CHECK_THROWS_AS(OddSingularPerturbation(AtomicMeasure({{kPi, 1.0}})), DomainError);
  CHECK_THROWS_AS(OddSingularPerturbation(AtomicMeasure({{1.0, 1.0}, {-1.0, 0.5}})), DomainError);
}

TEST_CASE("modify_outer: zero, odd sine, star quotient") {
  std::mt19937_64 rng(9);
  const auto f = wbpr::testing::random_disc(rng);
  CHECK(modify_outer(f, OddBoundary{BoundaryLogModulus()}) == f);

  const auto u = OddBoundary::from_function([](double t) { return 0.3 * std::sin(t); });
  const auto g = modify_outer(f, u);
  CHECK(max_real_mismatch(f, g) < 1e-6);
  for (std::size_t m = 0; m < f.outer.size(); m += 97) {
    CHECK(g.outer[m] - f.outer[m] == doctest::Approx(0.3 * std::sin(f.outer.theta(m))).epsilon(1e-12));
  }

  DiscFactorization h;
  h.outer = BoundaryLogModulus::from_function([](double t) { return std::log(std::abs(2.0 - std::polar(1.0, t))); });
  const auto hs = modify_outer(h, StarQuotient{});
  const auto expected =
      BoundaryLogModulus::from_function([](double t) { return std::log(std::abs(2.0 - std::polar(1.0, -t))); });
  for (std::size_t m = 0; m < h.outer.size(); ++m) CHECK(std::abs(hs.outer[m] - expected[m]) < 1e-14);
}

TEST_CASE("modify_outer: non-odd data and exponential kind are rejected") {
  DiscFactorization f;
  CHECK_THROWS_AS(modify_outer(f, OddBoundary::from_function([](double t) { return std::cos(t); })), OddnessViolated);
  CHECK_THROWS_AS(modify_outer(f, OddBoundary{BoundaryLogModulus(64)}), InvalidModifier);
  CHECK_THROWS_AS(modify_outer(f, ExponentialModifier{1.0}), InvalidModifier);
}

TEST_CASE("trivial solutions") {
  const auto f = wbpr::testing::strip_with_zero(Complex(0.5, 0.3));
  CHECK(trivial_solutions(f, 1.0, 0.0, false) == f);

  const auto gi = trivial_solutions(f, Complex(0, 1), 0.0, false);
  for (double x = -3; x <= 3; x += 0.5) {
    CHECK(rel_err(eval_strip(gi, x), Complex(0, 1) * eval_strip(f, x)) < 1e-14);
  }

  const auto g = trivial_solutions(f, 1.0, 2.0, true);
  for (int k = 0; k < 64; ++k) {
    const double x = -3.0 + 6.0 * k / 63;
    const Complex expected = std::exp(Complex(0, 2.0 * x)) * std::conj(eval_strip(f, x));
    CHECK(rel_err(eval_strip(g, x), expected) < 1e-10);
    CHECK(std::abs(std::abs(eval_strip(g, x)) - std::abs(eval_strip(f, x))) < 1e-10 * std::abs(eval_strip(f, x)));
  }
  CHECK_THROWS_AS(trivial_solutions(f, 1.1, 0.0, false), NotUnimodular);
}

TEST_CASE("strip_solution examples") {
  const auto f = wbpr::testing::strip_with_zero(Complex(0.5, 0.3));
  CHECK(strip_solution(f, FlipSelection::keep_all(f.disc.zeros), {}, std::nullopt) == f);

  const auto g = strip_solution(f, FlipSelection::flip_all(), {}, std::nullopt);
  CHECK(std::abs(phi_inv(g.disc.zeros.entries()[0].point) - Complex(0.5, -0.3)) < 1e-12);
  const auto rep = compare_modulus(evaluator(f), evaluator(g), Grid1D::real_line(-3, 3, 128), 1e-8);
  CHECK(rep.passed());

  const auto e = strip_solution(f, FlipSelection::keep_all(f.disc.zeros), {}, ExponentialModifier{1.0});
  for (const Complex z : {Complex(0.2, 0.3), Complex(-1.0, -0.5)}) {
    CHECK(rel_err(eval_strip(e, z), std::exp(Complex(0, 1) * z) * eval_strip(f, z)) < 1e-13);
  }
  CHECK(e.corner_plus == f.corner_plus);
}

TEST_CASE("uv_split examples") {
  std::mt19937_64 rng(4);
  const auto f = wbpr::testing::random_disc(rng);
  const auto id = uv_split(f, FlipSelection::keep_all(f.zeros), {}, std::nullopt);
  for (const Complex w : {Complex(0.1, 0.2), Complex(-0.5, 0.3)}) {
    CHECK(rel_err(id.u.eval(w), eval_disc(f, w)) < 1e-12);
    CHECK(rel_err(id.v.eval(w), 1.0) < 1e-15);
  }

  const Complex a(0.3, 0.2);
  const auto h = one_zero(a);
  const auto s = uv_split(h, FlipSelection::flip_all(), {}, std::nullopt);
  const auto g = flip_zeros(h, FlipSelection::flip_all());
  for (const Complex w : {Complex(0, 0), Complex(0, 0.4), Complex(-0.6, 0)}) {
    CHECK(rel_err(s.v.eval(w), blaschke_factor(a, w)) < 1e-14);
    CHECK(rel_err(s.u.eval(w) * s.v.eval(w), eval_disc(h, w)) < 1e-12);
    CHECK(rel_err(s.u.eval(w) * s.v.star().eval(w), eval_disc(g, w)) < 1e-12);
  }

  DiscFactorization pure;
  const auto u = OddBoundary::from_function([](double t) { return 0.3 * std::sin(t); });
  const auto p = uv_split(pure, FlipSelection{}, {}, u);
  for (double x = -0.9; x <= 0.9; x += 0.1) {
    CHECK(std::abs(p.v.eval(x) * p.v.star().eval(x) - 1.0) < 1e-8);
  }
  CHECK(p.v.outer[1024] == doctest::Approx(-0.15 * std::sin(pure.outer.theta(1024))));
}

TEST_CASE("uv contract on random parameter triples") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    const auto f = wbpr::testing::random_disc(rng);
    const auto sel = wbpr::testing::random_selection(rng, f.zeros);
    const auto p = wbpr::testing::admissible_sigma(rng, f.singular);
    std::optional<OuterModifier> u;
    if (i % 3 == 1) u = StarQuotient{};
    if (i % 3 == 2) u = wbpr::testing::random_odd(rng);
    const auto g = disc_solution(f, sel, p, u);
    const auto s = uv_split(f, sel, p, u);
    const auto vs = s.v.star();
    for (int k = 0; k < 32; ++k) {
      const Complex w = std::polar(std::sqrt(wbpr::testing::uniform(rng, 0, 1)) * 0.9, wbpr::testing::uniform(rng, -kPi, kPi));
      CHECK(rel_err(s.u.eval(w) * s.v.eval(w), eval_disc(f, w)) < 1e-8);
      CHECK(rel_err(s.u.eval(w) * vs.eval(w), eval_disc(g, w)) < 1e-8);
    }
  }
}

TEST_CASE("enumerate_solutions: counts") {
  DiscFactorization d;
  d.zeros = ZeroMultiset({{phi(Complex(0.5, 0.3)), 1}, {phi(Complex(-1.0, 0.6)), 1}});
  StripFunction f;
  f.disc = d;
  auto r = enumerate_solutions(f, {}, {}, {});
  CHECK(r.candidates == 4);
  CHECK(r.solutions.size() == 4);
  for (const auto& s : r.solutions) CHECK(s.report.passed());

  StripFunction real;
  real.disc.zeros = ZeroMultiset({{Complex(0.4, 0.0), 1}});
  CHECK(enumerate_solutions(real, {}, {}, {}).solutions.size() == 1);

  StripFunction one = wbpr::testing::strip_with_zero(Complex(0.5, 0.3));
  one.disc.singular = AtomicMeasure({{-1.0, 0.5}});
  const std::vector<OddSingularPerturbation> sigma{OddSingularPerturbation(AtomicMeasure({{1.0, 0.25}}))};
  const std::vector<OuterModifier> outer{OddBoundary::from_function([](double t) { return 0.2 * std::sin(t); })};
  const auto e = enumerate_solutions(one, {}, sigma, outer);
  CHECK(e.candidates == 8);
  CHECK(e.solutions.size() == 8);
  for (const auto& s : e.solutions) {
    CHECK(s.report.passed());
  }
}

TEST_CASE("enumerate_solutions: dedup, sampling and budget") {
  StripFunction f = wbpr::testing::strip_with_zero(Complex(0.5, 0.3));
  // the exponential modifier with eta = 0 duplicates the plain solution
  const auto r = enumerate_solutions(f, {}, {}, {ExponentialModifier{0.0}});
  CHECK(r.candidates == 4);
  CHECK(r.solutions.size() == 2);

  EnumerationOptions small;
  small.max_solutions = 3;
  CHECK_THROWS_AS(enumerate_solutions(f, small, {}, {ExponentialModifier{0.0}}), BudgetExceeded);

  StripFunction many;
  std::vector<ZeroEntry> zeros;
  for (int k = 0; k < 8; ++k) zeros.push_back({std::polar(0.5, 0.3 + 0.3 * k), 1});
  many.disc.zeros = ZeroMultiset(zeros);
  EnumerationOptions sampled;
  sampled.flip_cap = 10;
  sampled.seed = 42;
  const auto a = enumerate_solutions(many, sampled, {}, {});
  const auto b = enumerate_solutions(many, sampled, {}, {});
  CHECK(a.candidates == 10);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) CHECK(a.solutions[i].flip == b.solutions[i].flip);
  CHECK(a.solutions.front().g == many);
  CHECK(flip_selection_count(many.disc.zeros) == 256);
}

TEST_CASE("solutions equal up to a constant are recognised") {
  const auto f = wbpr::testing::strip_with_zero(Complex(0.5, 0.3));
  const auto g = trivial_solutions(f, std::polar(1.0, 0.3), 0.0, false);
  CHECK(same_up_to_constant(f, g));
  CHECK_FALSE(same_up_to_constant(f, strip_solution(f, FlipSelection{}, {}, std::nullopt)));
}
