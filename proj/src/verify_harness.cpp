#include "wbpr/verify_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wbpr/errors.hpp"

namespace wbpr {

Evaluator evaluator(const DiscFactorization& spec) {
  return [spec](Complex w) { return eval_disc(spec, w); };
}

Evaluator evaluator(const StripFunction& f) {
  return [f](Complex z) { return eval_strip(f, z); };
}

// ---------------------------------------------------------------------------
// Grids

Grid1D Grid1D::real_line(double start, double stop, std::size_t count) {
  return Grid1D{start, stop, count, GridKind::real_line, 0.0, 0.0};
}

Grid1D Grid1D::disc_diameter(double start, double stop, std::size_t count) {
  return Grid1D{start, stop, count, GridKind::disc_diameter, 0.0, 0.0};
}

Grid1D Grid1D::segment(double theta, double a, double start, double stop, std::size_t count) {
  return Grid1D{start, stop, count, GridKind::segment, theta, a};
}

std::vector<Complex> Grid1D::points() const {
  if (count < 2) throw DomainError("grid needs at least 2 points");
  std::vector<Complex> out(count);
  const Complex dir = kind == GridKind::segment ? std::polar(1.0, theta) : Complex(1.0, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
    out[k] = kind == GridKind::segment ? Complex(a, 0.0) + t * dir : Complex(t, 0.0);
    if (kind == GridKind::disc_diameter && !(std::abs(t) < 1.0)) {
      throw DomainError("disc diameter grid leaves the disc");
    }
    if (kind == GridKind::segment && !(std::abs(out[k].imag()) < 1.0)) {
      throw DomainError("segment grid leaves the strip");
    }
  }
  return out;
}

std::string Grid1D::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case GridKind::real_line: os << "real_line"; break;
    case GridKind::disc_diameter: os << "disc_diameter"; break;
    case GridKind::segment: os << "segment(theta=" << theta << ",a=" << a << ")"; break;
  }
  os << "[" << start << "," << stop << "]x" << count;
  return os.str();
}

Grid1D default_real_grid() { return Grid1D::real_line(-4.0, 4.0, 257); }
Grid1D default_disc_grid() { return Grid1D::disc_diameter(-0.95, 0.95, 257); }

// ---------------------------------------------------------------------------
// Reports

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (const auto& [k, v] : other.metadata) metadata[prefix + k] = v;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double relative_deviation(double abs_f, double abs_g) {
  if (abs_f < kBothTiny && abs_g < kBothTiny) return 0.0;
  const double err = std::abs(abs_g - abs_f) / std::max(abs_f, kRelativeFloor);
  return std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
}

}  // namespace

std::vector<ModulusSample> sample_modulus(const Evaluator& f, const Evaluator& g, const Grid1D& grid) {
  std::vector<ModulusSample> out;
  for (const auto& p : grid.points()) {
    const double af = std::abs(f(p));
    const double ag = std::abs(g(p));
    out.push_back({p, af, ag, relative_deviation(af, ag)});
  }
  return out;
}

VerificationReport compare_modulus(const Evaluator& f, const Evaluator& g, const Grid1D& grid,
                                   double tol) {
  VerificationReport report;
  report.metadata["grid"] = grid.describe();
  report.metadata["tolerance"] = fmt(tol);
  Check check{"modulus", false, 0.0, {}, ""};
  try {
    for (const auto& s : sample_modulus(f, g, grid)) {
      if (s.rel_err > check.max_err || std::isinf(s.rel_err)) {
        check.max_err = s.rel_err;
        check.argmax = s.point;
      }
    }
    check.pass = check.max_err < tol;
  } catch (const std::exception& e) {
    check.pass = false;
    check.max_err = std::numeric_limits<double>::infinity();
    check.detail = std::string("evaluation failed: ") + e.what();
  }
  report.checks.push_back(std::move(check));
  return report;
}

// ---------------------------------------------------------------------------
// Lemma conditions

namespace {

ZeroMultiset conjugate_closure(const ZeroMultiset& z) {
  std::vector<ZeroEntry> all = z.entries();
  for (const auto& e : z.entries()) all.push_back({std::conj(e.point), e.multiplicity});
  return ZeroMultiset(std::move(all));
}

double nearest_mismatch(const ZeroMultiset& a, const ZeroMultiset& b) {
  double worst = 0.0;
  for (const auto& e : a.entries()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : b.entries()) best = std::min(best, std::abs(o.point - e.point));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

VerificationReport check_lemma_conditions(const DiscFactorization& f, const DiscFactorization& g) {
  VerificationReport report;

  const ZeroMultiset zf = conjugate_closure(f.zeros);
  const ZeroMultiset zg = conjugate_closure(g.zeros);
  Check zeros{"zeros", approx_equal(zf, zg, kZeroConditionTol), 0.0, {}, ""};
  if (zf.empty() && zg.empty()) {
    zeros.max_err = 0.0;
  } else if (zf.empty() || zg.empty()) {
    zeros.max_err = std::numeric_limits<double>::infinity();
  } else {
    zeros.max_err = std::max(nearest_mismatch(zf, zg), nearest_mismatch(zg, zf));
  }
  if (!zeros.pass) {
    zeros.detail = "closed zero sets differ (" + std::to_string(zf.count()) + " vs " +
                   std::to_string(zg.count()) + " zeros)";
  }
  report.checks.push_back(std::move(zeros));

  const SignedMeasure sf = f.singular.as_signed() + f.singular.as_signed().conjugated();
  const SignedMeasure sg = g.singular.as_signed() + g.singular.as_signed().conjugated();
  const double scale = std::max({1.0, std::abs(sf.total_mass()), std::abs(sg.total_mass())});
  Check measures{"measures", false, sf.distance(sg), {}, ""};
  measures.pass = measures.max_err <= kMeasureConditionTol * scale;
  report.checks.push_back(std::move(measures));

  Check boundary{"boundary", false, 0.0, {}, ""};
  if (f.outer.size() != g.outer.size()) {
    boundary.max_err = std::numeric_limits<double>::infinity();
    boundary.detail = "outer grids differ in size";
  } else {
    const std::size_t n = f.outer.size();
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t r = reflect_index(m, n);
      const double err = std::abs((f.outer[m] + f.outer[r]) - (g.outer[m] + g.outer[r]));
      if (err > boundary.max_err) {
        boundary.max_err = err;
        boundary.argmax = std::polar(1.0, f.outer.theta(m));
      }
    }
    boundary.pass = boundary.max_err <= kBoundaryConditionTol;
  }
  report.checks.push_back(std::move(boundary));

  report.metadata["zero_tolerance"] = fmt(kZeroConditionTol);
  report.metadata["measure_tolerance"] = fmt(kMeasureConditionTol);
  report.metadata["boundary_tolerance"] = fmt(kBoundaryConditionTol);
  return report;
}

VerificationReport check_lemma_conditions(const StripFunction& f, const StripFunction& g) {
  VerificationReport report = check_lemma_conditions(f.disc, g.disc);
  const double err =
      std::max(std::abs(f.corner_plus - g.corner_plus), std::abs(f.corner_minus - g.corner_minus));
  report.checks.push_back({"corners", err <= kMeasureConditionTol * std::max(1.0, f.corner_plus + f.corner_minus),
                           err, {}, ""});
  return report;
}

// ---------------------------------------------------------------------------
// Fourier pairing

Complex measure_moment(const AtomicMeasure& nu, int n) {
  Complex s(0.0, 0.0);
  for (const auto& a : nu.atoms()) s += a.mass * std::polar(1.0, -static_cast<double>(n) * a.theta);
  return s;
}

VerificationReport fourier_pairing_check(const AtomicMeasure& nu_f, const AtomicMeasure& nu_g,
                                         double theta, int n_max, double tol) {
  VerificationReport report;
  report.metadata["theta_over_pi"] = fmt(theta / kPi);
  report.metadata["n_max"] = std::to_string(n_max);
  report.metadata["note"] = "irrationality of theta/pi is assumed, not verified";

  Check plain{"plain_pairing", true, 0.0, {}, ""};
  Check rotated{"rotated_pairing", true, 0.0, {}, ""};
  for (int n = 1; n <= n_max; ++n) {
    const Complex fp = measure_moment(nu_f, n), fm = measure_moment(nu_f, -n);
    const Complex gp = measure_moment(nu_g, n), gm = measure_moment(nu_g, -n);
    const double e1 = std::abs((fp + fm) - (gp + gm));
    const Complex rot = std::polar(1.0, n * theta);
    const double e2 = std::abs((rot * fp + std::conj(rot) * fm) - (rot * gp + std::conj(rot) * gm));
    if (e1 > plain.max_err) {
      plain.max_err = e1;
      plain.argmax = Complex(n, 0.0);
    }
    if (e2 > rotated.max_err) {
      rotated.max_err = e2;
      rotated.argmax = Complex(n, 0.0);
    }
  }
  plain.pass = plain.max_err <= tol;
  rotated.pass = rotated.max_err <= tol;
  const bool both = plain.pass && rotated.pass;
  report.checks.push_back(plain);
  report.checks.push_back(rotated);

  if (both) {
    Check moments{"moments", true, 0.0, {}, ""};
    for (int n = -n_max; n <= n_max; ++n) {
      const double e = std::abs(measure_moment(nu_f, n) - measure_moment(nu_g, n));
      if (e > moments.max_err) {
        moments.max_err = e;
        moments.argmax = Complex(n, 0.0);
      }
    }
    moments.pass = moments.max_err <= tol;
    report.checks.push_back(moments);
  }
  return report;
}

}  // namespace wbpr
