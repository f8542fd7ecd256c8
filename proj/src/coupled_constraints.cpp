#include "wbpr/coupled_constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wbpr/errors.hpp"

namespace wbpr {

ReferenceSolutions reference_solutions(const ReferencePoint& p) {
  if (p.hx == Complex(0.0, 0.0)) throw ZeroReference("reference value h(x) is zero; its phase is undefined");
  const Complex phase = p.hx / std::abs(p.hx);
  return {p.fx, std::conj(p.fx) * phase * phase};
}

std::string describe(const DerivationKind& kind) {
  std::ostringstream os;
  os.precision(17);
  if (std::holds_alternative<Derivative>(kind)) {
    os << "d";
  } else if (const auto* s = std::get_if<ShiftDifference>(&kind)) {
    os << "delta:" << s->b;
  } else {
    os << "gamma:" << std::get<DilationDifference>(kind).q;
  }
  return os.str();
}

Complex apply_derivation(const DerivationKind& kind, const Evaluator& f, double x) {
  if (std::holds_alternative<Derivative>(kind)) {
    auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    const double h = kDerivativeStep;
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
  }
  if (const auto* s = std::get_if<ShiftDifference>(&kind)) return f(x + s->b) - f(x);
  const double q = std::get<DilationDifference>(kind).q;
  if (!(std::abs(q) < 1.0)) throw DomainError("dilation difference needs |q| < 1");
  return f(q * x) - f(x);
}

Complex apply_derivation(const DerivationKind& kind, const StripFunction& f, double x) {
  return apply_derivation(kind, evaluator(f), x);
}

Evaluator star_evaluator(const Evaluator& f) {
  return [f](Complex z) { return std::conj(f(std::conj(z))); };
}

std::string to_string(DichotomyBranch b) {
  switch (b) {
    case DichotomyBranch::beta_f: return "beta_f";
    case DichotomyBranch::beta_f_star: return "beta_f_star";
    case DichotomyBranch::periodic_f: return "periodic_f";
    case DichotomyBranch::periodic_f_star: return "periodic_f_star";
    case DichotomyBranch::inconsistent: return "inconsistent";
  }
  return "inconsistent";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct RatioSamples {
  std::vector<std::pair<double, Complex>> values;
  Complex mean{0.0, 0.0};
  double rel_variance = std::numeric_limits<double>::infinity();
};

RatioSamples ratio_samples(const Evaluator& num, const Evaluator& den, const std::vector<double>& grid) {
  RatioSamples out;
  for (double x : grid) {
    const Complex d = den(x);
    if (std::abs(d) < kRatioFloor) continue;
    out.values.emplace_back(x, num(x) / d);
  }
  if (out.values.empty()) return out;
  for (const auto& [x, r] : out.values) out.mean += r;
  out.mean /= static_cast<double>(out.values.size());
  double var = 0.0;
  for (const auto& [x, r] : out.values) var += std::norm(r - out.mean);
  var /= static_cast<double>(out.values.size());
  out.rel_variance = std::norm(out.mean) > 0.0 ? var / std::norm(out.mean) : std::numeric_limits<double>::infinity();
  return out;
}

// |r| = 1 and r(x + b) = r(x) at every grid point; returns the worst deviation.
double periodic_unimodular_error(const Evaluator& num, const Evaluator& den, const RatioSamples& r, double b) {
  if (r.values.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& [x, v] : r.values) {
    worst = std::max(worst, std::abs(std::abs(v) - 1.0));
    const Complex d = den(x + b);
    if (std::abs(d) < kRatioFloor) continue;
    worst = std::max(worst, std::abs(num(x + b) / d - v));
  }
  return worst;
}

}  // namespace

DichotomyResult check_derivation_dichotomy(const Evaluator& f, const Evaluator& g,
                                           const DerivationKind& kind, const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("dichotomy check needs a nonempty grid");
  DichotomyResult out;
  const Evaluator fs = star_evaluator(f);

  Check pre{"precondition_modulus", true, 0.0, {}, ""};
  Check dmod{"derivation_modulus", true, 0.0, {}, ""};
  for (double x : grid) {
    const double af = std::abs(f(x)), ag = std::abs(g(x));
    const double e = (af < kBothTiny && ag < kBothTiny) ? 0.0 : std::abs(ag - af) / std::max(af, kRelativeFloor);
    if (e > pre.max_err) {
      pre.max_err = e;
      pre.argmax = x;
    }
    const double adf = std::abs(apply_derivation(kind, f, x));
    const double adg = std::abs(apply_derivation(kind, g, x));
    const double d = (adf < kBothTiny && adg < kBothTiny) ? 0.0 : std::abs(adg - adf) / std::max(adf, kRelativeFloor);
    if (d > dmod.max_err) {
      dmod.max_err = d;
      dmod.argmax = x;
    }
  }
  pre.pass = pre.max_err < kPeriodicTol;
  dmod.pass = dmod.max_err < 1e-6;
  out.precondition = pre.pass;
  if (!pre.pass) pre.detail = "|g| != |f| on the grid; the dichotomy does not apply";

  const RatioSamples r1 = ratio_samples(g, f, grid);
  const RatioSamples r2 = ratio_samples(g, fs, grid);
  Check cls{"classification", true, 0.0, {}, ""};
  if (r1.rel_variance < kRatioVarianceTol) {
    out.branch = DichotomyBranch::beta_f;
    out.beta = r1.mean;
    out.ratio = r1.values;
    cls.max_err = r1.rel_variance;
  } else if (r2.rel_variance < kRatioVarianceTol) {
    out.branch = DichotomyBranch::beta_f_star;
    out.beta = r2.mean;
    out.ratio = r2.values;
    cls.max_err = r2.rel_variance;
  } else if (const auto* s = std::get_if<ShiftDifference>(&kind)) {
    const double e1 = periodic_unimodular_error(g, f, r1, s->b);
    const double e2 = periodic_unimodular_error(g, fs, r2, s->b);
    if (e1 <= kPeriodicTol) {
      out.branch = DichotomyBranch::periodic_f;
      out.ratio = r1.values;
      cls.max_err = e1;
    } else if (e2 <= kPeriodicTol) {
      out.branch = DichotomyBranch::periodic_f_star;
      out.ratio = r2.values;
      cls.max_err = e2;
    } else {
      cls.max_err = std::min(e1, e2);
    }
  }
  if (out.branch == DichotomyBranch::inconsistent) {
    cls.pass = false;
    cls.detail = "neither g/f nor g/f* has the required form";
  } else {
    cls.detail = to_string(out.branch);
  }

  out.report.checks = {pre, dmod, cls};
  out.report.metadata["kind"] = describe(kind);
  out.report.metadata["branch"] = to_string(out.branch);
  if (out.beta) {
    out.report.metadata["beta_re"] = fmt(out.beta->real());
    out.report.metadata["beta_im"] = fmt(out.beta->imag());
    out.report.metadata["beta_abs"] = fmt(std::abs(*out.beta));
    out.report.metadata["beta_is_real"] = std::abs(out.beta->imag()) <= 1e-10 ? "true" : "false";
  }
  return out;
}

DichotomyResult check_derivation_dichotomy(const StripFunction& f, const StripFunction& g,
                                           const DerivationKind& kind, const std::vector<double>& grid) {
  return check_derivation_dichotomy(evaluator(f), evaluator(g), kind, grid);
}

// ---------------------------------------------------------------------------
// Segments

void SegmentSpec::validate() const {
  if (!(theta > 0.0 && theta < kPi)) throw DomainError("segment angle must lie in (0, pi)");
  if (!(half_length > 0.0 && half_length <= 1.0)) throw DomainError("segment half length must lie in (0, 1]");
  if (samples < 1) throw DomainError("segment needs at least one sample");
  if (!std::isfinite(a)) throw DomainError("segment offset must be finite");
}

std::vector<Complex> SegmentSpec::points() const {
  validate();
  std::vector<Complex> out;
  const Complex dir = std::polar(1.0, theta);
  for (int k = 0; k < samples; ++k) {
    const double t = half_length * (-1.0 + (2.0 * k + 1.0) / samples);
    out.push_back(Complex(a, 0.0) + t * dir);
  }
  return out;
}

VerificationReport segment_agreement(const Evaluator& f, const Evaluator& g, const SegmentSpec& seg,
                                     double tol) {
  VerificationReport report;
  report.metadata["segment"] = "a=" + fmt(seg.a) + ",theta=" + fmt(seg.theta) +
                               ",half_length=" + fmt(seg.half_length) + ",samples=" + std::to_string(seg.samples);
  report.metadata["tolerance"] = fmt(tol);
  Check c{"segment", false, 0.0, {}, ""};
  try {
    for (const auto& z : seg.points()) {
      const double af = std::abs(f(z)), ag = std::abs(g(z));
      double e = (af < kBothTiny && ag < kBothTiny) ? 0.0 : std::abs(ag - af) / std::max(af, kRelativeFloor);
      if (std::isnan(e)) e = std::numeric_limits<double>::infinity();
      if (e > c.max_err || std::isinf(e)) {
        c.max_err = e;
        c.argmax = z;
      }
    }
    c.pass = c.max_err < tol;
  } catch (const std::exception& e) {
    c.max_err = std::numeric_limits<double>::infinity();
    c.detail = std::string("evaluation failed: ") + e.what();
  }
  report.checks.push_back(c);
  return report;
}

VerificationReport segment_agreement(const StripFunction& f, const StripFunction& g, const SegmentSpec& seg,
                                     double tol) {
  return segment_agreement(evaluator(f), evaluator(g), seg, tol);
}

std::string to_string(UniquenessVerdict v) {
  switch (v) {
    case UniquenessVerdict::unique: return "unique";
    case UniquenessVerdict::not_concluded: return "not_concluded";
    case UniquenessVerdict::inconclusive: return "inconclusive";
  }
  return "not_concluded";
}

UniquenessResult conclude_uniqueness(const Evaluator& f, const Evaluator& g, const SegmentSpec& seg,
                                     const Grid1D& real_grid) {
  UniquenessResult out;
  out.report = compare_modulus(f, g, real_grid, kSegmentTol);
  out.report.checks.front().name = "real_modulus";
  out.report.merge(segment_agreement(f, g, seg, kSegmentTol));
  out.report.metadata["assumption"] = "theta/pi irrational (not checkable numerically)";
  if (!out.report.passed()) {
    out.verdict = UniquenessVerdict::not_concluded;
    out.report.metadata["verdict"] = to_string(out.verdict);
    return out;
  }

  std::vector<Complex> pts = real_grid.points();
  const std::vector<Complex> seg_pts = seg.points();
  double fmax = 0.0;
  for (const auto& z : pts) fmax = std::max(fmax, std::abs(f(z)));
  Complex c(0.0, 0.0);
  for (const auto& z : pts) {
    const Complex fz = f(z);
    if (std::abs(fz) >= 1e-3 * fmax && fmax > 0.0) {
      c = g(z) / fz;
      break;
    }
  }

  pts.insert(pts.end(), seg_pts.begin(), seg_pts.end());
  Check ratio{"constant_ratio", false, 0.0, {}, ""};
  for (const auto& z : pts) {
    const Complex fz = f(z);
    const double e = std::abs(g(z) - c * fz) / std::max(std::abs(fz), kRelativeFloor);
    if (std::abs(fz) < kBothTiny && std::abs(g(z)) < kBothTiny) continue;
    if (e > ratio.max_err) {
      ratio.max_err = e;
      ratio.argmax = z;
    }
  }
  ratio.pass = ratio.max_err <= kSegmentTol;
  Check unimodular{"unimodular_constant", std::abs(std::abs(c) - 1.0) <= 1e-10, std::abs(std::abs(c) - 1.0), c, ""};
  out.report.checks.push_back(ratio);
  out.report.checks.push_back(unimodular);
  if (ratio.pass && unimodular.pass) {
    out.verdict = UniquenessVerdict::unique;
    out.c = c;
  } else {
    out.verdict = UniquenessVerdict::inconclusive;
    out.report.metadata["note"] = "moduli agree but g/f is not a unimodular constant: rational theta/pi or conditioning";
  }
  out.report.metadata["verdict"] = to_string(out.verdict);
  return out;
}

UniquenessResult conclude_uniqueness(const StripFunction& f, const StripFunction& g, const SegmentSpec& seg,
                                     const Grid1D& real_grid) {
  return conclude_uniqueness(evaluator(f), evaluator(g), seg, real_grid);
}

// ---------------------------------------------------------------------------
// Rotation orbits

std::string to_string(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::consistent_with_uniqueness: return "consistent with uniqueness";
    case OrbitVerdict::closure_fails: return "closure fails";
    case OrbitVerdict::rational_angle_ambiguity: return "rational-angle ambiguity possible";
  }
  return "closure fails";
}

namespace {

std::vector<ZeroEntry> symmetric_difference(const std::vector<ZeroEntry>& zf, const std::vector<ZeroEntry>& zg) {
  std::vector<std::pair<Complex, int>> acc;
  auto add = [&](Complex p, int m) {
    for (auto& [q, n] : acc) {
      if (std::abs(q - p) <= kOrbitTol) {
        n += m;
        return;
      }
    }
    acc.emplace_back(p, m);
  };
  for (const auto& e : zf) add(e.point, e.multiplicity);
  for (const auto& e : zg) add(e.point, -e.multiplicity);
  std::vector<ZeroEntry> out;
  for (const auto& [p, n] : acc) {
    if (n != 0) out.push_back({p, std::abs(n)});
  }
  return out;
}

bool contains(const std::vector<ZeroEntry>& set, Complex p, int multiplicity) {
  return std::any_of(set.begin(), set.end(), [&](const ZeroEntry& e) {
    return std::abs(e.point - p) <= kOrbitTol && e.multiplicity == multiplicity;
  });
}

}  // namespace

OrbitReport rotation_orbit_witness(const std::vector<ZeroEntry>& zf, const std::vector<ZeroEntry>& zg,
                                   double theta, int steps, double center) {
  OrbitReport out;
  out.difference = symmetric_difference(zf, zg);
  if (out.difference.empty()) return out;

  const Complex a(center, 0.0);
  const Complex turn = std::polar(1.0, 2.0 * theta);
  for (const auto& e : out.difference) {
    if (!contains(out.difference, std::conj(e.point), e.multiplicity)) out.closed_under_conjugation = false;
    if (!contains(out.difference, a + turn * std::conj(e.point - a), e.multiplicity)) {
      out.closed_under_reflection = false;
    }
    Complex p = e.point;
    for (int k = 0; k < steps && out.closed_under_rotation; ++k) {
      p = a + turn * (p - a);
      if (!contains(out.difference, p, e.multiplicity)) out.closed_under_rotation = false;
    }
  }
  const bool closed = out.closed_under_conjugation && out.closed_under_reflection && out.closed_under_rotation;
  out.verdict = closed ? OrbitVerdict::rational_angle_ambiguity : OrbitVerdict::closure_fails;
  return out;
}

OrbitReport rotation_orbit_witness(const ZeroMultiset& zf, const ZeroMultiset& zg, double theta, int steps) {
  return rotation_orbit_witness(zf.entries(), zg.entries(), theta, steps, 0.0);
}

}  // namespace wbpr
