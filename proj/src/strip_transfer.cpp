#include "wbpr/strip_transfer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include <string>

#include "wbpr/errors.hpp"

namespace wbpr {

Complex phi(Complex z) {
  if (!(std::abs(z.imag()) < 1.0)) {
    throw DomainError("phi: |Im z| = " + std::to_string(std::abs(z.imag())) + " is outside the strip");
  }
  return std::tanh(0.25 * kPi * z);
}

Complex phi_inv(Complex w) {
  if (!(std::abs(w) < 1.0)) throw DomainError("phi_inv: |w| must be < 1");
  return (4.0 / kPi) * std::atanh(w);
}

Complex phi_prime(Complex z) {
  const Complex c = std::cosh(0.25 * kPi * z);
  return 0.25 * kPi / (c * c);
}

Complex weight_W(Complex z) {
  const Complex c = std::cosh(0.25 * kPi * z);
  return 4.0 * c * c;
}

Complex sqrt_weight(Complex z) {
  const Complex r = 2.0 * std::cosh(0.25 * kPi * z);
  assert(r.real() > 0.0 || !is_strip_interior(z));
  return r;
}

double boundary_angle(double x, int side) {
  return (side >= 0 ? 2.0 : -2.0) * std::atan(std::exp(-0.5 * kPi * x));
}

double boundary_x(double theta) {
  return -(2.0 / kPi) * std::log(std::tan(0.5 * std::abs(theta)));
}

double max_real_extent(std::size_t grid_size) {
  return (4.0 / kPi) * std::atanh(1.0 - 10.0 / static_cast<double>(grid_size));
}

void validate(const StripFunction& f) {
  if (!(f.corner_plus >= 0.0) || !(f.corner_minus >= 0.0)) {
    throw DomainError("corner masses must be nonnegative");
  }
  if (!(f.scale > 0.0) || !std::isfinite(f.scale)) throw DomainError("scale must be positive");
  if (!std::isfinite(f.eta)) throw DomainError("eta must be finite");
  for (const auto& a : f.disc.singular.atoms()) {
    if (std::abs(a.theta) <= kAngleTol || std::abs(a.theta) >= kPi - kAngleTol) {
      throw DomainError("disc atoms at +1/-1 belong in the corner masses");
    }
  }
}

Complex eval_strip(const StripFunction& f, Complex z, EvalDiagnostics* diag) {
  const Complex zeta = z / f.scale;
  const Complex w = phi(zeta);
  Complex value = eval_disc(f.disc, w, diag) / sqrt_weight(zeta);
  if (f.corner_plus != 0.0 || f.corner_minus != 0.0) {
    value *= std::exp(-f.corner_plus * std::exp(0.5 * kPi * zeta) -
                      f.corner_minus * std::exp(-0.5 * kPi * zeta));
  }
  if (f.eta != 0.0) value *= std::exp(Complex(0.0, f.eta) * z);
  return value;
}

StripFunction star(const StripFunction& f) {
  StripFunction out = f;
  out.disc = star(f.disc);
  out.eta = -f.eta;
  return out;
}

Pushforward pushforward_measure(const AtomicMeasure& nu) {
  Pushforward out;
  for (const auto& a : nu.atoms()) {
    if (std::abs(a.theta) <= kAngleTol) {
      out.corner_plus += a.mass;
    } else if (std::abs(a.theta) >= kPi - kAngleTol) {
      out.corner_minus += a.mass;
    } else {
      out.atoms.push_back({boundary_x(a.theta), a.theta > 0.0 ? 1 : -1, a.mass});
    }
  }
  return out;
}

namespace {

using Interpolant = boost::math::interpolators::pchip<std::vector<double>>;

struct SideData {
  std::vector<double> x;
  std::vector<double> y;
};

SideData sorted_side(std::vector<std::pair<double, double>> samples, const char* name) {
  std::sort(samples.begin(), samples.end());
  SideData out;
  for (const auto& [x, y] : samples) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw ResamplingError(std::string(name) + ": boundary samples must be finite");
    }
    if (!out.x.empty() && x == out.x.back()) {
      throw ResamplingError(std::string(name) + ": duplicate abscissa " + std::to_string(x));
    }
    out.x.push_back(x);
    out.y.push_back(y);
  }
  if (out.x.size() < 4) {
    throw ResamplingError(std::string(name) + ": need at least 4 boundary samples");
  }
  return out;
}

}  // namespace

StripFunction lift(const StripData& data) {
  StripFunction f;
  f.corner_plus = data.corner_plus;
  f.corner_minus = data.corner_minus;
  f.scale = data.scale;
  f.eta = data.eta;
  f.disc.phase = data.phase;

  std::vector<ZeroEntry> zeros;
  for (const auto& z : data.zeros) {
    if (!is_strip_interior(z.point)) throw DomainError("lift: strip zero outside the open strip");
    zeros.push_back({phi(z.point), z.multiplicity});
  }
  f.disc.zeros = ZeroMultiset(std::move(zeros));

  std::vector<Atom> atoms;
  for (const auto& a : data.boundary_atoms) {
    if (a.side != 1 && a.side != -1) throw DomainError("lift: boundary atom side must be +1 or -1");
    atoms.push_back({boundary_angle(a.x, a.side), a.mass});
  }
  f.disc.singular = AtomicMeasure(std::move(atoms));

  const std::size_t size = data.grid_size;
  if (data.outer_top.empty() && data.outer_bottom.empty()) {
    f.disc.outer = BoundaryLogModulus(size);
  } else {
    const SideData top = sorted_side(data.outer_top, "outer_top");
    const SideData bottom = sorted_side(data.outer_bottom, "outer_bottom");
    const Interpolant top_interp(std::vector<double>(top.x), std::vector<double>(top.y));
    const Interpolant bottom_interp(std::vector<double>(bottom.x), std::vector<double>(bottom.y));

    std::vector<double> samples(size);
    BoundaryLogModulus grid(size);
    for (std::size_t m = 0; m < size; ++m) {
      if (m == 0) {
        samples[m] = 0.5 * (top.y.front() + bottom.y.front());
        continue;
      }
      if (m == size / 2) {
        samples[m] = 0.5 * (top.y.back() + bottom.y.back());
        continue;
      }
      const double theta = grid.theta(m);
      const double x = boundary_x(theta);
      const SideData& side = theta > 0.0 ? top : bottom;
      if (x < side.x.front() || x > side.x.back()) {
        throw ResamplingError("lift: boundary samples cover [" + std::to_string(side.x.front()) +
                              ", " + std::to_string(side.x.back()) + "] but the grid needs x = " +
                              std::to_string(x));
      }
      samples[m] = theta > 0.0 ? top_interp(x) : bottom_interp(x);
    }
    f.disc.outer = BoundaryLogModulus(std::move(samples));
  }
  validate(f);
  return f;
}

StripFunction lower(const DiscFactorization& disc) {
  StripFunction f;
  f.disc = disc;
  // Atoms at +-1 become corner masses.
  const Pushforward push = pushforward_measure(disc.singular);
  if (push.corner_plus != 0.0 || push.corner_minus != 0.0) {
    std::vector<Atom> rest;
    for (const auto& a : disc.singular.atoms()) {
      if (std::abs(a.theta) > kAngleTol && std::abs(a.theta) < kPi - kAngleTol) rest.push_back(a);
    }
    f.disc.singular = AtomicMeasure(std::move(rest));
    f.corner_plus = push.corner_plus;
    f.corner_minus = push.corner_minus;
  }
  return f;
}

StripData to_strip_data(const StripFunction& f) {
  StripData data;
  data.phase = f.disc.phase;
  data.corner_plus = f.corner_plus;
  data.corner_minus = f.corner_minus;
  data.scale = f.scale;
  data.eta = f.eta;
  for (const auto& z : f.disc.zeros.entries()) data.zeros.push_back({phi_inv(z.point), z.multiplicity});
  data.boundary_atoms = pushforward_measure(f.disc.singular).atoms;

  const BoundaryLogModulus& outer = f.disc.outer;
  const std::size_t size = outer.size();
  data.grid_size = size;
  double reach = 0.0;
  for (std::size_t m = 1; m < size; ++m) {
    if (m == size / 2) continue;
    const double theta = outer.theta(m);
    const double x = boundary_x(theta);
    reach = std::max(reach, std::abs(x));
    (theta > 0.0 ? data.outer_top : data.outer_bottom).emplace_back(x, outer[m]);
  }
  const double far = reach + 1.0;
  for (auto* side : {&data.outer_top, &data.outer_bottom}) {
    side->emplace_back(far, outer[size / 2]);
    side->emplace_back(-far, outer[0]);
    std::sort(side->begin(), side->end());
  }
  return data;
}

}  // namespace wbpr
