#pragma once

// Transfer between the strip S = {|Im z| < 1} and the unit disc through
// phi(z) = tanh(pi z / 4), and the strip-side factorization
//
//     f(z) = e^{i eta z} F(phi(zeta)) exp(-a+ e^{pi zeta/2} - a- e^{-pi zeta/2}) / W(zeta)^{1/2}
//
// with zeta = z / scale and W(z) = 4 cosh^2(pi z / 4).

#include <utility>
#include <vector>

#include "wbpr/hardy_core.hpp"

namespace wbpr {

inline bool is_strip_interior(Complex z) { return std::abs(z.imag()) < 1.0 - kInteriorMargin; }

// tanh(pi z / 4). Throws DomainError when |Im z| >= 1.
Complex phi(Complex z);
// (2/pi) log((1 + w)/(1 - w)) on the principal branch. Throws DomainError when |w| >= 1.
Complex phi_inv(Complex w);
// (pi/4) sech^2(pi z / 4).
Complex phi_prime(Complex z);
// 4 cosh^2(pi z / 4).
Complex weight_W(Complex z);
// 2 cosh(pi z / 4), the principal root of W on the strip.
Complex sqrt_weight(Complex z);

// Boundary extension: phi(x + i side) = e^{i theta}. side is +1 (top) or -1.
double boundary_angle(double x, int side);
// Inverse of boundary_angle for theta in (-pi, 0) U (0, pi).
double boundary_x(double theta);

// Largest |Re z| with |phi(z)| inside the quadrature radius of a size-M grid.
double max_real_extent(std::size_t grid_size);

struct StripFunction {
  DiscFactorization disc;  // carries no atoms at +1 / -1
  double corner_plus = 0.0;
  double corner_minus = 0.0;
  double scale = 1.0;
  // Exponential outer modifier e^{i eta z}, applied at evaluation time.
  double eta = 0.0;

  friend bool operator==(const StripFunction&, const StripFunction&) = default;
};

// Throws DomainError on negative corners, nonpositive scale, or disc atoms at +-1.
void validate(const StripFunction& f);

// Beyond max_real_extent the value is returned with a warning counted.
Complex eval_strip(const StripFunction& f, Complex z, EvalDiagnostics* diag = nullptr);

// f*(z) = conj(f(conj z)).
StripFunction star(const StripFunction& f);

struct StripAtom {
  double x = 0.0;
  int side = 1;  // +1: Im z = 1, -1: Im z = -1
  double mass = 0.0;

  friend bool operator==(const StripAtom&, const StripAtom&) = default;
};

struct Pushforward {
  double corner_plus = 0.0;
  double corner_minus = 0.0;
  std::vector<StripAtom> atoms;
};

// Image of a disc measure on the strip boundary; atoms at +1 / -1 become the
// corner masses.
Pushforward pushforward_measure(const AtomicMeasure& nu);

// Strip-side description of a function, the input format of lift.
struct StripData {
  double phase = 0.0;
  std::vector<ZeroEntry> zeros;          // strip points
  std::vector<StripAtom> boundary_atoms;
  double corner_plus = 0.0;
  double corner_minus = 0.0;
  // (x, log|W^{1/2} f(x +- i)|), any order.
  std::vector<std::pair<double, double>> outer_top;
  std::vector<std::pair<double, double>> outer_bottom;
  std::size_t grid_size = BoundaryLogModulus::kDefaultSize;
  double scale = 1.0;
  double eta = 0.0;
};

// Boundary samples must cover every |x| reached by the theta grid, otherwise
// ResamplingError.
StripFunction lift(const StripData& data);
StripFunction lower(const DiscFactorization& disc);
// Inverse of lift: outer data sampled exactly at the preimages of the grid
// nodes (plus one far sample per end for the +-1 nodes).
StripData to_strip_data(const StripFunction& f);

}  // namespace wbpr
