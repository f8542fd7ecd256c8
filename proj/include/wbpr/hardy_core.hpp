#pragma once

// Functions in H^2 of the unit disc held in factored form
//
//     F(w) = e^{i gamma} B(w) S(w) O(w)
//
// with B a finite Blaschke product, S a singular inner function built from a
// finite atomic boundary measure, and O the outer function recovered from the
// boundary log-modulus by a trapezoidal Herglotz integral.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wbpr {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Interior points must satisfy |w| < 1 - kInteriorMargin.
inline constexpr double kInteriorMargin = 1e-12;
// Two zeros are the same point when closer than this.
inline constexpr double kPointTol = 1e-10;
// Two atoms sit at the same boundary point when their angles differ by less.
inline constexpr double kAngleTol = 1e-12;

// Maps an angle into (-pi, pi]. Exact for inputs already in [-pi, pi].
double normalize_angle(double theta);

bool is_interior(Complex w);

// ---------------------------------------------------------------------------
// Zeros

struct ZeroEntry {
  Complex point;
  int multiplicity = 1;

  friend bool operator==(const ZeroEntry&, const ZeroEntry&) = default;
};

class ZeroMultiset {
 public:
  ZeroMultiset() = default;
  // Throws DomainError for points with |a| >= 1 - 1e-12 or multiplicity < 1.
  // Entries closer than kPointTol are merged, keeping first-seen order.
  explicit ZeroMultiset(std::vector<ZeroEntry> entries);

  const std::vector<ZeroEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Number of zeros counted with multiplicity.
  int count() const;

  ZeroMultiset conjugated() const;
  // Sorted by (re, im).
  ZeroMultiset canonical() const;

  friend bool operator==(const ZeroMultiset&, const ZeroMultiset&) = default;

 private:
  std::vector<ZeroEntry> entries_;
};

// Multiset equality up to `tol` on points (greedy matching, multiplicities
// must agree).
bool approx_equal(const ZeroMultiset& a, const ZeroMultiset& b, double tol = kPointTol);

// ---------------------------------------------------------------------------
// Boundary measures

struct Atom {
  double theta = 0.0;  // in (-pi, pi]
  double mass = 0.0;

  Complex point() const { return std::polar(1.0, theta); }
  friend bool operator==(const Atom&, const Atom&) = default;
};

// Finite atomic measure on the circle with real (possibly negative) masses.
// Atoms are kept sorted by angle; atoms within kAngleTol are merged and
// atoms whose mass is exactly zero are dropped.
class SignedMeasure {
 public:
  SignedMeasure() = default;
  explicit SignedMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;
  double mass_at(double theta) const;

  // Pushforward by complex conjugation: theta -> -theta.
  SignedMeasure conjugated() const;
  SignedMeasure scaled(double factor) const;
  // Largest |mass| of the difference, zero when the measures agree.
  double distance(const SignedMeasure& other) const;

  friend SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b);
  friend SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b);
  friend bool operator==(const SignedMeasure&, const SignedMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
};

// Positive finite atomic measure (the singular measure of an inner factor).
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  // Throws DomainError when a mass is not strictly positive and finite.
  explicit AtomicMeasure(std::vector<Atom> atoms);
  // Drops atoms with |mass| <= tol; throws DomainError if any mass < -tol.
  static AtomicMeasure from_signed(const SignedMeasure& m, double tol = 0.0);

  const std::vector<Atom>& atoms() const { return measure_.atoms(); }
  bool empty() const { return measure_.empty(); }
  std::size_t size() const { return measure_.size(); }
  double total_mass() const { return measure_.total_mass(); }
  double mass_at(double theta) const { return measure_.mass_at(theta); }
  const SignedMeasure& as_signed() const { return measure_; }

  AtomicMeasure conjugated() const;

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  SignedMeasure measure_;
};

// ---------------------------------------------------------------------------
// Boundary log-modulus on the uniform grid theta_m = -pi + 2 pi m / M.

class BoundaryLogModulus {
 public:
  static constexpr std::size_t kDefaultSize = 4096;

  // log|F| == 0 on a grid of size M.
  explicit BoundaryLogModulus(std::size_t size = kDefaultSize);
  // Throws DomainError if the size is not a power of two >= 8 or a sample is
  // not finite.
  explicit BoundaryLogModulus(std::vector<double> samples);

  static BoundaryLogModulus from_function(const std::function<double(double)>& log_modulus,
                                          std::size_t size = kDefaultSize);

  std::size_t size() const { return samples_.size(); }
  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t m) const { return samples_[m]; }
  double theta(std::size_t m) const;
  double mean() const;

  // Samples of theta -> L(-theta); an exact permutation of the grid.
  BoundaryLogModulus reflected() const;
  // Largest radius at which the trapezoidal Herglotz integral is trusted.
  double quadrature_radius() const;

  friend BoundaryLogModulus operator+(const BoundaryLogModulus& a, const BoundaryLogModulus& b);
  BoundaryLogModulus scaled(double factor) const;

  friend bool operator==(const BoundaryLogModulus&, const BoundaryLogModulus&) = default;

 private:
  std::vector<double> samples_;
};

// Grid index of -theta_m.
inline std::size_t reflect_index(std::size_t m, std::size_t size) { return (size - m) % size; }

// e^{i theta_m} for the grid of the given size; exactly conjugate-symmetric.
const std::vector<Complex>& unit_grid(std::size_t size);

// ---------------------------------------------------------------------------

struct DiscFactorization {
  double phase = 0.0;
  ZeroMultiset zeros;
  AtomicMeasure singular;
  BoundaryLogModulus outer;

  friend bool operator==(const DiscFactorization&, const DiscFactorization&) = default;
};

// Counts evaluations that left the trusted quadrature radius.
struct EvalDiagnostics {
  std::size_t accuracy_warnings = 0;
};

// b_a(w) = (a/|a|)(a - w)/(1 - conj(a) w), with b_0(w) = w.
Complex blaschke_factor(Complex alpha, Complex w);
Complex eval_blaschke(const ZeroMultiset& zeros, Complex w);
Complex eval_singular_inner(const AtomicMeasure& singular, Complex w);
// Same exponential formula with signed masses.
Complex eval_singular_inner(const SignedMeasure& singular, Complex w);
// Beyond quadrature_radius() the value is still returned and a warning is
// counted in `diag`.
Complex eval_outer(const BoundaryLogModulus& outer, Complex w, EvalDiagnostics* diag = nullptr);
// log O(w), without the exponential.
Complex log_outer(const BoundaryLogModulus& outer, Complex w);
Complex eval_disc(const DiscFactorization& spec, Complex w, EvalDiagnostics* diag = nullptr);

// F*(w) = conj(F(conj w)) in factored form.
DiscFactorization star(const DiscFactorization& spec);

// Coefficients in ascending order: P(w) = sum_k coeffs[k] w^k.
// Interior roots become the zero multiset; the phase is chosen so that
// eval_disc matches P. Throws RootOnCircle when a root has ||r| - 1| <= 1e-9.
DiscFactorization factorize_polynomial(std::span<const Complex> coeffs,
                                       std::size_t grid_size = BoundaryLogModulus::kDefaultSize);

Complex eval_polynomial(std::span<const Complex> coeffs, Complex w);

}  // namespace wbpr
