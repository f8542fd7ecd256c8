#include "wbpr/hardy_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "wbpr/errors.hpp"

namespace wbpr {

double normalize_angle(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r = kPi;
  return r;
}

bool is_interior(Complex w) { return std::abs(w) < 1.0 - kInteriorMargin; }

namespace {

void require_interior(Complex w, const char* what) {
  if (!(std::abs(w) < 1.0)) {
    throw DomainError(std::string(what) + ": point " + std::to_string(w.real()) + "+" +
                      std::to_string(w.imag()) + "i is not inside the unit disc");
  }
}

bool angles_match(double a, double b) {
  double d = std::abs(a - b);
  return d <= kAngleTol || 2.0 * kPi - d <= kAngleTol;
}

}  // namespace

// ---------------------------------------------------------------------------
// ZeroMultiset

ZeroMultiset::ZeroMultiset(std::vector<ZeroEntry> entries) {
  for (const auto& e : entries) {
    if (e.multiplicity < 1) {
      throw DomainError("zero multiplicity must be a positive integer");
    }
    if (!std::isfinite(e.point.real()) || !std::isfinite(e.point.imag()) ||
        !is_interior(e.point)) {
      throw DomainError("zero at |a| = " + std::to_string(std::abs(e.point)) +
                        " is not strictly inside the unit disc");
    }
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ZeroEntry& x) {
      return std::abs(x.point - e.point) <= kPointTol;
    });
    if (it != entries_.end()) {
      it->multiplicity += e.multiplicity;
    } else {
      entries_.push_back(e);
    }
  }
}

int ZeroMultiset::count() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0,
                         [](int acc, const ZeroEntry& e) { return acc + e.multiplicity; });
}

ZeroMultiset ZeroMultiset::conjugated() const {
  ZeroMultiset out;
  out.entries_ = entries_;
  for (auto& e : out.entries_) e.point = std::conj(e.point);
  return out;
}

ZeroMultiset ZeroMultiset::canonical() const {
  ZeroMultiset out = *this;
  std::sort(out.entries_.begin(), out.entries_.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
    if (a.point.real() != b.point.real()) return a.point.real() < b.point.real();
    return a.point.imag() < b.point.imag();
  });
  return out;
}

bool approx_equal(const ZeroMultiset& a, const ZeroMultiset& b, double tol) {
  if (a.count() != b.count()) return false;
  std::vector<int> remaining;
  for (const auto& e : b.entries()) remaining.push_back(e.multiplicity);
  for (const auto& e : a.entries()) {
    int need = e.multiplicity;
    for (std::size_t j = 0; j < b.size() && need > 0; ++j) {
      if (remaining[j] > 0 && std::abs(b.entries()[j].point - e.point) <= tol) {
        int take = std::min(need, remaining[j]);
        remaining[j] -= take;
        need -= take;
      }
    }
    if (need > 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Measures

SignedMeasure::SignedMeasure(std::vector<Atom> atoms) {
  for (auto& a : atoms) {
    if (!std::isfinite(a.theta) || !std::isfinite(a.mass)) {
      throw DomainError("atom angle and mass must be finite");
    }
    a.theta = normalize_angle(a.theta);
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& x, const Atom& y) { return x.theta < y.theta; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && angles_match(atoms_.back().theta, a.theta)) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
  // Atoms just above -pi and at pi are neighbours across the cut.
  if (atoms_.size() > 1 && angles_match(atoms_.front().theta, atoms_.back().theta)) {
    atoms_.back().mass += atoms_.front().mass;
    atoms_.erase(atoms_.begin());
  }
  std::erase_if(atoms_, [](const Atom& a) { return a.mass == 0.0; });
}

double SignedMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

double SignedMeasure::mass_at(double theta) const {
  theta = normalize_angle(theta);
  for (const auto& a : atoms_) {
    if (angles_match(a.theta, theta)) return a.mass;
  }
  return 0.0;
}

SignedMeasure SignedMeasure::conjugated() const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.theta = normalize_angle(-a.theta);
  return SignedMeasure(std::move(atoms));
}

SignedMeasure SignedMeasure::scaled(double factor) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  return SignedMeasure(std::move(atoms));
}

double SignedMeasure::distance(const SignedMeasure& other) const {
  double worst = 0.0;
  for (const auto& a : (*this - other).atoms()) worst = std::max(worst, std::abs(a.mass));
  return worst;
}

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
  std::vector<Atom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return SignedMeasure(std::move(atoms));
}

SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) { return a + b.scaled(-1.0); }

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw DomainError("atom masses must be strictly positive, got " + std::to_string(a.mass));
    }
  }
  measure_ = SignedMeasure(std::move(atoms));
}

AtomicMeasure AtomicMeasure::from_signed(const SignedMeasure& m, double tol) {
  std::vector<Atom> kept;
  for (const auto& a : m.atoms()) {
    if (a.mass < -tol) {
      throw DomainError("negative mass " + std::to_string(a.mass) + " at theta = " +
                        std::to_string(a.theta));
    }
    if (a.mass > tol) kept.push_back(a);
  }
  return AtomicMeasure(std::move(kept));
}

AtomicMeasure AtomicMeasure::conjugated() const {
  AtomicMeasure out;
  out.measure_ = measure_.conjugated();
  return out;
}

// ---------------------------------------------------------------------------
// BoundaryLogModulus

namespace {

void check_grid_size(std::size_t size) {
  if (size < 8 || !std::has_single_bit(size)) {
    throw DomainError("boundary grid size must be a power of two >= 8, got " +
                      std::to_string(size));
  }
}

}  // namespace

BoundaryLogModulus::BoundaryLogModulus(std::size_t size) {
  check_grid_size(size);
  samples_.assign(size, 0.0);
}

BoundaryLogModulus::BoundaryLogModulus(std::vector<double> samples) : samples_(std::move(samples)) {
  check_grid_size(samples_.size());
  for (double s : samples_) {
    if (!std::isfinite(s)) {
      throw DomainError("boundary log-modulus samples must be finite; factor boundary zeros out first");
    }
  }
}

BoundaryLogModulus BoundaryLogModulus::from_function(const std::function<double(double)>& log_modulus,
                                                     std::size_t size) {
  check_grid_size(size);
  std::vector<double> samples(size);
  for (std::size_t m = 0; m < size; ++m) {
    samples[m] = log_modulus(-kPi + 2.0 * kPi * static_cast<double>(m) / static_cast<double>(size));
  }
  return BoundaryLogModulus(std::move(samples));
}

double BoundaryLogModulus::theta(std::size_t m) const {
  return -kPi + 2.0 * kPi * static_cast<double>(m) / static_cast<double>(size());
}

double BoundaryLogModulus::mean() const {
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) / static_cast<double>(size());
}

BoundaryLogModulus BoundaryLogModulus::reflected() const {
  std::vector<double> out(size());
  for (std::size_t m = 0; m < size(); ++m) out[m] = samples_[reflect_index(m, size())];
  return BoundaryLogModulus(std::move(out));
}

double BoundaryLogModulus::quadrature_radius() const { return 1.0 - 10.0 / static_cast<double>(size()); }

BoundaryLogModulus operator+(const BoundaryLogModulus& a, const BoundaryLogModulus& b) {
  if (a.size() != b.size()) {
    throw DomainError("boundary grids differ in size (" + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + ")");
  }
  std::vector<double> out(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) out[m] = a.samples_[m] + b.samples_[m];
  return BoundaryLogModulus(std::move(out));
}

BoundaryLogModulus BoundaryLogModulus::scaled(double factor) const {
  std::vector<double> out = samples_;
  for (double& s : out) s *= factor;
  return BoundaryLogModulus(std::move(out));
}

const std::vector<Complex>& unit_grid(std::size_t size) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<Complex>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(size);
  if (it != cache.end()) return it->second;
  check_grid_size(size);
  std::vector<Complex> roots(size);
  const double n = static_cast<double>(size);
  for (std::size_t m = 0; m <= size / 2; ++m) {
    double theta = -kPi + 2.0 * kPi * static_cast<double>(m) / n;
    roots[m] = Complex(std::cos(theta), std::sin(theta));
  }
  roots[0] = Complex(-1.0, 0.0);
  roots[size / 2] = Complex(1.0, 0.0);
  for (std::size_t m = size / 2 + 1; m < size; ++m) roots[m] = std::conj(roots[size - m]);
  return cache.emplace(size, std::move(roots)).first->second;
}

// ---------------------------------------------------------------------------
// Evaluation

Complex blaschke_factor(Complex alpha, Complex w) {
  if (!(std::abs(alpha) < 1.0)) throw DomainError("blaschke_factor: |alpha| must be < 1");
  require_interior(w, "blaschke_factor");
  const double r = std::abs(alpha);
  if (r == 0.0) return w;
  return (alpha / r) * (alpha - w) / (1.0 - std::conj(alpha) * w);
}

Complex eval_blaschke(const ZeroMultiset& zeros, Complex w) {
  require_interior(w, "eval_blaschke");
  Complex out(1.0, 0.0);
  for (const auto& e : zeros.entries()) {
    const Complex b = blaschke_factor(e.point, w);
    for (int k = 0; k < e.multiplicity; ++k) out *= b;
  }
  return out;
}

namespace {

Complex singular_exponent(const std::vector<Atom>& atoms, Complex w) {
  Complex s(0.0, 0.0);
  for (const auto& a : atoms) {
    const Complex zeta = a.point();
    s += a.mass * (w + zeta) / (w - zeta);
  }
  return s;
}

}  // namespace

Complex eval_singular_inner(const AtomicMeasure& singular, Complex w) {
  require_interior(w, "eval_singular_inner");
  return std::exp(singular_exponent(singular.atoms(), w));
}

Complex eval_singular_inner(const SignedMeasure& singular, Complex w) {
  require_interior(w, "eval_singular_inner");
  return std::exp(singular_exponent(singular.atoms(), w));
}

Complex log_outer(const BoundaryLogModulus& outer, Complex w) {
  require_interior(w, "eval_outer");
  const auto& roots = unit_grid(outer.size());
  const auto samples = outer.samples();
  const double wr = w.real();
  const double wi = w.imag();
  double acc_re = 0.0;
  double acc_im = 0.0;
  // Herglotz kernel (e + w)/(e - w) written out to avoid the generic
  // complex division path.
  for (std::size_t m = 0; m < samples.size(); ++m) {
    const double er = roots[m].real();
    const double ei = roots[m].imag();
    const double dr = er - wr;
    const double di = ei - wi;
    const double nr = er + wr;
    const double ni = ei + wi;
    const double inv = samples[m] / (dr * dr + di * di);
    acc_re += (nr * dr + ni * di) * inv;
    acc_im += (ni * dr - nr * di) * inv;
  }
  const double scale = 1.0 / static_cast<double>(samples.size());
  return {acc_re * scale, acc_im * scale};
}

Complex eval_outer(const BoundaryLogModulus& outer, Complex w, EvalDiagnostics* diag) {
  if (diag != nullptr && std::abs(w) > outer.quadrature_radius()) ++diag->accuracy_warnings;
  return std::exp(log_outer(outer, w));
}

Complex eval_disc(const DiscFactorization& spec, Complex w, EvalDiagnostics* diag) {
  return std::polar(1.0, spec.phase) * eval_blaschke(spec.zeros, w) *
         eval_singular_inner(spec.singular, w) * eval_outer(spec.outer, w, diag);
}

DiscFactorization star(const DiscFactorization& spec) {
  return DiscFactorization{-spec.phase, spec.zeros.conjugated(), spec.singular.conjugated(),
                           spec.outer.reflected()};
}

// ---------------------------------------------------------------------------
// Polynomials

Complex eval_polynomial(std::span<const Complex> coeffs, Complex w) {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
  return acc;
}

}  // namespace wbpr
