#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "wbpr/errors.hpp"
#include "wbpr/hardy_core.hpp"

namespace wbpr {

namespace {

constexpr double kCircleTol = 1e-9;
constexpr double kClusterTol = 1e-6;

Complex eval_derivative(std::span<const Complex> coeffs, Complex w) {
  Complex acc(0.0, 0.0);
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * w + static_cast<double>(k) * coeffs[k];
  return acc;
}

// Roots of a polynomial with nonzero constant and leading coefficients.
std::vector<Complex> companion_roots(std::span<const Complex> coeffs) {
  const auto n = static_cast<Eigen::Index>(coeffs.size() - 1);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw DomainError("companion eigenvalue iteration failed");

  std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (auto& r : roots) {
    // A few Newton steps against the original polynomial; keep a step only
    // when it lowers the residual.
    for (int it = 0; it < 8; ++it) {
      const Complex p = eval_polynomial(coeffs, r);
      const Complex dp = eval_derivative(coeffs, r);
      if (dp == Complex(0.0, 0.0)) break;
      const Complex next = r - p / dp;
      if (std::abs(eval_polynomial(coeffs, next)) >= std::abs(p)) break;
      r = next;
    }
  }
  return roots;
}

struct RootCluster {
  Complex center;
  int multiplicity;
};

std::vector<RootCluster> cluster(const std::vector<Complex>& roots) {
  std::vector<RootCluster> out;
  std::vector<Complex> sums;
  for (const auto& r : roots) {
    bool merged = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (std::abs(out[i].center - r) <= kClusterTol) {
        sums[i] += r;
        ++out[i].multiplicity;
        out[i].center = sums[i] / static_cast<double>(out[i].multiplicity);
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back({r, 1});
      sums.push_back(r);
    }
  }
  return out;
}

}  // namespace

DiscFactorization factorize_polynomial(std::span<const Complex> coeffs, std::size_t grid_size) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == Complex(0.0, 0.0)) --hi;
  if (hi == 0) throw DomainError("factorize_polynomial: the zero polynomial has no factorization");
  std::size_t lo = 0;
  while (coeffs[lo] == Complex(0.0, 0.0)) ++lo;

  const std::span<const Complex> trimmed = coeffs.subspan(0, hi);
  const std::span<const Complex> reduced = coeffs.subspan(lo, hi - lo);
  const Complex leading = trimmed.back();

  std::vector<RootCluster> clusters;
  if (lo > 0) clusters.push_back({Complex(0.0, 0.0), static_cast<int>(lo)});
  if (reduced.size() > 1) {
    for (const auto& c : cluster(companion_roots(reduced))) clusters.push_back(c);
  }

  std::vector<ZeroEntry> interior;
  for (const auto& c : clusters) {
    const double r = std::abs(c.center);
    if (std::abs(r - 1.0) <= kCircleTol) {
      throw RootOnCircle("polynomial root " + std::to_string(c.center.real()) + "+" +
                         std::to_string(c.center.imag()) + "i lies on the unit circle");
    }
    if (r < 1.0) interior.push_back({c.center, c.multiplicity});
  }

  DiscFactorization out;
  out.zeros = ZeroMultiset(std::move(interior));
  const double log_leading = std::log(std::abs(leading));
  out.outer = BoundaryLogModulus::from_function(
      [&](double theta) {
        const Complex e = std::polar(1.0, theta);
        double s = log_leading;
        for (const auto& c : clusters) s += c.multiplicity * std::log(std::abs(e - c.center));
        return s;
      },
      grid_size);

  // Fix the unimodular constant at the probe point farthest from the zeros.
  constexpr std::array<Complex, 6> probes{Complex(0.0, 0.0),  Complex(0.5, 0.0),
                                          Complex(0.0, 0.5),  Complex(-0.5, 0.0),
                                          Complex(0.0, -0.5), Complex(0.35, 0.35)};
  Complex best = probes[0];
  double best_mod = -1.0;
  for (const auto& p : probes) {
    const double m = std::abs(eval_blaschke(out.zeros, p));
    if (m > best_mod) {
      best_mod = m;
      best = p;
    }
  }
  out.phase = std::arg(eval_polynomial(trimmed, best) / eval_disc(out, best));
  return out;
}

}  // namespace wbpr
