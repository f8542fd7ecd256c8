#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "wbpr/hardy_core.hpp"
#include "wbpr/solution_set.hpp"
#include "wbpr/strip_transfer.hpp"

namespace wbpr::testing {

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int a, int b) {
  return std::uniform_int_distribution<int>(a, b)(rng);
}

// Dyadic masses keep atom arithmetic exact.
inline double dyadic_mass(std::mt19937_64& rng) { return uniform_int(rng, 4, 64) / 64.0; }

inline Complex random_zero(std::mt19937_64& rng, double rmax = 0.85) {
  const double r = std::sqrt(uniform(rng, 0.0, 1.0)) * rmax;
  double t = uniform(rng, -kPi, kPi);
  // keep away from the real axis so flips are visible
  if (std::abs(std::sin(t)) < 0.1) t += 0.5;
  return std::polar(std::max(r, 0.05), t);
}

inline double random_atom_angle(std::mt19937_64& rng) {
  const double t = uniform(rng, 0.15, kPi - 0.15);
  return uniform_int(rng, 0, 1) ? t : -t;
}

// log|O| = c0 + sum_{k<=3} a_k cos k t + b_k sin k t
inline BoundaryLogModulus smooth_outer(std::mt19937_64& rng, std::size_t size = BoundaryLogModulus::kDefaultSize) {
  double c[7];
  for (double& x : c) x = uniform(rng, -0.3, 0.3);
  return BoundaryLogModulus::from_function(
      [c](double t) {
        return c[0] + c[1] * std::cos(t) + c[2] * std::sin(t) + c[3] * std::cos(2 * t) + c[4] * std::sin(2 * t) +
               c[5] * std::cos(3 * t) + c[6] * std::sin(3 * t);
      },
      size);
}

inline DiscFactorization random_disc(std::mt19937_64& rng, int max_zeros = 6, int max_atoms = 3,
                                     std::size_t size = BoundaryLogModulus::kDefaultSize) {
  DiscFactorization d;
  d.phase = uniform(rng, -kPi, kPi);
  std::vector<ZeroEntry> zeros;
  const int nz = uniform_int(rng, 0, max_zeros);
  for (int i = 0; i < nz; ++i) zeros.push_back({random_zero(rng), 1});
  d.zeros = ZeroMultiset(std::move(zeros));
  std::vector<Atom> atoms;
  const int na = uniform_int(rng, 0, max_atoms);
  for (int i = 0; i < na; ++i) atoms.push_back({random_atom_angle(rng), dyadic_mass(rng)});
  d.singular = AtomicMeasure(std::move(atoms));
  d.outer = smooth_outer(rng, size);
  return d;
}

inline FlipSelection random_selection(std::mt19937_64& rng, const ZeroMultiset& zeros) {
  FlipSelection sel;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (uniform_int(rng, 0, 1)) sel.keep(i);
  }
  return sel;
}

// sigma_plus dominated by C nu_f: mirror a random subset of f's atoms.
inline OddSingularPerturbation admissible_sigma(std::mt19937_64& rng, const AtomicMeasure& nu_f) {
  std::vector<Atom> atoms;
  for (const auto& a : nu_f.atoms()) {
    if (uniform_int(rng, 0, 1) == 0) continue;
    // a / 64 with a in [1, 64 mass]
    const int top = static_cast<int>(a.mass * 64.0);
    if (top < 1) continue;
    atoms.push_back({normalize_angle(-a.theta), uniform_int(rng, 1, top) / 64.0});
  }
  // an atom at theta with its mirror also in nu_f would break disjointness
  std::vector<Atom> ok;
  for (const auto& a : atoms) {
    bool clash = false;
    for (const auto& b : atoms) {
      if (std::abs(normalize_angle(a.theta + b.theta)) < 1e-9) clash = true;
    }
    if (!clash) ok.push_back(a);
  }
  return OddSingularPerturbation(AtomicMeasure(std::move(ok)));
}

inline OddBoundary random_odd(std::mt19937_64& rng, std::size_t size = BoundaryLogModulus::kDefaultSize) {
  const double b1 = uniform(rng, -0.4, 0.4), b2 = uniform(rng, -0.2, 0.2), b3 = uniform(rng, -0.1, 0.1);
  return OddBoundary::from_function(
      [=](double t) { return b1 * std::sin(t) + b2 * std::sin(2 * t) + b3 * std::sin(3 * t); }, size);
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Simple strip function with one strip zero and smooth outer data.
inline StripFunction strip_with_zero(Complex z0, std::size_t size = BoundaryLogModulus::kDefaultSize) {
  StripFunction f;
  f.disc.zeros = ZeroMultiset({{phi(z0), 1}});
  f.disc.outer = BoundaryLogModulus::from_function(
      [](double t) { return 0.2 * std::cos(t) + 0.1 * std::sin(t) - 0.05 * std::cos(2 * t); }, size);
  return f;
}

}  // namespace wbpr::testing
