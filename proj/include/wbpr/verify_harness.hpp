#pragma once

// Sampling grids, modulus comparison, and the zero / measure / boundary
// conditions that characterize |F| = |G| on (-1, 1).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wbpr/hardy_core.hpp"
#include "wbpr/strip_transfer.hpp"

namespace wbpr {

using Evaluator = std::function<Complex(Complex)>;

Evaluator evaluator(const DiscFactorization& spec);
Evaluator evaluator(const StripFunction& f);

enum class GridKind { real_line, disc_diameter, segment };

// `count` equispaced parameters t in [start, stop]. real_line and
// disc_diameter place points at t; segment places them at a + t e^{i theta}.
struct Grid1D {
  double start = -4.0;
  double stop = 4.0;
  std::size_t count = 257;
  GridKind kind = GridKind::real_line;
  double theta = 0.0;
  double a = 0.0;

  static Grid1D real_line(double start, double stop, std::size_t count);
  static Grid1D disc_diameter(double start, double stop, std::size_t count);
  static Grid1D segment(double theta, double a, double start, double stop, std::size_t count);

  // Throws DomainError for count < 2, disc points outside the disc, or
  // segments leaving the strip.
  std::vector<Complex> points() const;
  std::string describe() const;
};

// 257 points on [-4, 4].
Grid1D default_real_grid();
// 257 points on [-0.95, 0.95].
Grid1D default_disc_grid();

struct Check {
  std::string name;
  bool pass = false;
  double max_err = 0.0;
  Complex argmax{0.0, 0.0};
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  std::map<std::string, std::string> metadata;

  bool passed() const;
  const Check* find(const std::string& name) const;
  void merge(const VerificationReport& other, const std::string& prefix = "");
};

inline constexpr double kRelativeFloor = 1e-300;
inline constexpr double kBothTiny = 1e-14;

// max ||g| - |f|| / max(|f|, 1e-300) over the grid; passes iff < tol.
// Points where both moduli are below 1e-14 count as agreeing. Evaluation
// errors turn into a failed check.
VerificationReport compare_modulus(const Evaluator& f, const Evaluator& g, const Grid1D& grid,
                                   double tol);

struct ModulusSample {
  Complex point;
  double abs_f;
  double abs_g;
  double rel_err;
};
// Per-point data behind compare_modulus (for CSV dumps).
std::vector<ModulusSample> sample_modulus(const Evaluator& f, const Evaluator& g, const Grid1D& grid);

inline constexpr double kZeroConditionTol = 1e-10;
inline constexpr double kMeasureConditionTol = 1e-12;
inline constexpr double kBoundaryConditionTol = 1e-9;

// Checks "zeros", "measures" and "boundary":
//   (i)   Z(F) u conj Z(F) = Z(G) u conj Z(G) as multisets,
//   (ii)  nu_F + C nu_F = nu_G + C nu_G,
//   (iii) L_F(t) + L_F(-t) = L_G(t) + L_G(-t) on the outer grid.
VerificationReport check_lemma_conditions(const DiscFactorization& f, const DiscFactorization& g);
// Disc conditions plus equal corner masses.
VerificationReport check_lemma_conditions(const StripFunction& f, const StripFunction& g);

// Moments nu^(n) = sum mass e^{-i n theta_atom}.
Complex measure_moment(const AtomicMeasure& nu, int n);

// Plain pairing nu_f(n) + nu_f(-n) = nu_g(n) + nu_g(-n), the theta-rotated
// pairing, and, when both hold, nu_f(n) = nu_g(n) for |n| <= n_max.
VerificationReport fourier_pairing_check(const AtomicMeasure& nu_f, const AtomicMeasure& nu_g,
                                         double theta, int n_max, double tol = 1e-10);

}  // namespace wbpr
