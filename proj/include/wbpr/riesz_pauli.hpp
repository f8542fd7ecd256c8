#pragma once

// Truncated Riesz products
//
//     R(x) = prod_{n=1}^{N} (1 + 2 i eps_n alpha_n sin(2 pi 3^n x))
//
// and the Pauli partners f_eps = R * envelope: different sign patterns give
// equal |f| and equal |f^| without being constant multiples of each other.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wbpr/hardy_core.hpp"
#include "wbpr/verify_harness.hpp"

namespace wbpr {

inline constexpr int kMaxRieszDepth = 16;

class RieszSpec {
 public:
  // Throws DomainError for a zero / non-finite alpha, a sign outside {-1, +1},
  // or length mismatch.
  RieszSpec(std::vector<double> alphas, std::vector<int> signs);
  // All signs +1.
  explicit RieszSpec(std::vector<double> alphas);

  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<int>& signs() const { return signs_; }
  int depth() const { return static_cast<int>(alphas_.size()); }
  RieszSpec with_signs(std::vector<int> signs) const { return RieszSpec(alphas_, std::move(signs)); }

  friend bool operator==(const RieszSpec&, const RieszSpec&) = default;

 private:
  std::vector<double> alphas_;
  std::vector<int> signs_;
};

// alpha_j = exp(-2 * 3^{j+1}); zero (underflow) from j = 5 on.
std::vector<double> default_alpha(int n);
// alpha_j = 3^{-j}.
std::vector<double> display_alpha(int n);
// "++-+" -> {1, 1, -1, 1}. Throws ParseError.
std::vector<int> parse_signs(const std::string& text);
std::string format_signs(const std::vector<int>& signs);

class CoefficientTable {
 public:
  CoefficientTable() = default;
  explicit CoefficientTable(std::vector<std::pair<std::int64_t, double>> entries);

  // Sorted by k; only nonzero-pattern keys are present.
  const std::vector<std::pair<std::int64_t, double>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // 0 for keys outside the support.
  double at(std::int64_t k) const;

 private:
  std::vector<std::pair<std::int64_t, double>> entries_;
};

// Sparse convolution of the factors {-a eps at -3^j, 1 at 0, a eps at 3^j}.
// DepthTooLarge for N > 16.
CoefficientTable riesz_coefficients(const RieszSpec& spec);

// Balanced-ternary digits of k over 3^1..3^depth (index j-1 holds the digit
// of 3^j); empty when k has a 3^0 digit or needs more than `depth` digits.
std::vector<int> balanced_ternary_digits(std::int64_t k, int depth);

// prod |alpha_j| over the nonzero digits of k, in increasing j; 0 off the support.
double modulus_product(const RieszSpec& spec, std::int64_t k);

// Direct product form.
Complex eval_riesz(const RieszSpec& spec, double x);
// sum_k a_k e^{2 pi i k x}.
Complex eval_coefficient_sum(const CoefficientTable& table, double x);

// Largest |a_k| e^{2|k|} over the table; <= 1 is the decay law.
double decay_ratio(const CoefficientTable& table);

// A spectral envelope with transform supported in [0, 1].
struct SpectralEnvelope {
  std::string name;
  std::function<Complex(double)> time;
  std::function<double(double)> freq;

  // freq = indicator of [0, 1); time(x) = e^{pi i x} sin(pi x) / (pi x).
  static SpectralEnvelope indicator();
};

struct WideBandSignal {
  std::function<Complex(double)> time;
  std::function<Complex(double)> freq;
};

// f(x) = R(x) envelope(x), f^(xi) = sum_k a_k envelope^(xi - k).
WideBandSignal pauli_partner(const RieszSpec& spec, const SpectralEnvelope& env);

inline constexpr double kPauliModulusTol = 1e-12;
inline constexpr double kPauliRatioVariation = 1e-6;
inline constexpr double kEnvelopeFloor = 1e-12;

// Checks "time_modulus", "coefficients", "spectral_modulus" and "ratio".
// DomainError when the specs do not share their alphas.
VerificationReport verify_pauli_pair(const RieszSpec& a, const RieszSpec& b, const SpectralEnvelope& env,
                                     const Grid1D& xgrid, const Grid1D& xigrid);

}  // namespace wbpr
