#pragma once

// Solution families of |g| = |f| on the real line (or (-1, 1) in the disc):
// zero flips, odd singular perturbations, odd outer modifiers, the trivial
// solutions c e^{i eta z} f and c e^{i eta z} f*, and the u v / u v* split.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "wbpr/hardy_core.hpp"
#include "wbpr/strip_transfer.hpp"
#include "wbpr/verify_harness.hpp"

namespace wbpr {

// Names the zeros that are KEPT; every other copy is replaced by its
// conjugate. keep_all() is the identity.
class FlipSelection {
 public:
  static constexpr int kAllCopies = -1;

  FlipSelection() = default;  // keeps nothing: conjugate every zero
  static FlipSelection keep_all(const ZeroMultiset& zeros);
  static FlipSelection flip_all() { return {}; }

  // Keep `copies` copies of entry `index` (kAllCopies keeps the full multiplicity).
  FlipSelection& keep(std::size_t index, int copies = kAllCopies);

  const std::map<std::size_t, int>& kept() const { return kept_; }
  // Copies of entry `index` kept given its multiplicity.
  int kept_copies(std::size_t index, int multiplicity) const;
  // Throws SelectionError for an unknown index or a bad copy count.
  void validate(const ZeroMultiset& zeros) const;

  friend bool operator==(const FlipSelection&, const FlipSelection&) = default;

 private:
  std::map<std::size_t, int> kept_;
};

// sigma_plus with supp(sigma) disjoint from its mirror image. Atoms at
// theta = 0 or pi, or at both theta and -theta, raise DomainError.
class OddSingularPerturbation {
 public:
  OddSingularPerturbation() = default;
  explicit OddSingularPerturbation(AtomicMeasure sigma_plus);

  const AtomicMeasure& sigma_plus() const { return sigma_; }
  bool empty() const { return sigma_.empty(); }
  // sigma - C sigma.
  SignedMeasure odd_part() const;

  friend bool operator==(const OddSingularPerturbation&, const OddSingularPerturbation&) = default;

 private:
  AtomicMeasure sigma_;
};

struct ExponentialModifier {
  double eta = 0.0;
  friend bool operator==(const ExponentialModifier&, const ExponentialModifier&) = default;
};

// u = O_{F*} / O_F.
struct StarQuotient {
  friend bool operator==(const StarQuotient&, const StarQuotient&) = default;
};

// log|u| on the theta grid; must satisfy L(-theta) = -L(theta).
struct OddBoundary {
  BoundaryLogModulus log_modulus;

  static OddBoundary from_function(const std::function<double(double)>& fn,
                                   std::size_t size = BoundaryLogModulus::kDefaultSize);
  friend bool operator==(const OddBoundary&, const OddBoundary&) = default;
};

using OuterModifier = std::variant<ExponentialModifier, StarQuotient, OddBoundary>;

inline constexpr double kOddnessTol = 1e-12;

// OddnessViolated if an odd_boundary array is not odd to 1e-12, InvalidModifier
// on a grid size mismatch.
void validate(const OuterModifier& u, std::size_t grid_size);
// The odd log-modulus L_u that `u` adds to f's outer samples. InvalidModifier
// for the exponential kind, which has no disc-side samples.
BoundaryLogModulus modifier_log_modulus(const DiscFactorization& f, const OuterModifier& u);

DiscFactorization flip_zeros(const DiscFactorization& f, const FlipSelection& sel);
// DominanceViolated names the first atom of sigma_plus not dominated by C nu_f.
DiscFactorization perturb_singular(const DiscFactorization& f, const OddSingularPerturbation& p);
DiscFactorization modify_outer(const DiscFactorization& f, const OuterModifier& u);

DiscFactorization disc_solution(const DiscFactorization& f, const FlipSelection& sel,
                                const OddSingularPerturbation& p,
                                const std::optional<OuterModifier>& u);

// g = c e^{i eta z} f, or c e^{i eta z} f* when `use_star`. NotUnimodular when ||c| - 1| > 1e-12.
StripFunction trivial_solutions(const StripFunction& f, Complex c, double eta, bool use_star);

// Flip / perturb / modify on the disc part; the exponential kind adds to eta.
// Corner masses are left unchanged.
StripFunction strip_solution(const StripFunction& f, const FlipSelection& sel,
                             const OddSingularPerturbation& p, const std::optional<OuterModifier>& u);

// e^{i gamma} B S_nu O with a signed singular measure.
struct UvFactor {
  double phase = 0.0;
  ZeroMultiset zeros;
  SignedMeasure singular;
  BoundaryLogModulus outer;

  Complex eval(Complex w) const;
  UvFactor star() const;
};

struct UvSplit {
  UvFactor u;
  UvFactor v;
};

// F = u v and G = u v*, with G = disc_solution(f, sel, p, mod).
UvSplit uv_split(const DiscFactorization& f, const FlipSelection& sel, const OddSingularPerturbation& p,
                 const std::optional<OuterModifier>& mod);

struct EnumerationOptions {
  // Flip selections are enumerated exhaustively while their number stays
  // within flip_cap, otherwise flip_cap of them are drawn at random.
  std::size_t flip_cap = std::size_t{1} << 20;
  std::size_t max_solutions = std::size_t{1} << 16;
  std::uint64_t seed = 0;
  Grid1D grid = default_real_grid();
  double tol = 1e-6;
  bool dedup = true;
};

struct Solution {
  StripFunction g;
  FlipSelection flip;
  int sigma_index = -1;  // -1: no perturbation
  int outer_index = -1;  // -1: no outer modifier
  VerificationReport report;
};

struct Enumeration {
  std::vector<Solution> solutions;
  std::size_t candidates = 0;  // before deduplication
};

// Number of distinct flip selections: prod (mult + 1) over non-real zeros,
// saturating at SIZE_MAX.
std::size_t flip_selection_count(const ZeroMultiset& zeros);

// Cartesian product of flips x ({none} + sigma_menu) x ({none} + outer_menu).
// BudgetExceeded when that product exceeds options.max_solutions.
Enumeration enumerate_solutions(const StripFunction& f, const EnumerationOptions& options,
                                const std::vector<OddSingularPerturbation>& sigma_menu,
                                const std::vector<OuterModifier>& outer_menu);

// Equal up to a unimodular constant: canonical comparison ignoring the phase,
// then a 16-point ratio test.
bool same_up_to_constant(const StripFunction& a, const StripFunction& b);

}  // namespace wbpr
