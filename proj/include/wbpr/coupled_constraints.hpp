#pragma once

// Phase retrieval with extra constraints: a fixed reference signal h, a
// derivation operator D (d/dx, shift difference, dilation difference), and
// modulus agreement on a tilted segment through the strip.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wbpr/hardy_core.hpp"
#include "wbpr/strip_transfer.hpp"
#include "wbpr/verify_harness.hpp"

namespace wbpr {

// ---------------------------------------------------------------------------
// Fixed reference

struct ReferencePoint {
  Complex fx;
  Complex hx;
};

struct ReferenceSolutions {
  Complex same;       // g = f
  Complex reflected;  // g = conj(f) (h / |h|)^2
};

// ZeroReference when hx == 0.
ReferenceSolutions reference_solutions(const ReferencePoint& p);

// ---------------------------------------------------------------------------
// Derivations

struct Derivative {};
struct ShiftDifference {
  double b = 1.0;
};
struct DilationDifference {
  double q = 0.5;  // |q| < 1
};
using DerivationKind = std::variant<Derivative, ShiftDifference, DilationDifference>;

std::string describe(const DerivationKind& kind);

inline constexpr double kDerivativeStep = 1e-5;

// d/dx by a central difference with one Richardson step; the two differences
// evaluate f directly. DomainError for |q| >= 1.
Complex apply_derivation(const DerivationKind& kind, const Evaluator& f, double x);
Complex apply_derivation(const DerivationKind& kind, const StripFunction& f, double x);

// f*(z) = conj(f(conj z)).
Evaluator star_evaluator(const Evaluator& f);

enum class DichotomyBranch { beta_f, beta_f_star, periodic_f, periodic_f_star, inconsistent };
std::string to_string(DichotomyBranch b);

inline constexpr double kRatioVarianceTol = 1e-12;
inline constexpr double kPeriodicTol = 1e-8;
inline constexpr double kRatioFloor = 1e-12;

struct DichotomyResult {
  DichotomyBranch branch = DichotomyBranch::inconsistent;
  bool precondition = false;           // |g| = |f| on the grid
  std::optional<Complex> beta;         // beta branches
  std::vector<std::pair<double, Complex>> ratio;  // (x, r(x)) of the classifying ratio
  VerificationReport report;
};

// Classifies g against "g = beta f or g = beta f*" (and the periodic unimodular
// V for shift differences). The classification runs even when |g| != |f|; the
// precondition is reported alongside.
DichotomyResult check_derivation_dichotomy(const Evaluator& f, const Evaluator& g,
                                           const DerivationKind& kind, const std::vector<double>& grid);
DichotomyResult check_derivation_dichotomy(const StripFunction& f, const StripFunction& g,
                                           const DerivationKind& kind, const std::vector<double>& grid);

// ---------------------------------------------------------------------------
// Segment constraints

struct SegmentSpec {
  double a = 0.0;
  double theta = 1.0;  // in (0, pi)
  double half_length = 1.0;
  int samples = 129;

  // t_k = L (-1 + (2k + 1)/n): interior midpoints of the open segment.
  std::vector<Complex> points() const;
  void validate() const;
};

inline constexpr double kSegmentTol = 1e-8;

// Max relative modulus deviation on the segment; check "segment".
VerificationReport segment_agreement(const Evaluator& f, const Evaluator& g, const SegmentSpec& seg,
                                     double tol = kSegmentTol);
VerificationReport segment_agreement(const StripFunction& f, const StripFunction& g, const SegmentSpec& seg,
                                     double tol = kSegmentTol);

enum class UniquenessVerdict { unique, not_concluded, inconclusive };
std::string to_string(UniquenessVerdict v);

struct UniquenessResult {
  UniquenessVerdict verdict = UniquenessVerdict::not_concluded;
  std::optional<Complex> c;
  VerificationReport report;
};

// unique: moduli agree on the grid and the segment, and g = c f with |c| = 1.
// not_concluded: the moduli disagree somewhere. inconclusive: the moduli agree
// but g / f is not constant.
UniquenessResult conclude_uniqueness(const Evaluator& f, const Evaluator& g, const SegmentSpec& seg,
                                     const Grid1D& real_grid);
UniquenessResult conclude_uniqueness(const StripFunction& f, const StripFunction& g, const SegmentSpec& seg,
                                     const Grid1D& real_grid);

enum class OrbitVerdict { consistent_with_uniqueness, closure_fails, rational_angle_ambiguity };
std::string to_string(OrbitVerdict v);

struct OrbitReport {
  OrbitVerdict verdict = OrbitVerdict::consistent_with_uniqueness;
  std::vector<ZeroEntry> difference;  // symmetric difference of the zero multisets
  bool closed_under_conjugation = true;
  bool closed_under_reflection = true;
  bool closed_under_rotation = true;
};

inline constexpr double kOrbitTol = 1e-10;

// Zeros are plain complex points (no disc constraint). Reflection is across
// the line through `center` at angle theta; rotation is by 2 theta about it.
OrbitReport rotation_orbit_witness(const std::vector<ZeroEntry>& zf, const std::vector<ZeroEntry>& zg,
                                   double theta, int steps, double center = 0.0);
OrbitReport rotation_orbit_witness(const ZeroMultiset& zf, const ZeroMultiset& zg, double theta, int steps);

}  // namespace wbpr
