#include "wbpr/solution_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "wbpr/errors.hpp"

namespace wbpr {

namespace {

bool is_real_zero(Complex a) { return std::abs(a.imag()) <= kPointTol; }

std::string atom_name(const Atom& a) {
  std::ostringstream os;
  os.precision(17);
  os << "(theta=" << a.theta << ", mass=" << a.mass << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// FlipSelection

FlipSelection FlipSelection::keep_all(const ZeroMultiset& zeros) {
  FlipSelection sel;
  for (std::size_t i = 0; i < zeros.size(); ++i) sel.keep(i);
  return sel;
}

FlipSelection& FlipSelection::keep(std::size_t index, int copies) {
  if (copies < kAllCopies) throw SelectionError("negative copy count for zero " + std::to_string(index));
  kept_[index] = copies;
  return *this;
}

int FlipSelection::kept_copies(std::size_t index, int multiplicity) const {
  auto it = kept_.find(index);
  if (it == kept_.end()) return 0;
  return it->second == kAllCopies ? multiplicity : it->second;
}

void FlipSelection::validate(const ZeroMultiset& zeros) const {
  for (const auto& [index, copies] : kept_) {
    if (index >= zeros.size()) {
      throw SelectionError("selection index " + std::to_string(index) + " out of range (" +
                           std::to_string(zeros.size()) + " zero entries)");
    }
    if (copies != kAllCopies && (copies < 0 || copies > zeros.entries()[index].multiplicity)) {
      throw SelectionError("selection keeps " + std::to_string(copies) + " copies of zero " +
                           std::to_string(index) + " with multiplicity " +
                           std::to_string(zeros.entries()[index].multiplicity));
    }
  }
}

// ---------------------------------------------------------------------------
// OddSingularPerturbation

OddSingularPerturbation::OddSingularPerturbation(AtomicMeasure sigma_plus) : sigma_(std::move(sigma_plus)) {
  for (const auto& a : sigma_.atoms()) {
    if (std::abs(a.theta) <= kAngleTol || std::abs(a.theta) >= kPi - kAngleTol) {
      throw DomainError("sigma_plus atom " + atom_name(a) + " sits on the real axis");
    }
    if (sigma_.mass_at(-a.theta) != 0.0) {
      throw DomainError("sigma_plus has atoms at both theta and -theta near " + atom_name(a));
    }
  }
}

SignedMeasure OddSingularPerturbation::odd_part() const {
  return sigma_.as_signed() - sigma_.as_signed().conjugated();
}

// ---------------------------------------------------------------------------
// Outer modifiers

OddBoundary OddBoundary::from_function(const std::function<double(double)>& fn, std::size_t size) {
  return OddBoundary{BoundaryLogModulus::from_function(fn, size)};
}

void validate(const OuterModifier& u, std::size_t grid_size) {
  if (const auto* odd = std::get_if<OddBoundary>(&u)) {
    const auto& L = odd->log_modulus;
    if (L.size() != grid_size) {
      throw InvalidModifier("odd_boundary has " + std::to_string(L.size()) + " samples, grid has " +
                            std::to_string(grid_size));
    }
    for (std::size_t m = 0; m < L.size(); ++m) {
      const double err = std::abs(L[m] + L[reflect_index(m, L.size())]);
      if (err > kOddnessTol) {
        std::ostringstream os;
        os.precision(17);
        os << "odd_boundary: L(theta) + L(-theta) = " << err << " at theta = " << L.theta(m);
        throw OddnessViolated(os.str());
      }
    }
  } else if (const auto* e = std::get_if<ExponentialModifier>(&u)) {
    if (!std::isfinite(e->eta)) throw InvalidModifier("exponential modifier: eta must be finite");
  }
}

BoundaryLogModulus modifier_log_modulus(const DiscFactorization& f, const OuterModifier& u) {
  validate(u, f.outer.size());
  if (std::holds_alternative<ExponentialModifier>(u)) {
    throw InvalidModifier("the exponential modifier lives on the strip (StripFunction::eta)");
  }
  if (std::holds_alternative<StarQuotient>(u)) {
    return f.outer.reflected() + f.outer.scaled(-1.0);
  }
  return std::get<OddBoundary>(u).log_modulus;
}

// ---------------------------------------------------------------------------

DiscFactorization flip_zeros(const DiscFactorization& f, const FlipSelection& sel) {
  sel.validate(f.zeros);
  std::vector<ZeroEntry> zeros;
  for (std::size_t i = 0; i < f.zeros.size(); ++i) {
    const auto& e = f.zeros.entries()[i];
    if (is_real_zero(e.point)) {
      zeros.push_back(e);
      continue;
    }
    const int kept = sel.kept_copies(i, e.multiplicity);
    if (kept > 0) zeros.push_back({e.point, kept});
    if (e.multiplicity - kept > 0) zeros.push_back({std::conj(e.point), e.multiplicity - kept});
  }
  DiscFactorization g = f;
  g.zeros = ZeroMultiset(std::move(zeros));
  return g;
}

namespace {

void check_dominance(const AtomicMeasure& nu_f, const OddSingularPerturbation& p) {
  for (const auto& a : p.sigma_plus().atoms()) {
    const double available = nu_f.mass_at(-a.theta);
    if (a.mass > available * (1.0 + kMeasureConditionTol)) {
      std::ostringstream os;
      os.precision(17);
      os << "sigma_plus atom " << atom_name(a) << " exceeds the mirrored mass " << available
         << " of nu_f at theta = " << normalize_angle(-a.theta);
      throw DominanceViolated(os.str());
    }
  }
}

}  // namespace

DiscFactorization perturb_singular(const DiscFactorization& f, const OddSingularPerturbation& p) {
  if (p.empty()) return f;
  check_dominance(f.singular, p);
  const SignedMeasure nu_g = f.singular.as_signed() + p.odd_part();
  const double scale = std::max(1.0, f.singular.total_mass());
  DiscFactorization g = f;
  g.singular = AtomicMeasure::from_signed(nu_g, kMeasureConditionTol * scale);
  return g;
}

DiscFactorization modify_outer(const DiscFactorization& f, const OuterModifier& u) {
  const BoundaryLogModulus L = modifier_log_modulus(f, u);
  DiscFactorization g = f;
  if (std::holds_alternative<StarQuotient>(u)) {
    // Exact permutation instead of L_f + (L_f(-.) - L_f).
    g.outer = f.outer.reflected();
  } else {
    g.outer = f.outer + L;
  }
  return g;
}

DiscFactorization disc_solution(const DiscFactorization& f, const FlipSelection& sel,
                                const OddSingularPerturbation& p,
                                const std::optional<OuterModifier>& u) {
  DiscFactorization g = perturb_singular(flip_zeros(f, sel), p);
  if (u) g = modify_outer(g, *u);
  return g;
}

StripFunction trivial_solutions(const StripFunction& f, Complex c, double eta, bool use_star) {
  if (!(std::abs(std::abs(c) - 1.0) <= 1e-12)) {
    throw NotUnimodular("|c| = " + std::to_string(std::abs(c)) + " is not 1");
  }
  if (!std::isfinite(eta)) throw DomainError("eta must be finite");
  StripFunction g = use_star ? star(f) : f;
  g.disc.phase += std::arg(c);
  g.eta += eta;
  return g;
}

StripFunction strip_solution(const StripFunction& f, const FlipSelection& sel,
                             const OddSingularPerturbation& p, const std::optional<OuterModifier>& u) {
  StripFunction g = f;
  std::optional<OuterModifier> disc_mod;
  if (u) {
    if (const auto* e = std::get_if<ExponentialModifier>(&*u)) {
      validate(*u, f.disc.outer.size());
      g.eta += e->eta;
    } else {
      disc_mod = u;
    }
  }
  g.disc = disc_solution(f.disc, sel, p, disc_mod);
  return g;
}

// ---------------------------------------------------------------------------
// u v split

Complex UvFactor::eval(Complex w) const {
  return std::polar(1.0, phase) * eval_blaschke(zeros, w) * eval_singular_inner(singular, w) *
         eval_outer(outer, w);
}

UvFactor UvFactor::star() const {
  return UvFactor{-phase, zeros.conjugated(), singular.conjugated(), outer.reflected()};
}

UvSplit uv_split(const DiscFactorization& f, const FlipSelection& sel, const OddSingularPerturbation& p,
                 const std::optional<OuterModifier>& mod) {
  sel.validate(f.zeros);
  if (!p.empty()) check_dominance(f.singular, p);

  std::vector<ZeroEntry> kept, flipped;
  for (std::size_t i = 0; i < f.zeros.size(); ++i) {
    const auto& e = f.zeros.entries()[i];
    const int k = is_real_zero(e.point) ? e.multiplicity : sel.kept_copies(i, e.multiplicity);
    if (k > 0) kept.push_back({e.point, k});
    if (e.multiplicity - k > 0) flipped.push_back({e.point, e.multiplicity - k});
  }

  const std::size_t size = f.outer.size();
  BoundaryLogModulus half_u(size);
  if (mod) {
    if (std::holds_alternative<ExponentialModifier>(*mod)) {
      throw InvalidModifier("uv_split works on the disc; the exponential modifier has no disc form");
    }
    half_u = modifier_log_modulus(f, *mod).scaled(0.5);
  }

  const SignedMeasure half_odd = p.odd_part().scaled(0.5);
  UvSplit out;
  out.u.phase = f.phase;
  out.u.zeros = ZeroMultiset(std::move(kept));
  out.u.singular = f.singular.as_signed() + half_odd;
  out.u.outer = f.outer + half_u;
  out.v.phase = 0.0;
  out.v.zeros = ZeroMultiset(std::move(flipped));
  out.v.singular = half_odd.scaled(-1.0);
  out.v.outer = half_u.scaled(-1.0);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::size_t flip_selection_count(const ZeroMultiset& zeros) {
  std::size_t n = 1;
  for (const auto& e : zeros.entries()) {
    if (is_real_zero(e.point)) continue;
    const auto factor = static_cast<std::size_t>(e.multiplicity) + 1;
    if (n > std::numeric_limits<std::size_t>::max() / factor) return std::numeric_limits<std::size_t>::max();
    n *= factor;
  }
  return n;
}

namespace {

struct Slot {
  std::size_t index;
  int multiplicity;
};

std::vector<Slot> flippable(const ZeroMultiset& zeros) {
  std::vector<Slot> out;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (!is_real_zero(zeros.entries()[i].point)) out.push_back({i, zeros.entries()[i].multiplicity});
  }
  return out;
}

FlipSelection selection_from_counts(const ZeroMultiset& zeros, const std::vector<Slot>& slots,
                                    const std::vector<int>& counts) {
  FlipSelection sel;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (is_real_zero(zeros.entries()[i].point)) sel.keep(i);
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (counts[s] > 0) sel.keep(slots[s].index, counts[s]);
  }
  return sel;
}

std::vector<FlipSelection> flip_selections(const ZeroMultiset& zeros, const EnumerationOptions& opt) {
  const auto slots = flippable(zeros);
  const std::size_t total = flip_selection_count(zeros);
  std::vector<FlipSelection> out;
  std::vector<int> counts(slots.size());

  if (total <= opt.flip_cap) {
    // Mixed-radix counter over kept copies; all-kept (the identity) first.
    for (std::size_t s = 0; s < slots.size(); ++s) counts[s] = slots[s].multiplicity;
    for (std::size_t n = 0; n < total; ++n) {
      out.push_back(selection_from_counts(zeros, slots, counts));
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (counts[s] > 0) {
          --counts[s];
          break;
        }
        counts[s] = slots[s].multiplicity;
      }
    }
    return out;
  }

  std::mt19937_64 rng(opt.seed);
  std::set<std::vector<int>> seen;
  for (std::size_t s = 0; s < slots.size(); ++s) counts[s] = slots[s].multiplicity;
  seen.insert(counts);
  out.push_back(selection_from_counts(zeros, slots, counts));
  while (out.size() < opt.flip_cap) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      counts[s] = std::uniform_int_distribution<int>(0, slots[s].multiplicity)(rng);
    }
    if (seen.insert(counts).second) out.push_back(selection_from_counts(zeros, slots, counts));
  }
  return out;
}

std::vector<Complex> probe_points() {
  std::vector<Complex> pts;
  for (int k = 0; k < 16; ++k) pts.emplace_back(-3.0 + 6.0 * k / 15.0, 0.25 * (k % 3 - 1));
  return pts;
}

std::vector<Complex> probe_values(const StripFunction& g) {
  std::vector<Complex> out;
  for (const auto& z : probe_points()) out.push_back(eval_strip(g, z));
  return out;
}

bool canonical_equal_ignoring_phase(const StripFunction& a, const StripFunction& b) {
  return a.corner_plus == b.corner_plus && a.corner_minus == b.corner_minus && a.scale == b.scale &&
         a.eta == b.eta && a.disc.zeros.canonical() == b.disc.zeros.canonical() &&
         a.disc.singular == b.disc.singular && a.disc.outer == b.disc.outer;
}

bool constant_ratio(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> r;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(b[k]) < 1e-300 || std::abs(a[k]) < 1e-300) {
      if (std::abs(a[k]) < 1e-300 && std::abs(b[k]) < 1e-300) continue;
      return false;
    }
    r.push_back(a[k] / b[k]);
  }
  if (r.empty()) return true;
  Complex mean(0.0, 0.0);
  for (const auto& x : r) mean += x;
  mean /= static_cast<double>(r.size());
  double var = 0.0;
  for (const auto& x : r) var += std::norm(x - mean);
  var /= static_cast<double>(r.size());
  return var / std::norm(mean) < 1e-16;
}

}  // namespace

bool same_up_to_constant(const StripFunction& a, const StripFunction& b) {
  if (canonical_equal_ignoring_phase(a, b)) return true;
  return constant_ratio(probe_values(a), probe_values(b));
}

Enumeration enumerate_solutions(const StripFunction& f, const EnumerationOptions& options,
                                const std::vector<OddSingularPerturbation>& sigma_menu,
                                const std::vector<OuterModifier>& outer_menu) {
  validate(f);
  if (options.flip_cap == 0) throw DomainError("flip_cap must be positive");

  const std::size_t total_flips = flip_selection_count(f.disc.zeros);
  const std::size_t n_flips = std::min(total_flips, options.flip_cap);
  const std::size_t n_sigma = sigma_menu.size() + 1;
  const std::size_t n_outer = outer_menu.size() + 1;
  const std::size_t limit = options.max_solutions;
  if (n_flips > limit || n_sigma > limit / n_flips || n_outer > limit / (n_flips * n_sigma)) {
    throw BudgetExceeded("enumeration needs " + std::to_string(n_flips) + " x " + std::to_string(n_sigma) +
                         " x " + std::to_string(n_outer) + " candidates, budget is " + std::to_string(limit));
  }
  for (const auto& u : outer_menu) validate(u, f.disc.outer.size());

  Enumeration result;
  std::vector<std::vector<Complex>> probes;
  for (const auto& sel : flip_selections(f.disc.zeros, options)) {
    for (int si = -1; si < static_cast<int>(sigma_menu.size()); ++si) {
      const OddSingularPerturbation p = si < 0 ? OddSingularPerturbation{} : sigma_menu[si];
      for (int ui = -1; ui < static_cast<int>(outer_menu.size()); ++ui) {
        const std::optional<OuterModifier> u =
            ui < 0 ? std::nullopt : std::optional<OuterModifier>(outer_menu[ui]);
        ++result.candidates;
        Solution s{strip_solution(f, sel, p, u), sel, si, ui, {}};

        if (options.dedup) {
          auto values = probe_values(s.g);
          bool duplicate = false;
          for (std::size_t k = 0; k < result.solutions.size() && !duplicate; ++k) {
            duplicate = canonical_equal_ignoring_phase(result.solutions[k].g, s.g) ||
                        constant_ratio(probes[k], values);
          }
          if (duplicate) continue;
          probes.push_back(std::move(values));
        }

        s.report = compare_modulus(evaluator(f), evaluator(s.g), options.grid, options.tol);
        s.report.merge(check_lemma_conditions(f, s.g), "lemma.");
        result.solutions.push_back(std::move(s));
      }
    }
  }
  return result;
}

}  // namespace wbpr
