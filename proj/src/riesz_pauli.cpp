#include "wbpr/riesz_pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wbpr/errors.hpp"

namespace wbpr {

RieszSpec::RieszSpec(std::vector<double> alphas, std::vector<int> signs)
    : alphas_(std::move(alphas)), signs_(std::move(signs)) {
  if (alphas_.size() != signs_.size()) {
    throw DomainError("riesz spec: " + std::to_string(alphas_.size()) + " alphas but " +
                      std::to_string(signs_.size()) + " signs");
  }
  for (std::size_t j = 0; j < alphas_.size(); ++j) {
    if (alphas_[j] == 0.0 || !std::isfinite(alphas_[j])) {
      throw DomainError("riesz spec: alpha_" + std::to_string(j + 1) + " must be nonzero and finite");
    }
    if (signs_[j] != 1 && signs_[j] != -1) {
      throw DomainError("riesz spec: sign_" + std::to_string(j + 1) + " must be +1 or -1");
    }
  }
}

RieszSpec::RieszSpec(std::vector<double> alphas)
    : RieszSpec(alphas, std::vector<int>(alphas.size(), 1)) {}

std::vector<double> default_alpha(int n) {
  if (n < 1) throw DomainError("default_alpha: depth must be >= 1");
  std::vector<double> out;
  for (int j = 1; j <= n; ++j) out.push_back(std::exp(-2.0 * std::pow(3.0, j + 1)));
  return out;
}

std::vector<double> display_alpha(int n) {
  if (n < 1) throw DomainError("display_alpha: depth must be >= 1");
  std::vector<double> out;
  for (int j = 1; j <= n; ++j) out.push_back(std::pow(3.0, -j));
  return out;
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == '+') {
      out.push_back(1);
    } else if (c == '-') {
      out.push_back(-1);
    } else {
      throw ParseError(std::string("signs: unexpected character '") + c + "'");
    }
  }
  return out;
}

std::string format_signs(const std::vector<int>& signs) {
  std::string s;
  for (int e : signs) s += e > 0 ? '+' : '-';
  return s;
}

CoefficientTable::CoefficientTable(std::vector<std::pair<std::int64_t, double>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

double CoefficientTable::at(std::int64_t k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const auto& e, std::int64_t key) { return e.first < key; });
  return it != entries_.end() && it->first == k ? it->second : 0.0;
}

namespace {

std::int64_t pow3(int j) {
  std::int64_t p = 1;
  for (int i = 0; i < j; ++i) p *= 3;
  return p;
}

// Fractional part of m * x, keeping the rounding error of the product.
double frac_product(double m, double x) {
  const double p = m * x;
  const double err = std::fma(m, x, -p);
  return (p - std::nearbyint(p)) + err;
}

}  // namespace

std::vector<int> balanced_ternary_digits(std::int64_t k, int depth) {
  std::vector<int> digits;
  while (k != 0) {
    int r = static_cast<int>(((k % 3) + 3) % 3);
    if (r == 2) r = -1;
    digits.push_back(r);
    k = (k - r) / 3;
  }
  if (!digits.empty() && digits.front() != 0) return {};
  if (digits.empty()) return std::vector<int>(depth, 0);
  digits.erase(digits.begin());
  if (static_cast<int>(digits.size()) > depth) return {};
  digits.resize(depth, 0);
  return digits;
}

double modulus_product(const RieszSpec& spec, std::int64_t k) {
  const auto digits = balanced_ternary_digits(k, spec.depth());
  if (digits.empty() && spec.depth() > 0) return 0.0;
  if (spec.depth() == 0) return k == 0 ? 1.0 : 0.0;
  double m = 1.0;
  bool first = true;
  for (int j = 0; j < spec.depth(); ++j) {
    if (digits[j] == 0) continue;
    // Same operation sequence as the convolution: the first factor enters as 1 * c.
    m = first ? std::abs(spec.alphas()[j]) : m * std::abs(spec.alphas()[j]);
    first = false;
  }
  return m;
}

CoefficientTable riesz_coefficients(const RieszSpec& spec) {
  if (spec.depth() > kMaxRieszDepth) {
    throw DepthTooLarge("riesz depth " + std::to_string(spec.depth()) + " exceeds " +
                        std::to_string(kMaxRieszDepth));
  }
  std::map<std::int64_t, double> table{{0, 1.0}};
  for (int j = 1; j <= spec.depth(); ++j) {
    const std::int64_t step = pow3(j);
    const double c = spec.alphas()[j - 1] * spec.signs()[j - 1];
    std::map<std::int64_t, double> next;
    for (const auto& [k, a] : table) {
      next[k - step] += -a * c;
      next[k] += a;
      next[k + step] += a * c;
    }
    table = std::move(next);
  }
  std::vector<std::pair<std::int64_t, double>> entries(table.begin(), table.end());
  for (const auto& [k, a] : entries) {
    if (std::abs(a) != modulus_product(spec, k)) {
      throw std::logic_error("riesz coefficient modulus mismatch at k = " + std::to_string(k));
    }
  }
  return CoefficientTable(std::move(entries));
}

Complex eval_riesz(const RieszSpec& spec, double x) {
  Complex prod(1.0, 0.0);
  double m = 1.0;
  for (int n = 1; n <= spec.depth(); ++n) {
    m *= 3.0;
    const double s = std::sin(2.0 * kPi * frac_product(m, x));
    prod *= Complex(1.0, 2.0 * spec.signs()[n - 1] * spec.alphas()[n - 1] * s);
  }
  return prod;
}

Complex eval_coefficient_sum(const CoefficientTable& table, double x) {
  Complex s(0.0, 0.0);
  for (const auto& [k, a] : table.entries()) {
    s += a * std::polar(1.0, 2.0 * kPi * frac_product(static_cast<double>(k), x));
  }
  return s;
}

double decay_ratio(const CoefficientTable& table) {
  double worst = 0.0;
  for (const auto& [k, a] : table.entries()) {
    if (a == 0.0) continue;
    worst = std::max(worst, std::abs(a) / std::exp(-2.0 * std::abs(static_cast<double>(k))));
  }
  return worst;
}

SpectralEnvelope SpectralEnvelope::indicator() {
  SpectralEnvelope env;
  env.name = "indicator";
  env.time = [](double x) -> Complex {
    if (x == 0.0) return {1.0, 0.0};
    return std::polar(1.0, kPi * x) * (std::sin(kPi * x) / (kPi * x));
  };
  env.freq = [](double xi) { return xi >= 0.0 && xi < 1.0 ? 1.0 : 0.0; };
  return env;
}

WideBandSignal pauli_partner(const RieszSpec& spec, const SpectralEnvelope& env) {
  auto table = std::make_shared<const CoefficientTable>(riesz_coefficients(spec));
  WideBandSignal s;
  s.time = [spec, env](double x) { return eval_riesz(spec, x) * env.time(x); };
  s.freq = [table, env](double xi) -> Complex {
    const auto k0 = static_cast<std::int64_t>(std::floor(xi));
    double v = 0.0;
    for (std::int64_t k = k0 - 1; k <= k0; ++k) {
      const double e = env.freq(xi - static_cast<double>(k));
      if (e != 0.0) v += table->at(k) * e;
    }
    return {v, 0.0};
  };
  return s;
}

VerificationReport verify_pauli_pair(const RieszSpec& a, const RieszSpec& b, const SpectralEnvelope& env,
                                     const Grid1D& xgrid, const Grid1D& xigrid) {
  if (a.alphas() != b.alphas()) throw DomainError("verify_pauli_pair: specs must share their alphas");
  const WideBandSignal fa = pauli_partner(a, env);
  const WideBandSignal fb = pauli_partner(b, env);
  const bool same_signs = a.signs() == b.signs();

  VerificationReport report;
  report.metadata["signs_a"] = format_signs(a.signs());
  report.metadata["signs_b"] = format_signs(b.signs());
  report.metadata["envelope"] = env.name;

  auto time_a = [&](Complex z) { return fa.time(z.real()); };
  auto time_b = [&](Complex z) { return fb.time(z.real()); };
  VerificationReport t = compare_modulus(time_a, time_b, xgrid, kPauliModulusTol);
  t.checks.front().name = "time_modulus";
  report.merge(t, "time.");

  Check coeff{"coefficients", true, 0.0, {}, ""};
  const CoefficientTable ta = riesz_coefficients(a);
  const CoefficientTable tb = riesz_coefficients(b);
  if (ta.size() != tb.size()) {
    coeff.pass = false;
    coeff.detail = "tables have different supports";
  } else {
    for (std::size_t i = 0; i < ta.size(); ++i) {
      const auto& [ka, va] = ta.entries()[i];
      const auto& [kb, vb] = tb.entries()[i];
      const double diff = std::abs(std::abs(va) - std::abs(vb));
      if (ka != kb || std::abs(va) != std::abs(vb)) {
        coeff.pass = false;
        if (diff >= coeff.max_err) {
          coeff.max_err = diff;
          coeff.argmax = Complex(static_cast<double>(ka), 0.0);
        }
      }
    }
  }
  report.checks.push_back(coeff);

  auto freq_a = [&](Complex z) { return fa.freq(z.real()); };
  auto freq_b = [&](Complex z) { return fb.freq(z.real()); };
  VerificationReport f = compare_modulus(freq_a, freq_b, xigrid, kPauliModulusTol);
  f.checks.front().name = "spectral_modulus";
  report.merge(f, "freq.");

  Check ratio{"ratio", false, 0.0, {}, ""};
  std::vector<Complex> r;
  std::vector<double> xs;
  for (const auto& p : xgrid.points()) {
    if (std::abs(env.time(p.real())) < kEnvelopeFloor) continue;
    r.push_back(fa.time(p.real()) / fb.time(p.real()));
    xs.push_back(p.real());
  }
  if (r.empty()) {
    ratio.detail = "no grid point clears the envelope floor";
  } else {
    Complex mean(0.0, 0.0);
    for (const auto& v : r) mean += v;
    mean /= static_cast<double>(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double dev = std::abs(r[k] - mean) / std::abs(mean);
      if (dev > ratio.max_err) {
        ratio.max_err = dev;
        ratio.argmax = Complex(xs[k], 0.0);
      }
    }
    if (same_signs) {
      ratio.pass = ratio.max_err < kPauliModulusTol;
      ratio.detail = "equal signs: ratio must be constant";
    } else {
      ratio.pass = ratio.max_err >= kPauliRatioVariation;
      ratio.detail = "distinct signs: ratio must vary";
    }
  }
  report.checks.push_back(ratio);
  return report;
}

}  // namespace wbpr
