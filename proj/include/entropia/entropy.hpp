#pragma once

// Entropy of the exponent distribution of a factored integer, and the
// Kullback-Leibler divergence between two such distributions. Everything is
// computed in natural log. Two formula routes are deliberately kept apart:
// the closed form over exponents and the literal Shannon sum over the
// normalized distribution; the test suite checks they agree.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entropia/arith.hpp"

namespace entropia {

/// Constant in the omega upper bound log log n - log log log n + log c1.
inline constexpr double robin_c1 = 1.38402;

/// Probability vector alpha_i / Omega(n) attached to a factorization.
class ExponentDistribution {
 public:
  explicit ExponentDistribution(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty())
      throw std::domain_error("ExponentDistribution: weight vector is empty");
    double sum = 0.0;
    for (double w : w_) {
      if (!(w > 0.0) || w > 1.0)
        throw std::domain_error("ExponentDistribution: weights must lie in (0, 1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::domain_error("ExponentDistribution: weights must sum to 1");
  }

  static ExponentDistribution from_exponents(std::span<const u64> e) {
    if (e.empty())
      throw std::domain_error("ExponentDistribution: exponent vector is empty");
    u64 total = 0;
    for (u64 x : e) total += x;
    std::vector<double> w;
    w.reserve(e.size());
    for (u64 x : e) w.push_back(static_cast<double>(x) / static_cast<double>(total));
    return ExponentDistribution(std::move(w));
  }

  static ExponentDistribution from_factorization(const Factorization& f) {
    const auto e = f.exponents();
    return from_exponents(e);
  }

  [[nodiscard]] const std::vector<double>& weights() const { return w_; }

 private:
  std::vector<double> w_;
};

/// -sum w_i log w_i. The degenerate one-point case normalizes -0.0 away.
[[nodiscard]] inline double shannon_entropy(const ExponentDistribution& d) {
  double h = 0.0;
  for (double w : d.weights()) h -= w * std::log(w);
  return h + 0.0;
}

namespace detail {

// sum alpha_i log alpha_i; exactly 0.0 on squarefree input.
[[nodiscard]] inline double exponent_log_sum(const Factorization& f) {
  double s = 0.0;
  for (const auto& pp : f.prime_powers())
    if (pp.exponent > 1)
      s += static_cast<double>(pp.exponent) * std::log(static_cast<double>(pp.exponent));
  return s;
}

// Closed-form entropy of an exponent vector: log O - (1/O) sum e_i log e_i.
[[nodiscard]] inline double entropy_exponents(std::span<const u64> e) {
  if (e.size() <= 1) return 0.0;
  u64 total = 0;
  double s = 0.0;
  for (u64 x : e) {
    total += x;
    if (x > 1) s += static_cast<double>(x) * std::log(static_cast<double>(x));
  }
  const double O = static_cast<double>(total);
  return std::log(O) - s / O;
}

// KL divergence of paired exponent vectors (same length >= 1):
// log(Ob/Oa) - (1/Oa) sum a_i log(b_i/a_i).
[[nodiscard]] inline double divergence_exponents(std::span<const u64> a,
                                                 std::span<const u64> b) {
  u64 ta = 0, tb = 0;
  for (u64 x : a) ta += x;
  for (u64 x : b) tb += x;
  const double Oa = static_cast<double>(ta), Ob = static_cast<double>(tb);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += static_cast<double>(a[i]) *
         std::log(static_cast<double>(b[i]) / static_cast<double>(a[i]));
  return std::log(Ob / Oa) - s / Oa;
}

}  // namespace detail

/// H(n) by the closed form log Omega - (1/Omega) sum alpha_i log alpha_i.
/// Exactly 0.0 for n = 1 and prime powers; exactly log omega on squarefree n.
[[nodiscard]] inline double entropy(const Factorization& f) {
  if (f.size() <= 1) return 0.0;
  u64 total = 0;
  for (const auto& pp : f.prime_powers()) total += pp.exponent;
  const double O = static_cast<double>(total);
  return std::log(O) - detail::exponent_log_sum(f) / O;
}

/// H(n) by the literal Shannon sum over the exponent distribution.
[[nodiscard]] inline double entropy_via_distribution(const Factorization& f) {
  if (f.empty()) return 0.0;
  return shannon_entropy(ExponentDistribution::from_factorization(f));
}

/// D(n || m) with blocks paired by ascending prime. Requires n, m >= 2 with
/// omega(n) = omega(m). Exactly 0.0 when the exponent vectors coincide.
[[nodiscard]] inline double divergence(const Factorization& n, const Factorization& m) {
  if (n.empty() || m.empty())
    throw std::domain_error("divergence: both arguments must be >= 2");
  if (n.size() != m.size())
    throw std::domain_error("divergence: omega mismatch (omega=" +
                            std::to_string(n.size()) + " vs omega=" +
                            std::to_string(m.size()) + ")");
  const auto a = n.exponents();
  const auto b = m.exponents();
  return detail::divergence_exponents(a, b);
}

/// D(n || m) under an explicit pairing: block i of n against block
/// pairing[i] of m. pairing must be a permutation of 0..omega-1.
[[nodiscard]] inline double divergence(const Factorization& n, const Factorization& m,
                                       std::span<const std::size_t> pairing) {
  if (n.empty() || m.empty())
    throw std::domain_error("divergence: both arguments must be >= 2");
  if (n.size() != m.size())
    throw std::domain_error("divergence: omega mismatch (omega=" +
                            std::to_string(n.size()) + " vs omega=" +
                            std::to_string(m.size()) + ")");
  if (pairing.size() != n.size())
    throw std::domain_error("divergence: pairing length must equal omega");
  std::vector<bool> seen(pairing.size(), false);
  for (std::size_t j : pairing) {
    if (j >= pairing.size() || seen[j])
      throw std::domain_error("divergence: pairing is not a permutation");
    seen[j] = true;
  }
  const auto a = n.exponents();
  const auto bm = m.exponents();
  std::vector<u64> b(bm.size());
  for (std::size_t i = 0; i < bm.size(); ++i) b[i] = bm[pairing[i]];
  return detail::divergence_exponents(a, b);
}

/// D(n || gamma(n)) by its own route log(omega/Omega) + (1/Omega) sum a log a.
/// Exactly 0.0 on squarefree input.
[[nodiscard]] inline double divergence_to_radical(const Factorization& f) {
  if (f.empty())
    throw std::domain_error("divergence_to_radical: argument must be >= 2");
  u64 total = 0;
  for (const auto& pp : f.prime_powers()) total += pp.exponent;
  const double O = static_cast<double>(total);
  const double w = static_cast<double>(f.size());
  return std::log(w / O) + detail::exponent_log_sum(f) / O;
}

/// H(n * p^alpha) for any prime p coprime to n, as a closed form in
/// Omega(n), H(n) and alpha (the value does not depend on p).
[[nodiscard]] inline double append_prime_power_entropy(const Factorization& f, u64 alpha) {
  if (f.empty())
    throw std::domain_error("append_prime_power_entropy: base must be >= 2");
  if (alpha == 0)
    throw std::domain_error("append_prime_power_entropy: alpha must be >= 1");
  u64 total = 0;
  for (const auto& pp : f.prime_powers()) total += pp.exponent;
  const double O = static_cast<double>(total);
  const double a = static_cast<double>(alpha);
  const double T = O + a;
  const double sa = alpha > 1 ? a * std::log(a) : 0.0;
  return O * entropy(f) / T + std::log(T) - (O * std::log(O) + sa) / T;
}

namespace detail {

inline void require_coprime(const Factorization& m, const Factorization& n,
                            const char* who) {
  const auto& x = m.prime_powers();
  const auto& y = n.prime_powers();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].prime < y[j].prime) {
      ++i;
    } else if (y[j].prime < x[i].prime) {
      ++j;
    } else {
      throw std::domain_error(std::string(who) + ": arguments share the prime " +
                              std::to_string(x[i].prime));
    }
  }
}

}  // namespace detail

/// Entropy gap H(mn) - H(m) - H(n) for coprime m, n >= 2, as a closed form
/// in the exponent log-sums.
[[nodiscard]] inline double coprime_gap(const Factorization& m, const Factorization& n) {
  if (m.empty() || n.empty())
    throw std::domain_error("coprime_gap: both arguments must be >= 2");
  detail::require_coprime(m, n, "coprime_gap");
  u64 tm = 0, tn = 0;
  for (const auto& pp : m.prime_powers()) tm += pp.exponent;
  for (const auto& pp : n.prime_powers()) tn += pp.exponent;
  const double Om = static_cast<double>(tm), On = static_cast<double>(tn);
  const double T = Om + On;
  const double A = detail::exponent_log_sum(n);
  const double B = detail::exponent_log_sum(m);
  return A * Om / (On * T) + B * On / (Om * T) - std::log(Om * On / T);
}

/// Same gap written in terms of H(m), H(n) rather than the raw log-sums.
[[nodiscard]] inline double coprime_gap_alt(const Factorization& m, const Factorization& n) {
  if (m.empty() || n.empty())
    throw std::domain_error("coprime_gap: both arguments must be >= 2");
  detail::require_coprime(m, n, "coprime_gap");
  u64 tm = 0, tn = 0;
  for (const auto& pp : m.prime_powers()) tm += pp.exponent;
  for (const auto& pp : n.prime_powers()) tn += pp.exponent;
  const double Om = static_cast<double>(tm), On = static_cast<double>(tn);
  const double T = Om + On;
  return (On * std::log(Om) + Om * std::log(On)) / T -
         (On * entropy(m) + Om * entropy(n)) / T - std::log(Om * On / T);
}

/// D(n p^alpha || n p^beta) for a prime p coprime to n, as a closed form in
/// Omega(n), H(n), alpha and beta.
[[nodiscard]] inline double shift_divergence(const Factorization& f, u64 alpha, u64 beta) {
  if (f.empty())
    throw std::domain_error("shift_divergence: base must be >= 2");
  if (alpha == 0 || beta == 0)
    throw std::domain_error("shift_divergence: exponents must be >= 1");
  u64 total = 0;
  for (const auto& pp : f.prime_powers()) total += pp.exponent;
  const double O = static_cast<double>(total);
  const double a = static_cast<double>(alpha), b = static_cast<double>(beta);
  const double Ha = append_prime_power_entropy(f, alpha);
  const double Hb = append_prime_power_entropy(f, beta);
  return Hb - Ha +
         (a - b) * O * (std::log(O) - entropy(f) - std::log(b)) / ((O + a) * (O + b));
}

/// Right side of the omega bound: log log n - log log log n + log c1, n >= 3.
[[nodiscard]] inline double robin_rhs(u64 n) {
  if (n < 3) throw std::domain_error("robin_rhs: n must be >= 3");
  const double ll = std::log(std::log(static_cast<double>(n)));
  return ll - std::log(ll) + std::log(robin_c1);
}

struct EntropyBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// For k-free n >= 2: log Omega - (omega/Omega)(k-1)log(k-1) <= H(n) <= log omega.
[[nodiscard]] inline EntropyBounds kfree_entropy_bounds(const Factorization& f, u64 k) {
  if (f.empty())
    throw std::domain_error("kfree_entropy_bounds: argument must be >= 2");
  if (!is_k_free(f, k))
    throw std::domain_error("kfree_entropy_bounds: argument is not k-free");
  u64 total = 0;
  for (const auto& pp : f.prime_powers()) total += pp.exponent;
  const double O = static_cast<double>(total);
  const double w = static_cast<double>(f.size());
  const double km1 = static_cast<double>(k - 1);
  const double slack = k == 2 ? 0.0 : (w / O) * km1 * std::log(km1);
  return {std::log(O) - slack, std::log(w)};
}

/// Break-even exponent t = Omega(n) e^{-H(n)} = prod alpha_i^(alpha_i/Omega):
/// raising a fresh prime to an exponent below t increases entropy, above t
/// decreases it.
[[nodiscard]] inline double entropy_threshold(const Factorization& f) {
  if (f.empty())
    throw std::domain_error("entropy_threshold: argument must be >= 2");
  u64 total = 0;
  for (const auto& pp : f.prime_powers()) total += pp.exponent;
  return static_cast<double>(total) * std::exp(-entropy(f));
}

enum class EntropyOrder { le, ge, inconclusive };

/// Predicted order of H(n p^alpha) vs H(n p^beta) for alpha >= beta >= 1 and
/// p coprime to n, from the threshold alone. The 1e-9 slack keeps boundary
/// cases (e.g. squarefree n, where t = 1 exactly) on the conclusive side.
[[nodiscard]] inline EntropyOrder compare_exponent_growth(const Factorization& f,
                                                          u64 alpha, u64 beta) {
  if (f.empty())
    throw std::domain_error("compare_exponent_growth: base must be >= 2");
  if (beta == 0 || alpha < beta)
    throw std::domain_error("compare_exponent_growth: requires alpha >= beta >= 1");
  const double t = entropy_threshold(f);
  constexpr double eps = 1e-9;
  if (static_cast<double>(beta) >= t - eps) return EntropyOrder::le;
  if (static_cast<double>(alpha) <= t + eps) return EntropyOrder::ge;
  return EntropyOrder::inconclusive;
}

}  // namespace entropia
