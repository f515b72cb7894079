#pragma once

// Brute-force verification harness: every claim handled by this library is a
// named property scanned exhaustively over a configurable range, with assert
// and survey modes and deterministic counterexample reporting.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entropia/arith.hpp"
#include "entropia/entropy.hpp"
#include "entropia/quad.hpp"

namespace entropia {

enum class ScanMode { assert_mode, survey };

enum class Verdict { holds_on_range, violated, surveyed };

[[nodiscard]] inline const char* to_string(ScanMode m) {
  return m == ScanMode::assert_mode ? "assert" : "survey";
}

[[nodiscard]] inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds_on_range: return "holds-on-range";
    case Verdict::violated: return "violated";
    case Verdict::surveyed: return "surveyed";
  }
  return "unknown";
}

struct PropertyId {
  std::string id;
  std::string claim;
  ScanMode mode_default = ScanMode::assert_mode;
};

/// Scan bounds. Zero / empty fields fall back to per-property defaults, so a
/// default-constructed config runs every property at its documented range.
struct ScanConfig {
  u64 max_n = 0;
  u64 prime_limit = 0;
  u64 k_max = 0;
  u64 alpha_max = 0;
  std::vector<long long> fields;  // quadratic-field d values
  double tolerance = 1e-12;
  std::optional<ScanMode> mode;   // unset: the property's default mode
  unsigned jobs = 1;
  std::size_t violation_cap = 100;
};

struct Violation {
  std::vector<std::string> inputs;  // "n=180", "d=30", ...
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // negative beyond tolerance <=> violation
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ScanReport {
  std::string property;
  Verdict verdict = Verdict::holds_on_range;
  u64 tested = 0;
  std::vector<Violation> violations;  // global instance order, capped
  double elapsed_ms = 0.0;
};

namespace detail {

using Sink = std::vector<Violation>;

/// One compiled property: a flat instance space plus a pure per-index check.
/// Workers evaluate disjoint index chunks, so eval must be side-effect-free.
struct PropertyCheck {
  u64 count = 0;
  std::function<void(u64, Sink&)> eval;
};

[[nodiscard]] inline u64 pick(u64 v, u64 def) { return v ? v : def; }

[[nodiscard]] inline std::string kv(const char* k, u64 v) {
  return std::string(k) + "=" + std::to_string(v);
}

[[nodiscard]] inline std::string kv(const char* k, long long v) {
  return std::string(k) + "=" + std::to_string(v);
}

[[nodiscard]] inline std::string kv(const char* k, const std::string& v) {
  return std::string(k) + "=" + v;
}

[[nodiscard]] inline std::vector<u64> primes_below(u64 limit) {
  std::vector<u64> out;
  if (limit <= 2) return out;
  std::vector<bool> composite(limit, false);
  for (u64 i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

[[nodiscard]] inline std::vector<long long> pick_fields(
    const std::vector<long long>& v, std::initializer_list<long long> def) {
  return v.empty() ? std::vector<long long>(def) : v;
}

/// All squarefree d with |d| <= bound, d not in {0, 1}, ascending.
[[nodiscard]] inline std::vector<long long> squarefree_d(long long bound) {
  std::vector<long long> out;
  for (long long d = -bound; d <= bound; ++d) {
    if (d == 0 || d == 1) continue;
    const u64 ad = d < 0 ? static_cast<u64>(-d) : static_cast<u64>(d);
    if (is_k_free(factor(ad), 2)) out.push_back(d);
  }
  return out;
}

[[nodiscard]] inline u64 smallest_coprime_prime(const Factorization& f) {
  for (u64 p = 2;; p = (p == 2 ? 3 : p + 2)) {
    if (!is_prime(p)) continue;
    bool divides = false;
    for (const auto& pp : f.prime_powers()) divides = divides || pp.prime == p;
    if (!divides) return p;
  }
}

/// Unordered pairs (i, j), 0 <= i < j < n, flattened in lexicographic order.
struct PairSpace {
  u64 n = 0;

  [[nodiscard]] u64 count() const { return n < 2 ? 0 : n * (n - 1) / 2; }

  // index of the first pair whose smaller element is i
  [[nodiscard]] u64 row_base(u64 i) const { return i * (2 * n - i - 1) / 2; }

  [[nodiscard]] std::pair<u64, u64> at(u64 t) const {
    const double nn = static_cast<double>(n);
    const double disc = (nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(t);
    u64 i = 0;
    if (disc > 0.0) {
      const double est = nn - 0.5 - std::sqrt(disc);
      if (est > 0.0) i = static_cast<u64>(est);
    }
    if (i >= n) i = n - 1;
    while (i + 1 < n && row_base(i + 1) <= t) ++i;
    while (i > 0 && row_base(i) > t) --i;
    return {i, i + 1 + (t - row_base(i))};
  }
};

[[nodiscard]] inline std::shared_ptr<std::vector<Factorization>> factor_table(u64 max_n) {
  auto table = std::make_shared<std::vector<Factorization>>();
  table->reserve(max_n + 1);
  table->push_back(Factorization{});  // index 0 unused
  for (u64 n = 1; n <= max_n; ++n) table->push_back(factor(n));
  return table;
}

// ---------------------------------------------------------------------------
// property builders
// ---------------------------------------------------------------------------

inline PropertyCheck p_entropy_bound(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 100000);
  const double tol = cfg.tolerance;
  return {N < 2 ? 0 : N - 1, [=](u64 i, Sink& out) {
            const u64 n = 2 + i;
            const Factorization f = factor(n);
            const double h = entropy(f);
            const double hi = std::log(static_cast<double>(omega(f)));
            const double margin = std::min(h, hi - h);
            if (margin < -tol) out.push_back({{kv("n", n)}, h, hi, margin});
          }};
}

inline PropertyCheck p_special_forms(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 10000);
  const double tol = cfg.tolerance;
  return {N < 2 ? 0 : N - 1, [=](u64 i, Sink& out) {
            const u64 n = 2 + i;
            const Factorization f = factor(n);
            const double h = entropy(f);
            if (omega(f) == 1) {
              if (std::abs(h) > tol)
                out.push_back({{kv("n", n), "form=prime-power"}, h, 0.0, -std::abs(h)});
            } else if (is_k_free(f, 2)) {
              const double lw = std::log(static_cast<double>(omega(f)));
              if (std::abs(h - lw) > tol)
                out.push_back({{kv("n", n), "form=squarefree"}, h, lw, -std::abs(h - lw)});
            }
          }};
}

inline PropertyCheck p_power_invariance(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 10000);
  const u64 A = pick(cfg.alpha_max, 4);
  const double tol = cfg.tolerance;
  if (N < 2 || A < 2) return {0, {}};
  const u64 per = A - 1;  // alpha = 2..A
  return {(N - 1) * per, [=](u64 i, Sink& out) {
            const u64 n = 2 + i / per;
            const u64 a = 2 + i % per;
            const Factorization f = factor(n);
            const double diff = entropy(power(f, a)) - entropy(f);
            if (std::abs(diff) > tol)
              out.push_back({{kv("n", n), kv("alpha", a)},
                             entropy(power(f, a)), entropy(f), -std::abs(diff)});
          }};
}

inline PropertyCheck p_entropy_routes(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 100000);
  const double tol = cfg.tolerance;
  return {N < 2 ? 0 : N - 1, [=](u64 i, Sink& out) {
            const u64 n = 2 + i;
            const Factorization f = factor(n);
            const double a = entropy(f);
            const double b = entropy_via_distribution(f);
            if (std::abs(a - b) > tol)
              out.push_back({{kv("n", n)}, a, b, -std::abs(a - b)});
          }};
}

inline PropertyCheck p_append_closed_form(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 2000);
  const u64 A = pick(cfg.alpha_max, 6);
  const double tol = cfg.tolerance;
  if (N < 2 || A < 1) return {0, {}};
  return {(N - 1) * A, [=](u64 i, Sink& out) {
            const u64 n = 2 + i / A;
            const u64 a = 1 + i % A;
            const Factorization f = factor(n);
            const u64 p = smallest_coprime_prime(f);
            const double closed = append_prime_power_entropy(f, a);
            const double direct =
                entropy(multiply(f, Factorization::from_prime_powers({{p, a}})));
            if (std::abs(closed - direct) > tol)
              out.push_back({{kv("n", n), kv("p", p), kv("alpha", a)},
                             closed, direct, -std::abs(closed - direct)});
          }};
}

inline PropertyCheck p_coprime_gap_forms(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 2000);
  const double tol = cfg.tolerance;
  if (N < 3) return {0, {}};
  const auto table = factor_table(N);
  const PairSpace pairs{N - 1};  // values 2..N
  return {pairs.count(), [=](u64 t, Sink& out) {
            const auto [i, j] = pairs.at(t);
            const u64 m = 2 + i, n = 2 + j;
            if (std::gcd(m, n) != 1) return;
            const Factorization& fm = (*table)[m];
            const Factorization& fn = (*table)[n];
            const double g1 = coprime_gap(fm, fn);
            const double g2 = coprime_gap_alt(fm, fn);
            const double direct =
                entropy(multiply(fm, fn)) - entropy(fm) - entropy(fn);
            const double spread =
                std::max(std::abs(g1 - g2), std::abs(g1 - direct));
            if (spread > tol)
              out.push_back({{kv("m", m), kv("n", n)}, g1, direct, -spread});
          }};
}

inline PropertyCheck p_gibbs(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 800);
  const double tol = cfg.tolerance;
  if (N < 2) return {0, {}};
  const auto table = factor_table(N);
  const u64 side = N - 1;
  return {side * side, [=](u64 t, Sink& out) {
            const u64 n = 2 + t / side;
            const u64 m = 2 + t % side;
            const Factorization& fn = (*table)[n];
            const Factorization& fm = (*table)[m];
            if (n == m || omega(fn) != omega(fm)) return;
            const double d = divergence(fn, fm);
            if (d < -tol) out.push_back({{kv("n", n), kv("m", m)}, d, 0.0, d});
          }};
}

inline PropertyCheck p_divergence_identity(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 1000);
  const double tol = cfg.tolerance;
  if (N < 2) return {0, {}};
  const auto table = factor_table(N);
  const u64 side = N - 1;
  return {side * side, [=](u64 t, Sink& out) {
            const u64 n = 2 + t / side;
            const u64 m = 2 + t % side;
            const Factorization& fn = (*table)[n];
            const Factorization& fm = (*table)[m];
            if (n == m || omega(fn) != omega(fm)) return;
            const double lhs = divergence(fn, fm);
            // D(n||m) = H(m) - H(n) + sum (b_i/Omega(m) - a_i/Omega(n)) log b_i
            const auto ea = fn.exponents();
            const auto eb = fm.exponents();
            const double on = static_cast<double>(big_omega(fn));
            const double om = static_cast<double>(big_omega(fm));
            double sum = 0.0;
            for (std::size_t k = 0; k < ea.size(); ++k)
              sum += (static_cast<double>(eb[k]) / om -
                      static_cast<double>(ea[k]) / on) *
                     std::log(static_cast<double>(eb[k]));
            const double rhs = entropy(fm) - entropy(fn) + sum;
            if (std::abs(lhs - rhs) > tol)
              out.push_back({{kv("n", n), kv("m", m)}, lhs, rhs, -std::abs(lhs - rhs)});
          }};
}

inline PropertyCheck p_shift_closed_form(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 500);
  const u64 A = pick(cfg.alpha_max, 6);
  const double tol = cfg.tolerance;
  if (N < 2 || A < 1) return {0, {}};
  const u64 per = A * A;
  return {(N - 1) * per, [=](u64 i, Sink& out) {
            const u64 n = 2 + i / per;
            const u64 a = 1 + (i % per) / A;
            const u64 b = 1 + (i % per) % A;
            const Factorization f = factor(n);
            const u64 p = smallest_coprime_prime(f);
            const Factorization pa = Factorization::from_prime_powers({{p, a}});
            const Factorization pb = Factorization::from_prime_powers({{p, b}});
            const double closed = shift_divergence(f, a, b);
            const double direct = divergence(multiply(f, pa), multiply(f, pb));
            if (std::abs(closed - direct) > tol)
              out.push_back({{kv("n", n), kv("p", p), kv("alpha", a), kv("beta", b)},
                             closed, direct, -std::abs(closed - direct)});
          }};
}

inline PropertyCheck p_radical_identity(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 10000);
  const double tol = cfg.tolerance;
  return {N < 2 ? 0 : N - 1, [=](u64 i, Sink& out) {
            const u64 n = 2 + i;
            const Factorization f = factor(n);
            const double a = divergence_to_radical(f);
            const double b = divergence(f, radical(f));
            const double c =
                std::log(static_cast<double>(omega(f))) - entropy(f);
            const double spread = std::max(std::abs(a - b), std::abs(a - c));
            if (spread > tol) out.push_back({{kv("n", n)}, a, c, -spread});
          }};
}

inline PropertyCheck p_edivisor_bound(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 5000);
  const double tol = cfg.tolerance;
  return {N < 2 ? 0 : N - 1, [=](u64 i, Sink& out) {
            const u64 n = 2 + i;
            const Factorization f = factor(n);
            for (const Factorization& d : exp_divisors(f)) {
              const double lhs = divergence(f, d);
              const double bound = std::log(static_cast<double>(big_omega(d)) /
                                            static_cast<double>(big_omega(f)));
              if (lhs - bound < -tol)
                out.push_back({{kv("n", n),
                                kv("d", static_cast<u64>(d.value()))},
                               lhs, bound, lhs - bound});
            }
          }};
}

inline PropertyCheck p_robin(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 1000000);
  const double tol = cfg.tolerance;
  return {N < 3 ? 0 : N - 2, [=](u64 i, Sink& out) {
            const u64 n = 3 + i;
            const Factorization f = factor(n);
            const double lhs = divergence_to_radical(f) + entropy(f);
            const double rhs = robin_rhs(n);
            if (rhs - lhs < -tol)
              out.push_back({{kv("n", n)}, lhs, rhs, rhs - lhs});
          }};
}

inline PropertyCheck p_decay(const ScanConfig& cfg) {
  const double tol = cfg.tolerance;
  constexpr u64 base_n = 12, p = 10007;
  constexpr u64 ladder[] = {10, 100, 1000, 10000};
  constexpr double final_bound = 0.01;
  const auto tracked = [=](u64 alpha) {
    const Factorization fn = factor(base_n);
    const Factorization np =
        multiply(fn, Factorization::from_prime_powers({{p, alpha}}));
    const Factorization gp = multiply(radical(fn), factor(p));
    return std::log(static_cast<double>(omega(fn) + 1)) - divergence(np, gp);
  };
  return {std::size(ladder), [=](u64 i, Sink& out) {
            const u64 a = ladder[i];
            const double q = tracked(a);
            const double ref = append_prime_power_entropy(factor(base_n), a);
            if (std::abs(q - ref) > tol)
              out.push_back({{kv("n", base_n), kv("p", p), kv("alpha", a),
                              "check=identity"},
                             q, ref, -std::abs(q - ref)});
            if (i > 0) {
              const double prev = tracked(ladder[i - 1]);
              if (prev - q <= 0.0)
                out.push_back({{kv("n", base_n), kv("p", p), kv("alpha", a),
                                "check=decreasing"},
                               q, prev, prev - q});
            }
            if (i + 1 == std::size(ladder) && std::abs(q) >= final_bound)
              out.push_back({{kv("n", base_n), kv("p", p), kv("alpha", a),
                              "check=final-bound"},
                             std::abs(q), final_bound,
                             final_bound - std::abs(q)});
          }};
}

inline PropertyCheck p_pkq_strict(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 50);
  const u64 K = pick(cfg.k_max, 6);
  const std::vector<u64> pool = primes_below(L + 1);
  auto tuples = std::make_shared<std::vector<std::array<u64, 4>>>();
  for (u64 p : pool)
    for (std::size_t qi = 0; qi < pool.size(); ++qi)
      for (std::size_t ti = qi + 1; ti < pool.size(); ++ti) {
        if (pool[qi] == p || pool[ti] == p) continue;
        for (u64 k = 1; k <= K; ++k)
          tuples->push_back({p, pool[qi], pool[ti], k});
      }
  return {tuples->size(), [tuples](u64 i, Sink& out) {
            const auto [p, q, t, k] = (*tuples)[i];
            const Factorization pk = Factorization::from_prime_powers({{p, k}});
            const Factorization m = multiply(pk, factor(q));
            const Factorization n = multiply(pk, factor(t));
            const double lhs =
                divergence_to_radical(m) + divergence_to_radical(n);
            const double rhs = std::log(4.0 / 3.0) +
                               divergence_to_radical(multiply(m, n));
            // strict claim: margin must stay positive
            if (rhs - lhs <= 0.0)
              out.push_back({{kv("p", p), kv("q", q), kv("t", t), kv("k", k)},
                             lhs, rhs, rhs - lhs});
          }};
}

inline PropertyCheck p_coprime_k(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 30);
  const u64 K = pick(cfg.k_max, 6);
  const double tol = cfg.tolerance;
  const std::vector<u64> pool = primes_below(L + 1);
  auto tuples = std::make_shared<std::vector<std::array<u64, 5>>>();
  for (u64 p1 : pool)
    for (u64 p2 : pool) {
      if (p2 == p1) continue;
      for (u64 q1 : pool) {
        if (q1 == p1 || q1 == p2) continue;
        for (u64 q2 : pool) {
          if (q2 == p1 || q2 == p2 || q2 == q1) continue;
          if (std::make_pair(p1, p2) >= std::make_pair(q1, q2)) continue;
          for (u64 k = 1; k <= K; ++k) tuples->push_back({p1, p2, q1, q2, k});
        }
      }
    }
  return {tuples->size(), [tuples, tol](u64 i, Sink& out) {
            const auto [p1, p2, q1, q2, k] = (*tuples)[i];
            const Factorization m = multiply(
                Factorization::from_prime_powers({{p1, k}}), factor(p2));
            const Factorization n = multiply(
                Factorization::from_prime_powers({{q1, k}}), factor(q2));
            const double lhs =
                divergence_to_radical(m) + divergence_to_radical(n);
            const double rhs = divergence_to_radical(multiply(m, n));
            const double margin = lhs - rhs;
            const std::vector<std::string> in = {kv("p1", p1), kv("p2", p2),
                                                 kv("q1", q1), kv("q2", q2),
                                                 kv("k", k)};
            if (k == 1) {
              if (std::abs(margin) > tol) {
                auto tagged = in;
                tagged.push_back("check=equality");
                out.push_back({tagged, lhs, rhs, -std::abs(margin)});
              }
            } else if (margin < -tol) {
              out.push_back({in, lhs, rhs, margin});
            }
          }};
}

inline PropertyCheck p_thm_2_6(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 5000);
  const double tol = cfg.tolerance;
  auto vals = std::make_shared<std::vector<u64>>();
  auto facs = std::make_shared<std::vector<Factorization>>();
  auto dtrs = std::make_shared<std::vector<double>>();
  for (u64 n = 2; n <= N; ++n) {
    Factorization f = factor(n);
    const double d = divergence_to_radical(f);
    // hypothesis of the claim: D(n||gamma(n)) <= log(omega(n)/2)
    if (d <= std::log(static_cast<double>(omega(f)) / 2.0)) {
      vals->push_back(n);
      facs->push_back(std::move(f));
      dtrs->push_back(d);
    }
  }
  const PairSpace pairs{vals->size()};
  return {pairs.count(), [=](u64 t, Sink& out) {
            const auto [i, j] = pairs.at(t);
            if (std::gcd((*vals)[i], (*vals)[j]) != 1) return;
            const double lhs = (*dtrs)[i] + (*dtrs)[j];
            const double rhs =
                divergence_to_radical(multiply((*facs)[i], (*facs)[j]));
            if (rhs - lhs < -tol)
              out.push_back({{kv("m", (*vals)[i]), kv("n", (*vals)[j])},
                             lhs, rhs, rhs - lhs});
          }};
}

inline PropertyCheck p_kfree(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 10000);
  const u64 K = pick(cfg.k_max, 4);
  const double tol = cfg.tolerance;
  if (N < 2 || K < 2) return {0, {}};
  const u64 per = N - 1;
  return {(K - 1) * per, [=](u64 i, Sink& out) {
            const u64 k = 2 + i / per;
            const u64 n = 2 + i % per;
            const Factorization f = factor(n);
            if (!is_k_free(f, k)) return;
            const auto b = kfree_entropy_bounds(f, k);
            const double h = entropy(f);
            const double d = divergence_to_radical(f);
            const double lw = std::log(static_cast<double>(omega(f)));
            const double margin = std::min(std::min(h - b.lower, b.upper - h),
                                           std::min(d, (lw - b.lower) - d));
            if (margin < -tol)
              out.push_back({{kv("k", k), kv("n", n)}, h, b.upper, margin});
          }};
}

inline PropertyCheck p_monotone(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 2000);
  const u64 A = pick(cfg.alpha_max, 8);
  const double tol = cfg.tolerance;
  if (N < 2 || A < 1) return {0, {}};
  const u64 per = A * (A + 1) / 2;  // pairs 1 <= b <= a <= A
  return {(N - 1) * per, [=](u64 i, Sink& out) {
            const u64 n = 2 + i / per;
            u64 t = i % per, a = 1;
            while (t >= a) t -= a, ++a;
            const u64 b = 1 + t;
            const Factorization f = factor(n);
            const EntropyOrder v = compare_exponent_growth(f, a, b);
            if (v == EntropyOrder::inconclusive) return;
            const double ha = append_prime_power_entropy(f, a);
            const double hb = append_prime_power_entropy(f, b);
            const double margin = v == EntropyOrder::le ? hb - ha : ha - hb;
            if (margin < -tol)
              out.push_back(
                  {{kv("n", n), kv("alpha", a), kv("beta", b),
                    std::string("verdict=") + (v == EntropyOrder::le ? "le" : "ge")},
                   ha, hb, margin});
          }};
}

/// Shared survey core: entropy comparisons between an object and its proper
/// exponential divisors, reporting violations of both candidate directions.
struct SurveyInstance {
  std::vector<std::string> inputs;  // without the dir tag
  double h_whole = 0.0;
  double h_divisor = 0.0;
};

inline void survey_compare(const SurveyInstance& s, double tol, Sink& out) {
  auto in = s.inputs;
  if (s.h_divisor > s.h_whole + tol) {
    in.push_back("dir=stated");  // claimed H(d) <= H(n) fails
    out.push_back({in, s.h_divisor, s.h_whole, s.h_whole - s.h_divisor});
  } else if (s.h_whole > s.h_divisor + tol) {
    in.push_back("dir=reverse");  // claimed H(n) <= H(d) fails
    out.push_back({in, s.h_whole, s.h_divisor, s.h_divisor - s.h_whole});
  }
}

/// Prime-pool subsets of size >= 3 with exponents in {1, 2}, in
/// (size, subset, exponent-vector) lexicographic order.
template <typename Emit>
inline void for_each_survey_shape(u64 prime_limit, Emit emit) {
  const std::vector<u64> pool = primes_below(prime_limit + 1);
  for (std::size_t r = 3; r <= pool.size(); ++r) {
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    while (true) {
      std::vector<u64> primes(r);
      for (std::size_t i = 0; i < r; ++i) primes[i] = pool[idx[i]];
      for (u64 mask = 0; mask < (1ull << r); ++mask) {
        std::vector<u64> e(r);
        for (std::size_t i = 0; i < r; ++i)
          e[i] = (mask >> (r - 1 - i)) & 1 ? 2 : 1;
        emit(primes, e);
      }
      // next r-combination of the pool
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == pool.size() - r + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

inline PropertyCheck p_cor_4_2(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 7);
  const double tol = cfg.tolerance;
  auto instances = std::make_shared<std::vector<SurveyInstance>>();
  for_each_survey_shape(L, [&](const std::vector<u64>& primes,
                               const std::vector<u64>& e) {
    std::vector<PrimePower> pps;
    for (std::size_t i = 0; i < primes.size(); ++i)
      pps.push_back({primes[i], e[i]});
    const Factorization f = Factorization::from_prime_powers(pps);
    const double hn = entropy(f);
    const u64 nval = static_cast<u64>(f.value());
    for (const Factorization& d : exp_divisors(f)) {
      if (d == f) continue;
      instances->push_back({{kv("n", nval), kv("d", static_cast<u64>(d.value()))},
                            hn, entropy(d)});
    }
  });
  return {instances->size(), [instances, tol](u64 i, Sink& out) {
            survey_compare((*instances)[i], tol, out);
          }};
}

inline PropertyCheck p_ideal_cor_4_3(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 7);
  const double tol = cfg.tolerance;
  auto instances = std::make_shared<std::vector<SurveyInstance>>();
  for_each_survey_shape(L, [&](const std::vector<u64>& primes,
                               const std::vector<u64>& e) {
    std::vector<PrimeIdealLabel> labels;
    for (u64 p : primes) labels.push_back({p, 1});
    const IdealFactorization I =
        from_exponents(labels, e, std::vector<u64>(e.size(), 1));
    const double hI = ideal_entropy(I);
    const auto joined = [](const std::vector<u64>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    for (const IdealFactorization& d : ideal_exp_divisors(I)) {
      if (d == I) continue;
      instances->push_back({{kv("I", I.to_string()), kv("d", d.to_string()),
                             kv("e", joined(I.exponents())),
                             kv("de", joined(d.exponents()))},
                            hI, ideal_entropy(d)});
    }
  });
  return {instances->size(), [instances, tol](u64 i, Sink& out) {
            survey_compare((*instances)[i], tol, out);
          }};
}

inline PropertyCheck p_ideal_efg(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 10000);
  const std::vector<long long> ds =
      cfg.fields.empty() ? squarefree_d(50) : cfg.fields;
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  auto prs = std::make_shared<std::vector<u64>>(primes_below(L));
  const u64 np = prs->size();
  return {flds->size() * np, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / np];
            const u64 p = (*prs)[i % np];
            const RamificationData r = ramification(K, p);
            bool ok = r.e * r.f * r.g == 2;
            switch (r.kind) {
              case SplittingType::split: ok = ok && r.e == 1 && r.f == 1 && r.g == 2; break;
              case SplittingType::inert: ok = ok && r.e == 1 && r.f == 2 && r.g == 1; break;
              case SplittingType::ramified: ok = ok && r.e == 2 && r.f == 1 && r.g == 1; break;
            }
            if (!ok)
              out.push_back({{kv("d", K.d()), kv("p", p),
                              kv("kind", std::string(to_string(r.kind)))},
                             static_cast<double>(r.e * r.f * r.g), 2.0, -1.0});
          }};
}

inline PropertyCheck p_ideal_ramification_oracle(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 500);
  const std::vector<long long> ds =
      cfg.fields.empty() ? squarefree_d(30) : cfg.fields;
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  auto prs = std::make_shared<std::vector<u64>>();
  for (u64 p : primes_below(L))
    if (p % 2 == 1) prs->push_back(p);
  const u64 np = prs->size();
  return {flds->size() * np, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / np];
            const u64 p = (*prs)[i % np];
            const long long d = K.d();
            const long long sp = static_cast<long long>(p);
            const u64 dm = static_cast<u64>(((d % sp) + sp) % sp);
            int roots = 0;
            for (u64 x = 0; x < p; ++x)
              if (x * x % p == dm) ++roots;
            const SplittingType kind = ramification(K, p).kind;
            const SplittingType expect =
                roots == 2 ? SplittingType::split
                           : (roots == 0 ? SplittingType::inert
                                         : SplittingType::ramified);
            if (kind != expect)
              out.push_back({{kv("d", d), kv("p", p),
                              kv("roots", static_cast<u64>(roots))},
                             static_cast<double>(roots), 0.0, -1.0});
          }};
}

inline PropertyCheck p_ideal_bound(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 5000);
  const std::vector<long long> ds = pick_fields(cfg.fields, {-1, -19, 2, 5, -5});
  const double tol = cfg.tolerance;
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  if (N < 2) return {0, {}};
  const u64 per = N - 1;
  return {flds->size() * per, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / per];
            const u64 m = 2 + i % per;
            const IdealFactorization I = factor_principal(K, m);
            const double h = ideal_entropy(I);
            const double lw = std::log(static_cast<double>(omega(I)));
            const double routes = std::abs(h - ideal_entropy_via_distribution(I));
            const double margin = std::min(std::min(h, lw - h), -routes);
            if (margin < -tol)
              out.push_back({{kv("d", K.d()), kv("m", m)}, h, lw, margin});
          }};
}

inline PropertyCheck p_ideal_galois_entropy(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 1000);
  const std::vector<long long> ds = pick_fields(cfg.fields, {-1, -19, 5});
  const double tol = cfg.tolerance;
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  auto prs = std::make_shared<std::vector<u64>>(primes_below(L));
  const u64 np = prs->size();
  return {flds->size() * np, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / np];
            const u64 p = (*prs)[i % np];
            const IdealFactorization I = factor_prime_ideal(K, p);
            const double h = ideal_entropy(I);
            const double lw = std::log(static_cast<double>(omega(I)));
            if (std::abs(h - lw) > tol)
              out.push_back({{kv("d", K.d()), kv("p", p)}, h, lw, -std::abs(h - lw)});
          }};
}

inline PropertyCheck p_ideal_galois_divergence(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 1000);
  const std::vector<long long> ds = pick_fields(cfg.fields, {-1, -19, 5});
  const double tol = cfg.tolerance;
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  auto prs = std::make_shared<std::vector<u64>>(primes_below(L));
  const u64 np = prs->size();
  return {flds->size() * np * np, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / (np * np)];
            const u64 p = (*prs)[(i / np) % np];
            const u64 q = (*prs)[i % np];
            if (p == q) return;
            const IdealFactorization I = factor_prime_ideal(K, p);
            const IdealFactorization J = factor_prime_ideal(K, q);
            if (omega(I) != omega(J)) return;
            const double dv = ideal_divergence(I, J);
            if (std::abs(dv) > tol)
              out.push_back({{kv("d", K.d()), kv("p", p), kv("q", q)},
                             dv, 0.0, -std::abs(dv)});
          }};
}

inline PropertyCheck p_ideal_equal_exponents(const ScanConfig& cfg) {
  const u64 E = pick(cfg.alpha_max, 4);
  const double tol = cfg.tolerance;
  auto tuples = std::make_shared<std::vector<std::vector<u64>>>();
  for (std::size_t r = 1; r <= 3; ++r) {
    std::vector<u64> e(r, 1);
    while (true) {
      tuples->push_back(e);
      std::size_t i = r;
      while (i > 0 && e[i - 1] == E) e[--i] = 1;
      if (i == 0) break;
      ++e[i - 1];
    }
  }
  return {tuples->size(), [tuples, tol](u64 i, Sink& out) {
            const std::vector<u64>& e = (*tuples)[i];
            const u64 pa[] = {2, 3, 5}, pb[] = {7, 11, 13};
            std::vector<PrimeIdealLabel> la, lb;
            for (std::size_t j = 0; j < e.size(); ++j) {
              la.push_back({pa[j], 1});
              lb.push_back({pb[j], 1});
            }
            const auto A = from_exponents(la, e, std::vector<u64>(e.size(), 1));
            const auto B = from_exponents(lb, e, std::vector<u64>(e.size(), 2));
            const double spread = std::max(std::abs(ideal_divergence(A, B)),
                                           std::abs(ideal_divergence(B, A)));
            if (spread > tol) {
              std::string es = "e=";
              for (std::size_t j = 0; j < e.size(); ++j)
                es += (j ? "," : "") + std::to_string(e[j]);
              out.push_back({{kv("r", static_cast<u64>(e.size())), es},
                             spread, 0.0, -spread});
            }
          }};
}

inline PropertyCheck p_ideal_inert_ramified_zero(const ScanConfig& cfg) {
  const u64 L = pick(cfg.prime_limit, 1000);
  const std::vector<long long> ds =
      cfg.fields.empty() ? squarefree_d(30) : cfg.fields;
  const double tol = cfg.tolerance;
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  auto prs = std::make_shared<std::vector<u64>>(primes_below(L));
  const u64 np = prs->size();
  return {flds->size() * np, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / np];
            const u64 p = (*prs)[i % np];
            if (ramification(K, p).kind == SplittingType::split) return;
            const double h = ideal_entropy(factor_prime_ideal(K, p));
            if (std::abs(h) > tol)
              out.push_back({{kv("d", K.d()), kv("p", p)}, h, 0.0, -std::abs(h)});
          }};
}

inline PropertyCheck p_ideal_div_entropy(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 5000);
  const std::vector<long long> ds = pick_fields(cfg.fields, {-1, -19, 2, 5, -5});
  const double tol = cfg.tolerance;
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  if (N < 2) return {0, {}};
  const u64 per = N - 1;
  return {flds->size() * per, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / per];
            const u64 m = 2 + i % per;
            const IdealFactorization I = factor_principal(K, m);
            const double lhs =
                ideal_divergence(I, ideal_radical(I)) + ideal_entropy(I);
            const double rhs = std::log(static_cast<double>(omega(I)));
            if (std::abs(lhs - rhs) > tol)
              out.push_back({{kv("d", K.d()), kv("m", m)}, lhs, rhs,
                             -std::abs(lhs - rhs)});
          }};
}

inline PropertyCheck p_ideal_tau_e(const ScanConfig& cfg) {
  const u64 N = pick(cfg.max_n, 5000);
  const std::vector<long long> ds = pick_fields(cfg.fields, {-1, -19, 2, 5, -5});
  auto flds = std::make_shared<std::vector<QuadraticField>>();
  for (long long d : ds) flds->push_back(make_field(d));
  if (N < 2) return {0, {}};
  const u64 per = N - 1;
  return {flds->size() * per, [=](u64 i, Sink& out) {
            const QuadraticField& K = (*flds)[i / per];
            const u64 m = 2 + i % per;
            const IdealFactorization I = factor_principal(K, m);
            const auto eds = ideal_exp_divisors(I);
            const bool ok = eds.size() == ideal_tau_e(I) &&
                            eds.front() == ideal_radical(I) && eds.back() == I;
            if (!ok)
              out.push_back({{kv("d", K.d()), kv("m", m)},
                             static_cast<double>(eds.size()),
                             static_cast<double>(ideal_tau_e(I)), -1.0});
          }};
}

struct PropertyEntry {
  PropertyId meta;
  PropertyCheck (*build)(const ScanConfig&);
};

inline const std::vector<PropertyEntry>& property_registry() {
  static const std::vector<PropertyEntry> reg = {
      {{"P-1.1-entropy-bound", "0 <= H(n) <= log omega(n) for n >= 2"},
       &p_entropy_bound},
      {{"P-1.2-special-forms",
        "H(p^k) = 0 and H(n) = log omega(n) for squarefree n"},
       &p_special_forms},
      {{"P-1.2-power-invariance", "H(n^a) = H(n) for a >= 2"},
       &p_power_invariance},
      {{"P-EQ-1.1-1.2",
        "closed-form entropy equals the exponent-distribution entropy"},
       &p_entropy_routes},
      {{"P-MS5-append",
        "closed form for H(n p^a), p coprime to n, matches direct evaluation"},
       &p_append_closed_form},
      {{"P-EQ-coprime-gap",
        "both closed forms of the coprime divergence gap match direct evaluation"},
       &p_coprime_gap_forms},
      {{"P-GIBBS", "D(n||m) >= 0 whenever omega(n) = omega(m)"}, &p_gibbs},
      {{"P-2.1-divergence-identity",
        "D(n||m) = H(m) - H(n) + sum (b_i/Omega(m) - a_i/Omega(n)) log b_i"},
       &p_divergence_identity},
      {{"P-R2.2-shift",
        "closed form for D(n p^a || n p^b) matches direct evaluation"},
       &p_shift_closed_form},
      {{"P-DIV2.1-radical-identity",
        "D(n||gamma(n)) = log omega(n) - H(n); all three routes agree"},
       &p_radical_identity},
      {{"P-DIV1-edivisor-bound",
        "D(n||d) >= log(Omega(d)/Omega(n)) for exponential divisors d of n"},
       &p_edivisor_bound},
      {{"P-2.2-robin",
        "D(n||gamma(n)) + H(n) <= loglog n - logloglog n + log c1 for n >= 3"},
       &p_robin},
      {{"P-2.3-decay",
        "log(omega(n)+1) - D(n p^a || gamma(n) p) decreases along a geometric "
        "exponent ladder and ends below 0.01"},
       &p_decay},
      {{"P-2.4-pkq",
        "for m = p^k q, n = p^k t: D(m||gamma(m)) + D(n||gamma(n)) < "
        "log(4/3) + D(mn||gamma(mn)), strictly"},
       &p_pkq_strict},
      {{"P-2.5-coprime-k",
        "for m = p1^k p2, n = q1^k q2: D(m||gamma(m)) + D(n||gamma(n)) >= "
        "D(mn||gamma(mn)), with equality exactly at k = 1"},
       &p_coprime_k},
      {{"P-THM-2.6",
        "survey: gcd(m,n) = 1 and D <= log(omega/2) on both sides claimed to "
        "imply D(m||gamma(m)) + D(n||gamma(n)) <= D(mn||gamma(mn)); the "
        "claim admits counterexamples (minimal: m=10, n=693)",
        ScanMode::survey},
       &p_thm_2_6},
      {{"P-KFREE",
        "k-free sandwich: log Omega - (omega/Omega)(k-1)log(k-1) <= H <= "
        "log omega, and the matching bounds for D(n||gamma(n))"},
       &p_kfree},
      {{"P-4.1-monotone",
        "threshold verdicts for H(n p^a) vs H(n p^b) agree with direct "
        "comparison"},
       &p_monotone},
      {{"P-COR-4.2",
        "survey: H(d) vs H(n) over proper exponential divisors d of n, "
        "exponents in {1,2}, omega(n) >= 3; both directions admit violations",
        ScanMode::survey},
       &p_cor_4_2},
      {{"P-IDEAL-efg", "e*f*g = 2 for p O_K in quadratic fields, with the "
                       "split/inert/ramified shape table"},
       &p_ideal_efg},
      {{"P-IDEAL-ramification-oracle",
        "ramification classification matches x^2 = d (mod p) root counting "
        "for odd p"},
       &p_ideal_ramification_oracle},
      {{"P-IDEAL-bound",
        "0 <= H(I) <= log omega(I) and both entropy routes agree on "
        "principal ideals"},
       &p_ideal_bound},
      {{"P-IDEAL-galois-H", "H(p O_K) = log omega(p O_K) in quadratic fields"},
       &p_ideal_galois_entropy},
      {{"P-IDEAL-galois-div",
        "D(p O_K || q O_K) = 0 whenever omega(p O_K) = omega(q O_K)"},
       &p_ideal_galois_divergence},
      {{"P-IDEAL-equal-exponents",
        "ideals with identical exponent vectors have zero divergence both ways"},
       &p_ideal_equal_exponents},
      {{"P-IDEAL-inert-ramified-zero",
        "H(p O_K) = 0 for inert and ramified primes"},
       &p_ideal_inert_ramified_zero},
      {{"P-R4.4-ideal-div-entropy",
        "D(I||gamma(I)) + H(I) = log omega(I) for principal ideals"},
       &p_ideal_div_entropy},
      {{"P-IDEAL-tau-e",
        "tau_e(I) equals the exponential-divisor enumeration length, which "
        "starts at gamma(I) and ends at I"},
       &p_ideal_tau_e},
      {{"P-IDEAL-cor-4.3",
        "survey: ideal-side analogue of P-COR-4.2 over abstract exponent "
        "vectors; the violation landscape coincides",
        ScanMode::survey},
       &p_ideal_cor_4_3},
  };
  return reg;
}

[[nodiscard]] inline const PropertyEntry& find_property(const std::string& id) {
  for (const auto& e : property_registry())
    if (e.meta.id == id) return e;
  throw std::domain_error("unknown property: " + id);
}

}  // namespace detail

[[nodiscard]] inline std::vector<PropertyId> list_properties() {
  std::vector<PropertyId> out;
  for (const auto& e : detail::property_registry()) out.push_back(e.meta);
  return out;
}

/// Exhaustive scan of one property. Deterministic: identical (id, cfg) inputs
/// produce identical reports (up to elapsed_ms) for any worker count, because
/// workers own contiguous index chunks merged in chunk order.
[[nodiscard]] inline ScanReport run_property(const std::string& id,
                                             const ScanConfig& cfg = {}) {
  const auto& entry = detail::find_property(id);
  if (!(cfg.tolerance > 0.0))
    throw std::domain_error("scan tolerance must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const detail::PropertyCheck check = entry.build(cfg);
  const std::size_t cap = std::max<std::size_t>(cfg.violation_cap, 1);
  const unsigned jobs =
      std::max<u64>(1, std::min<u64>(cfg.jobs ? cfg.jobs : 1, check.count ? check.count : 1));

  std::vector<detail::Sink> parts(jobs);
  auto worker = [&](unsigned w) {
    const u64 lo = check.count * w / jobs;
    const u64 hi = check.count * (w + 1) / jobs;
    for (u64 i = lo; i < hi; ++i) check.eval(i, parts[w]);
  };
  if (jobs == 1) {
    if (check.count > 0) worker(0);
  } else {
    std::vector<std::future<void>> futs;
    for (unsigned w = 0; w < jobs; ++w)
      futs.push_back(std::async(std::launch::async, worker, w));
    for (auto& f : futs) f.get();
  }

  ScanReport rep;
  rep.property = id;
  rep.tested = check.count;
  for (auto& part : parts)
    for (auto& v : part)
      if (rep.violations.size() < cap) rep.violations.push_back(std::move(v));
  const ScanMode mode = cfg.mode.value_or(entry.meta.mode_default);
  rep.verdict = mode == ScanMode::survey
                    ? Verdict::surveyed
                    : (rep.violations.empty() ? Verdict::holds_on_range
                                              : Verdict::violated);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

/// Survey-mode scan returning up to cap violations in deterministic order.
[[nodiscard]] inline std::vector<Violation> search_counterexamples(
    const std::string& id, ScanConfig cfg, std::size_t cap) {
  cfg.mode = ScanMode::survey;
  cfg.violation_cap = cap;
  return run_property(id, cfg).violations;
}

}  // namespace entropia
