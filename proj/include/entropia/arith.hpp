#pragma once

// Exact multiplicative arithmetic on 64-bit integers: deterministic primality,
// factorization into prime powers, and the divisor-level combinatorics
// (radical, tau, exponential divisors, k-free tests, Kronecker symbol) that
// the entropy layer is built on.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entropia {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

[[nodiscard]] inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

[[nodiscard]] inline u64 pow_mod(u64 a, u64 e, u64 m) {
  u64 r = m == 1 ? 0 : 1;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Primes below 10^4, used for trial division before rho kicks in.
inline const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    constexpr u64 limit = 10000;
    std::vector<bool> sieve(limit, true);
    std::vector<u64> out;
    for (u64 i = 2; i < limit; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j < limit; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

}  // namespace detail

// Deterministic Miller-Rabin; the witness set covers all 64-bit inputs.
[[nodiscard]] inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  const u64 d0 = n - 1;
  const int s = std::countr_zero(d0);
  const u64 d = d0 >> s;
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                1795265022ull}) {
    u64 x = detail::pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {

// Brent's variant of Pollard rho. Deterministic: fixed start, increasing c.
// Caller guarantees n is composite and has no factor <= 10^4.
[[nodiscard]] inline u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, d = 1, q = 1, ys = 0, x = 0;
    const u64 batch = 128;
    for (u64 r = 1; d == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && d == 1; k += batch) {
        ys = y;
        const u64 m = std::min(batch, r - k);
        for (u64 i = 0; i < m; ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
    }
    if (d == n) {
      do {
        ys = step(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

}  // namespace detail

/// One prime-power block p^e of a factorization.
struct PrimePower {
  u64 prime = 0;
  u64 exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class Factorization;

[[nodiscard]] Factorization factor(u64 n);
[[nodiscard]] Factorization multiply(const Factorization& a, const Factorization& b);
[[nodiscard]] Factorization power(const Factorization& f, u64 k);
[[nodiscard]] Factorization radical(const Factorization& f);
[[nodiscard]] std::vector<Factorization> exp_divisors(const Factorization& f);

/// Canonical factorization n = p1^a1 * ... * pr^ar with p1 < ... < pr and all
/// ai >= 1. The default-constructed object represents n = 1 (empty product).
/// Kept symbolic: the prime powers, not the product, are the state, so values
/// whose product would overflow 64 bits are still representable.
class Factorization {
 public:
  Factorization() = default;

  /// Validating constructor: rejects non-primes, zero exponents and repeated
  /// primes; sorts the blocks into canonical order.
  static Factorization from_prime_powers(std::vector<PrimePower> pps) {
    std::sort(pps.begin(), pps.end(),
              [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
    for (std::size_t i = 0; i < pps.size(); ++i) {
      if (pps[i].exponent == 0)
        throw std::domain_error("from_prime_powers: exponent must be >= 1");
      if (!is_prime(pps[i].prime))
        throw std::domain_error("from_prime_powers: " + std::to_string(pps[i].prime) +
                                " is not prime");
      if (i > 0 && pps[i].prime == pps[i - 1].prime)
        throw std::domain_error("from_prime_powers: repeated prime " +
                                std::to_string(pps[i].prime));
    }
    return Factorization(trusted_t{}, std::move(pps));
  }

  [[nodiscard]] const std::vector<PrimePower>& prime_powers() const { return pps_; }
  [[nodiscard]] bool empty() const { return pps_.empty(); }
  [[nodiscard]] std::size_t size() const { return pps_.size(); }

  [[nodiscard]] std::vector<u64> exponents() const {
    std::vector<u64> e;
    e.reserve(pps_.size());
    for (const auto& pp : pps_) e.push_back(pp.exponent);
    return e;
  }

  /// Reassembled integer value; throws std::overflow_error past 2^64 - 1.
  [[nodiscard]] u64 value() const {
    u128 acc = 1;
    constexpr u128 cap = ~u128{0} >> 64;  // 2^64 - 1
    for (const auto& pp : pps_) {
      for (u64 i = 0; i < pp.exponent; ++i) {
        acc *= pp.prime;
        if (acc > cap) throw std::overflow_error("Factorization::value: exceeds 64 bits");
      }
    }
    return static_cast<u64>(acc);
  }

  [[nodiscard]] std::string to_string() const {
    if (pps_.empty()) return "1";
    std::string s;
    for (const auto& pp : pps_) {
      if (!s.empty()) s += " * ";
      s += std::to_string(pp.prime);
      if (pp.exponent > 1) s += "^" + std::to_string(pp.exponent);
    }
    return s;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  struct trusted_t {};
  Factorization(trusted_t, std::vector<PrimePower> pps) : pps_(std::move(pps)) {}

  std::vector<PrimePower> pps_;

  friend Factorization factor(u64);
  friend Factorization multiply(const Factorization&, const Factorization&);
  friend Factorization power(const Factorization&, u64);
  friend Factorization radical(const Factorization&);
  friend std::vector<Factorization> exp_divisors(const Factorization&);
};

namespace detail {

inline void factor_hard(u64 n, std::vector<u64>& primes_out) {
  // n composite or prime, no factor <= 10^4
  if (is_prime(n)) {
    primes_out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_hard(d, primes_out);
  factor_hard(n / d, primes_out);
}

}  // namespace detail

/// Factor n >= 1 into canonical form. Trial division by primes below 10^4,
/// then Miller-Rabin plus Pollard-Brent for the cofactor. The reassembled
/// product is checked against n before returning.
[[nodiscard]] inline Factorization factor(u64 n) {
  if (n == 0) throw std::domain_error("factor: n must be >= 1");
  std::vector<PrimePower> pps;
  u64 r = n;
  for (u64 p : detail::small_primes()) {
    if (p * p > r) break;
    if (r % p != 0) continue;
    u64 e = 0;
    do {
      r /= p;
      ++e;
    } while (r % p == 0);
    pps.push_back({p, e});
  }
  if (r > 1) {
    if (is_prime(r)) {
      pps.push_back({r, 1});
    } else {
      std::vector<u64> hard;
      detail::factor_hard(r, hard);
      std::sort(hard.begin(), hard.end());
      for (std::size_t i = 0; i < hard.size();) {
        std::size_t j = i;
        while (j < hard.size() && hard[j] == hard[i]) ++j;
        pps.push_back({hard[i], j - i});
        i = j;
      }
      std::sort(pps.begin(), pps.end(), [](const PrimePower& x, const PrimePower& y) {
        return x.prime < y.prime;
      });
    }
  }
  u128 check = 1;
  for (const auto& pp : pps)
    for (u64 i = 0; i < pp.exponent; ++i) check *= pp.prime;
  if (check != n) throw std::logic_error("factor: product check failed");
  return Factorization(Factorization::trusted_t{}, std::move(pps));
}

/// Product of two factorizations (exponents add on shared primes).
[[nodiscard]] inline Factorization multiply(const Factorization& a, const Factorization& b) {
  std::vector<PrimePower> out;
  out.reserve(a.size() + b.size());
  const auto& x = a.prime_powers();
  const auto& y = b.prime_powers();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].prime < y[j].prime)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].prime < x[i].prime) {
      out.push_back(y[j++]);
    } else {
      out.push_back({x[i].prime, x[i].exponent + y[j].exponent});
      ++i, ++j;
    }
  }
  return Factorization(Factorization::trusted_t{}, std::move(out));
}

/// f^k as a factorization (k = 0 gives the empty product).
[[nodiscard]] inline Factorization power(const Factorization& f, u64 k) {
  if (k == 0) return Factorization{};
  std::vector<PrimePower> out = f.prime_powers();
  for (auto& pp : out) pp.exponent *= k;
  return Factorization(Factorization::trusted_t{}, std::move(out));
}

/// Omega(n): number of prime factors counted with multiplicity.
[[nodiscard]] inline u64 big_omega(const Factorization& f) {
  u64 s = 0;
  for (const auto& pp : f.prime_powers()) s += pp.exponent;
  return s;
}

/// omega(n): number of distinct prime factors.
[[nodiscard]] inline u64 omega(const Factorization& f) { return f.size(); }

/// Squarefree kernel gamma(n) = p1 * ... * pr.
[[nodiscard]] inline Factorization radical(const Factorization& f) {
  std::vector<PrimePower> out = f.prime_powers();
  for (auto& pp : out) pp.exponent = 1;
  return Factorization(Factorization::trusted_t{}, std::move(out));
}

/// tau(n): number of divisors.
[[nodiscard]] inline u64 tau(u64 n) {
  const Factorization f = factor(n);  // keep alive: range-for over a member
  u64 t = 1;
  for (const auto& pp : f.prime_powers()) t *= pp.exponent + 1;
  return t;
}

namespace detail {

// Divisors of x in ascending order (x is an exponent here, so small).
[[nodiscard]] inline std::vector<u64> divisors_of(u64 x) {
  std::vector<u64> low, high;
  for (u64 d = 1; d * d <= x; ++d) {
    if (x % d != 0) continue;
    low.push_back(d);
    if (d != x / d) high.push_back(x / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

// Saturating product for value-ordering exponential divisors whose product
// leaves the 128-bit range. Returns {product, saturated}.
[[nodiscard]] inline std::pair<u128, bool> value_saturating(const Factorization& f) {
  u128 acc = 1;
  constexpr u128 cap = ~u128{0};
  for (const auto& pp : f.prime_powers()) {
    for (u64 i = 0; i < pp.exponent; ++i) {
      if (acc > cap / pp.prime) return {cap, true};
      acc *= pp.prime;
    }
  }
  return {acc, false};
}

}  // namespace detail

/// Exponential divisors of n = prod pi^ai: every d = prod pi^bi with bi | ai.
/// Same prime support, ascending by numeric value. n = 1 has no divisor list
/// (only the count convention tau_e(1) = 1), so empty input is rejected.
[[nodiscard]] inline std::vector<Factorization> exp_divisors(const Factorization& f) {
  if (f.empty()) throw std::domain_error("exp_divisors: argument must be >= 2");
  std::vector<std::vector<u64>> choices;
  choices.reserve(f.size());
  for (const auto& pp : f.prime_powers()) choices.push_back(detail::divisors_of(pp.exponent));

  std::vector<Factorization> out;
  std::vector<std::size_t> pick(f.size(), 0);
  while (true) {
    std::vector<PrimePower> pps = f.prime_powers();
    for (std::size_t i = 0; i < pps.size(); ++i) pps[i].exponent = choices[i][pick[i]];
    out.push_back(Factorization(Factorization::trusted_t{}, std::move(pps)));
    std::size_t i = pick.size();
    while (i > 0 && ++pick[i - 1] == choices[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }

  std::sort(out.begin(), out.end(), [](const Factorization& a, const Factorization& b) {
    const auto [va, sa] = detail::value_saturating(a);
    const auto [vb, sb] = detail::value_saturating(b);
    if (sa != sb) return sb;                     // unsaturated sorts first
    if (!sa && va != vb) return va < vb;
    return a.exponents() < b.exponents();        // deterministic tiebreak
  });
  return out;
}

/// tau^(e)(n) = prod tau(ai): count of exponential divisors.
[[nodiscard]] inline u64 tau_e(const Factorization& f) {
  u64 t = 1;
  for (const auto& pp : f.prime_powers()) t *= tau(pp.exponent);
  return t;
}

/// True when no exponent reaches k (n is k-free). Requires k >= 2.
[[nodiscard]] inline bool is_k_free(const Factorization& f, u64 k) {
  if (k < 2) throw std::domain_error("is_k_free: k must be >= 2");
  for (const auto& pp : f.prime_powers())
    if (pp.exponent >= k) return false;
  return true;
}

/// Kronecker symbol (a|m) for m >= 1, fully multiplicative extension of the
/// Jacobi symbol to even lower arguments.
[[nodiscard]] inline int kronecker(long long a, u64 m) {
  if (m == 0) throw std::domain_error("kronecker: m must be >= 1");
  int result = 1;
  int twos = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    const int a8 = static_cast<int>(((a % 8) + 8) % 8);
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a|m), m odd.
  u64 x = static_cast<u64>(((static_cast<__int128>(a) % static_cast<__int128>(m)) +
                            static_cast<__int128>(m)) %
                           static_cast<__int128>(m));
  u64 b = m;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const u64 b8 = b & 7;
      if (b8 == 3 || b8 == 5) result = -result;
    }
    std::swap(x, b);
    if ((x & 3) == 3 && (b & 3) == 3) result = -result;
    x %= b;
  }
  return b == 1 ? result : 0;
}

}  // namespace entropia
