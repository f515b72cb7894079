#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "entropia/arith.hpp"
#include "entropia/entropy.hpp"

using namespace entropia;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kTol = 1e-12;

u64 pow_u64(u64 b, u64 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

u64 smallest_coprime_prime(const Factorization& f) {
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
    bool used = false;
    for (const auto& pp : f.prime_powers()) used |= pp.prime == p;
    if (!used) return p;
  }
  return 13;
}
}  // namespace

TEST_CASE("entropy: exact special values") {
  REQUIRE(entropy(factor(1)) == 0.0);
  for (u64 n : {2ull, 9ull, 32ull, 343ull, 1024ull}) REQUIRE(entropy(factor(n)) == 0.0);
  // squarefree: exactly log omega
  REQUIRE(entropy(factor(10)) == std::log(2.0));
  REQUIRE(entropy(factor(30)) == std::log(3.0));
  REQUIRE(entropy(factor(2310)) == std::log(5.0));
  // uniform non-trivial exponents: exactly log omega as well
  REQUIRE(entropy(factor(36)) == std::log(2.0));
}

TEST_CASE("entropy: reference values") {
  REQUIRE_THAT(entropy(factor(12)), WithinAbs(0.63651416829481281845, 1e-13));
  REQUIRE_THAT(entropy(factor(40)), WithinAbs(0.56233514461880835029, 1e-13));
  REQUIRE_THAT(entropy(factor(180)), WithinAbs(1.0549201679861441271, 1e-13));
  REQUIRE_THAT(entropy(factor(90)), WithinAbs(1.0397207708399179641, 1e-13));
  REQUIRE_THAT(entropy(factor(60)), WithinAbs(1.0397207708399179641, 1e-13));
  REQUIRE_THAT(entropy(factor(420)), WithinAbs(1.3321790402101222508, 1e-13));
}

TEST_CASE("entropy: two routes agree and the bound holds") {
  for (u64 n = 1; n <= 20000; ++n) {
    const auto f = factor(n);
    const double h1 = entropy(f);
    const double h2 = entropy_via_distribution(f);
    CAPTURE(n, h1, h2);
    REQUIRE(std::abs(h1 - h2) <= kTol);
    REQUIRE(h1 >= 0.0);
    if (!f.empty()) REQUIRE(h1 <= std::log(static_cast<double>(omega(f))) + kTol);
  }
}

TEST_CASE("entropy: invariant under perfect powers") {
  for (u64 n = 2; n <= 500; ++n) {
    const auto f = factor(n);
    for (u64 k = 2; k <= 4; ++k) {
      CAPTURE(n, k);
      REQUIRE(std::abs(entropy(power(f, k)) - entropy(f)) <= kTol);
    }
  }
}

TEST_CASE("ExponentDistribution and shannon_entropy") {
  const auto d = ExponentDistribution::from_factorization(factor(90));
  REQUIRE(d.weights() == std::vector<double>{0.25, 0.5, 0.25});
  REQUIRE_THAT(shannon_entropy(d), WithinAbs(1.0397207708399179641, 1e-13));

  const ExponentDistribution uniform(std::vector<double>(8, 0.125));
  REQUIRE_THAT(shannon_entropy(uniform), WithinAbs(std::log(8.0), 1e-14));

  // one-point distribution has entropy exactly +0.0
  const auto one = ExponentDistribution::from_factorization(factor(128));
  REQUIRE(shannon_entropy(one) == 0.0);
  REQUIRE(!std::signbit(shannon_entropy(one)));

  REQUIRE_THROWS_AS(ExponentDistribution({}), std::domain_error);
  REQUIRE_THROWS_AS(ExponentDistribution({0.5, 0.6}), std::domain_error);
  REQUIRE_THROWS_AS(ExponentDistribution({1.5, -0.5}), std::domain_error);
  REQUIRE_THROWS_AS(ExponentDistribution({0.5, 0.0, 0.5}), std::domain_error);
  REQUIRE_THROWS_AS(ExponentDistribution::from_factorization(factor(1)),
                    std::domain_error);
}

TEST_CASE("divergence: reference values and exactness") {
  REQUIRE_THAT(divergence(factor(100), factor(200)),
               WithinAbs(0.020410997260127564777, 1e-13));
  REQUIRE_THAT(divergence(factor(12), factor(18)),
               WithinAbs(0.23104906018664843647, 1e-13));
  REQUIRE_THAT(divergence(factor(12), factor(48)),
               WithinAbs(0.04872750339269381026, 1e-13));
  REQUIRE_THAT(divergence(factor(48), factor(12)),
               WithinAbs(0.043692120681965564328, 1e-13));
  // self-divergence is exactly zero, and proportional vectors too
  REQUIRE(divergence(factor(12), factor(12)) == 0.0);
  REQUIRE(divergence(factor(360), factor(360)) == 0.0);
}

TEST_CASE("divergence: Gibbs inequality on a dense sample") {
  std::vector<Factorization> fs;
  fs.reserve(301);
  for (u64 n = 0; n <= 300; ++n) fs.push_back(n < 2 ? Factorization{} : factor(n));
  for (u64 n = 2; n <= 300; ++n) {
    for (u64 m = 2; m <= 300; ++m) {
      if (fs[n].size() != fs[m].size() || fs[n].empty()) continue;
      CAPTURE(n, m);
      REQUIRE(divergence(fs[n], fs[m]) >= -kTol);
    }
  }
}

TEST_CASE("divergence: domain errors") {
  REQUIRE_THROWS_AS(divergence(factor(12), factor(30)), std::domain_error);
  REQUIRE_THROWS_WITH(divergence(factor(12), factor(30)),
                      Catch::Matchers::ContainsSubstring("omega mismatch"));
  REQUIRE_THROWS_AS(divergence(factor(1), factor(2)), std::domain_error);
  REQUIRE_THROWS_AS(divergence(factor(2), factor(1)), std::domain_error);
}

TEST_CASE("divergence: explicit pairing") {
  const auto n = factor(12), m = factor(18);
  const std::size_t id[] = {0, 1};
  const std::size_t swap[] = {1, 0};
  REQUIRE(divergence(n, m, id) == divergence(n, m));
  // 12 = 2^2*3, 18 = 2*3^2: the crossed pairing matches exponents exactly
  REQUIRE(divergence(n, m, swap) == 0.0);

  const std::size_t bad_long[] = {0, 1, 2};
  const std::size_t bad_dup[] = {0, 0};
  REQUIRE_THROWS_AS(divergence(n, m, bad_long), std::domain_error);
  REQUIRE_THROWS_AS(divergence(n, m, bad_dup), std::domain_error);
}

TEST_CASE("divergence_to_radical: route equalities") {
  REQUIRE_THAT(divergence_to_radical(factor(90)),
               WithinAbs(0.058891517828191727269, 1e-13));
  REQUIRE_THAT(divergence(factor(60), factor(30)),
               WithinAbs(0.058891517828191727269, 1e-13));
  // squarefree: exactly zero
  REQUIRE(divergence_to_radical(factor(30)) == 0.0);
  REQUIRE(divergence_to_radical(factor(97)) == 0.0);

  for (u64 n = 2; n <= 3000; ++n) {
    const auto f = factor(n);
    const double direct = divergence(f, radical(f));
    const double closed = divergence_to_radical(f);
    const double identity = std::log(static_cast<double>(omega(f))) - entropy(f);
    CAPTURE(n);
    REQUIRE(std::abs(direct - closed) <= kTol);
    REQUIRE(std::abs(identity - closed) <= kTol);
    REQUIRE(closed >= -kTol);
  }
  REQUIRE_THROWS_AS(divergence_to_radical(factor(1)), std::domain_error);
}

TEST_CASE("append_prime_power_entropy: closed form vs direct") {
  REQUIRE_THAT(append_prime_power_entropy(factor(15), 2),
               WithinAbs(1.0397207708399179641, 1e-13));  // H(60) via 15 * 2^2
  for (u64 n = 2; n <= 200; ++n) {
    const auto f = factor(n);
    const u64 p = smallest_coprime_prime(f);
    for (u64 a = 1; a <= 5; ++a) {
      const double closed = append_prime_power_entropy(f, a);
      const double direct = entropy(factor(n * pow_u64(p, a)));
      CAPTURE(n, p, a);
      REQUIRE(std::abs(closed - direct) <= kTol);
    }
  }
  REQUIRE_THROWS_AS(append_prime_power_entropy(factor(1), 2), std::domain_error);
  REQUIRE_THROWS_AS(append_prime_power_entropy(factor(6), 0), std::domain_error);
}

TEST_CASE("append_prime_power_entropy: decay ladder") {
  const auto f12 = factor(12);
  const double q10 = append_prime_power_entropy(f12, 10);
  const double q100 = append_prime_power_entropy(f12, 100);
  const double q1000 = append_prime_power_entropy(f12, 1000);
  const double q10000 = append_prime_power_entropy(f12, 10000);
  REQUIRE_THAT(q10, WithinAbs(0.6870920273799715469, 1e-13));
  REQUIRE_THAT(q100, WithinAbs(0.15023080415265492201, 1e-13));
  REQUIRE_THAT(q1000, WithinAbs(0.022274643053404182239, 1e-13));
  REQUIRE_THAT(q10000, WithinAbs(0.002923640578807898268, 1e-13));
  REQUIRE(q10 > q100);
  REQUIRE(q100 > q1000);
  REQUIRE(q1000 > q10000);
  REQUIRE(q10000 < 0.01);

  // symbolic route through an explicit huge prime power agrees
  for (u64 a : {10ull, 100ull, 1000ull, 10000ull}) {
    const auto big = multiply(f12, Factorization::from_prime_powers({{10007, a}}));
    REQUIRE(std::abs(entropy(big) - append_prime_power_entropy(f12, a)) <= kTol);
  }
}

TEST_CASE("coprime_gap: both closed forms match the direct gap") {
  REQUIRE_THAT(coprime_gap(factor(12), factor(35)),
               WithinAbs(0.0025176913553641229662, 1e-13));
  REQUIRE_THAT(coprime_gap_alt(factor(12), factor(35)),
               WithinAbs(0.0025176913553641229662, 1e-13));

  for (u64 m = 2; m <= 150; ++m) {
    for (u64 n = 2; n <= 150; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const auto fm = factor(m), fn = factor(n);
      const double direct = entropy(multiply(fm, fn)) - entropy(fm) - entropy(fn);
      const double eq = coprime_gap(fm, fn);
      const double eq_alt = coprime_gap_alt(fm, fn);
      CAPTURE(m, n);
      REQUIRE(std::abs(eq - direct) <= kTol);
      REQUIRE(std::abs(eq_alt - direct) <= kTol);
      REQUIRE(std::abs(eq - coprime_gap(fn, fm)) <= kTol);  // symmetric
    }
  }

  REQUIRE_THROWS_AS(coprime_gap(factor(12), factor(18)), std::domain_error);
  REQUIRE_THROWS_AS(coprime_gap(factor(1), factor(18)), std::domain_error);
  REQUIRE_THROWS_AS(coprime_gap_alt(factor(6), factor(10)), std::domain_error);
}

TEST_CASE("shift_divergence: closed form vs direct divergence") {
  REQUIRE_THAT(shift_divergence(factor(4), 1, 2),
               WithinAbs(0.056633012265132490967, 1e-13));
  REQUIRE_THAT(divergence(factor(12), factor(36)),
               WithinAbs(0.056633012265132490967, 1e-13));

  for (u64 n : {4ull, 9ull, 12ull, 30ull, 75ull, 128ull}) {
    const auto f = factor(n);
    const u64 p = smallest_coprime_prime(f);
    for (u64 a = 1; a <= 6; ++a) {
      for (u64 b = 1; b <= 6; ++b) {
        const double closed = shift_divergence(f, a, b);
        const double direct =
            divergence(factor(n * pow_u64(p, a)), factor(n * pow_u64(p, b)));
        CAPTURE(n, p, a, b);
        REQUIRE(std::abs(closed - direct) <= kTol);
        if (a == b) REQUIRE(closed == 0.0);
      }
    }
  }
  REQUIRE_THROWS_AS(shift_divergence(factor(1), 1, 2), std::domain_error);
  REQUIRE_THROWS_AS(shift_divergence(factor(6), 0, 2), std::domain_error);
  REQUIRE_THROWS_AS(shift_divergence(factor(6), 2, 0), std::domain_error);
}

TEST_CASE("robin_rhs") {
  REQUIRE_THAT(robin_rhs(3), WithinAbs(2.7829919572510664785, 1e-13));
  REQUIRE_THAT(robin_rhs(16), WithinAbs(1.3251854181422443191, 1e-13));
  REQUIRE_THAT(robin_rhs(1000000), WithinAbs(1.9854016901821693106, 1e-13));
  REQUIRE_THROWS_AS(robin_rhs(2), std::domain_error);
  REQUIRE_THROWS_AS(robin_rhs(0), std::domain_error);
}

TEST_CASE("kfree_entropy_bounds") {
  const auto b180 = kfree_entropy_bounds(factor(180), 3);
  REQUIRE_THAT(b180.lower, WithinAbs(0.7776612957621660033, 1e-13));
  REQUIRE(b180.upper == std::log(3.0));

  // squarefree at k = 2: bounds collapse onto H exactly
  const auto b30 = kfree_entropy_bounds(factor(30), 2);
  REQUIRE(b30.lower == std::log(3.0));
  REQUIRE(b30.upper == std::log(3.0));
  REQUIRE(entropy(factor(30)) == b30.lower);

  for (u64 n = 2; n <= 2000; ++n) {
    const auto f = factor(n);
    for (u64 k : {2ull, 3ull, 4ull}) {
      if (!is_k_free(f, k)) continue;
      const auto b = kfree_entropy_bounds(f, k);
      const double h = entropy(f);
      CAPTURE(n, k);
      REQUIRE(h >= b.lower - kTol);
      REQUIRE(h <= b.upper + kTol);
    }
  }

  REQUIRE_THROWS_AS(kfree_entropy_bounds(factor(8), 3), std::domain_error);
  REQUIRE_THROWS_AS(kfree_entropy_bounds(factor(6), 1), std::domain_error);
  REQUIRE_THROWS_AS(kfree_entropy_bounds(factor(1), 2), std::domain_error);
}

TEST_CASE("entropy_threshold") {
  REQUIRE_THAT(entropy_threshold(factor(12)), WithinAbs(1.5874010519681994748, 1e-13));
  // prime power p^k: H = 0, threshold = k exactly
  REQUIRE(entropy_threshold(factor(8)) == 3.0);
  REQUIRE(entropy_threshold(factor(1024)) == 10.0);
  // squarefree: threshold 1 up to rounding
  REQUIRE_THAT(entropy_threshold(factor(30)), WithinAbs(1.0, 1e-12));

  // identity: threshold = prod alpha_i^(alpha_i/Omega)
  for (u64 n = 2; n <= 1000; ++n) {
    const auto f = factor(n);
    const double O = static_cast<double>(big_omega(f));
    double prod = 1.0;
    for (const auto& pp : f.prime_powers())
      prod *= std::pow(static_cast<double>(pp.exponent),
                       static_cast<double>(pp.exponent) / O);
    CAPTURE(n);
    REQUIRE(std::abs(entropy_threshold(f) - prod) <= 1e-9);
  }
  REQUIRE_THROWS_AS(entropy_threshold(factor(1)), std::domain_error);
}

TEST_CASE("compare_exponent_growth: classification and consistency") {
  REQUIRE(compare_exponent_growth(factor(15), 2, 1) == EntropyOrder::le);
  REQUIRE(compare_exponent_growth(factor(8), 2, 1) == EntropyOrder::ge);
  REQUIRE(compare_exponent_growth(factor(12), 2, 1) == EntropyOrder::inconclusive);
  REQUIRE(compare_exponent_growth(factor(12), 5, 2) == EntropyOrder::le);
  REQUIRE(compare_exponent_growth(factor(40), 1, 1) == EntropyOrder::ge);

  // any conclusive verdict must match the actual entropy order
  for (u64 n = 2; n <= 400; ++n) {
    const auto f = factor(n);
    for (u64 b = 1; b <= 6; ++b) {
      for (u64 a = b; a <= 6; ++a) {
        const auto ord = compare_exponent_growth(f, a, b);
        if (ord == EntropyOrder::inconclusive) continue;
        const double ha = append_prime_power_entropy(f, a);
        const double hb = append_prime_power_entropy(f, b);
        CAPTURE(n, a, b);
        if (ord == EntropyOrder::le) REQUIRE(ha <= hb + kTol);
        if (ord == EntropyOrder::ge) REQUIRE(ha >= hb - kTol);
      }
    }
  }

  REQUIRE_THROWS_AS(compare_exponent_growth(factor(12), 1, 2), std::domain_error);
  REQUIRE_THROWS_AS(compare_exponent_growth(factor(12), 2, 0), std::domain_error);
  REQUIRE_THROWS_AS(compare_exponent_growth(factor(1), 2, 1), std::domain_error);
}
