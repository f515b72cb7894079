#pragma once

// Ideal arithmetic in rings of integers of quadratic fields Q(sqrt(d)):
// ramification of rational primes, factorization of principal ideals, and the
// entropy/divergence/exponential-divisor theory carried over from integers.
// Prime ideals are abstract labels (p, conjugate_index); every quantity here
// depends only on the exponent shape of the decomposition, so no element
// arithmetic is needed. An abstract constructor covers decompositions that do
// not come from a quadratic field at all.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entropia/arith.hpp"
#include "entropia/entropy.hpp"

namespace entropia {

/// Q(sqrt(d)) for squarefree d != 0, 1, with its discriminant.
class QuadraticField {
 public:
  [[nodiscard]] long long d() const { return d_; }
  [[nodiscard]] long long discriminant() const { return disc_; }
  static constexpr int degree = 2;

  friend bool operator==(const QuadraticField&, const QuadraticField&) = default;

 private:
  QuadraticField(long long d, long long disc) : d_(d), disc_(disc) {}
  long long d_ = 0;
  long long disc_ = 0;

  friend QuadraticField make_field(long long);
};

[[nodiscard]] inline QuadraticField make_field(long long d) {
  if (d == 0 || d == 1)
    throw std::domain_error("make_field: d must differ from 0 and 1");
  const u64 ad = d < 0 ? ~static_cast<u64>(d) + 1 : static_cast<u64>(d);
  if (!is_k_free(factor(ad), 2))
    throw std::domain_error("make_field: d must be squarefree");
  const long long r4 = ((d % 4) + 4) % 4;
  if (r4 != 1 && (d > (1ll << 61) || d < -(1ll << 61)))
    throw std::domain_error("make_field: |d| too large for the discriminant");
  return QuadraticField(d, r4 == 1 ? d : 4 * d);
}

enum class SplittingType { split, inert, ramified };

[[nodiscard]] inline const char* to_string(SplittingType s) {
  switch (s) {
    case SplittingType::split: return "split";
    case SplittingType::inert: return "inert";
    default: return "ramified";
  }
}

/// (e, f, g) of a rational prime: split (1,1,2), inert (1,2,1), ramified (2,1,1).
struct RamificationData {
  SplittingType kind = SplittingType::split;
  u64 e = 1;
  u64 f = 1;
  u64 g = 1;
  friend bool operator==(const RamificationData&, const RamificationData&) = default;
};

[[nodiscard]] inline RamificationData ramification(const QuadraticField& K, u64 p) {
  if (!is_prime(p)) throw std::domain_error("ramification: p must be prime");
  SplittingType kind;
  if (p == 2) {
    const long long r8 = ((K.d() % 8) + 8) % 8;
    kind = r8 == 1   ? SplittingType::split
           : r8 == 5 ? SplittingType::inert
                     : SplittingType::ramified;
  } else {
    const int s = kronecker(K.discriminant(), p);
    kind = s == 1    ? SplittingType::split
           : s == -1 ? SplittingType::inert
                     : SplittingType::ramified;
  }
  switch (kind) {
    case SplittingType::split: return {kind, 1, 1, 2};
    case SplittingType::inert: return {kind, 1, 2, 1};
    default: return {kind, 2, 1, 1};
  }
}

/// Name of a prime ideal above p; conjugate 2 marks the second factor of a
/// split prime (no canonical choice — all quantities are swap-invariant).
struct PrimeIdealLabel {
  u64 p = 0;
  int conjugate = 1;
  friend auto operator<=>(const PrimeIdealLabel&, const PrimeIdealLabel&) = default;
};

[[nodiscard]] inline std::string to_string(const PrimeIdealLabel& l) {
  return (l.conjugate == 2 ? "P'(" : "P(") + std::to_string(l.p) + ")";
}

/// One block P^e of an ideal decomposition, with the residue degree f of P.
struct IdealFactor {
  PrimeIdealLabel label;
  u64 e = 1;
  u64 f = 1;
  friend bool operator==(const IdealFactor&, const IdealFactor&) = default;
};

class IdealFactorization;

[[nodiscard]] IdealFactorization factor_prime_ideal(const QuadraticField& K, u64 p);
[[nodiscard]] IdealFactorization factor_principal(const QuadraticField& K, u64 m);
[[nodiscard]] IdealFactorization from_exponents(std::vector<PrimeIdealLabel> labels,
                                                std::vector<u64> e, std::vector<u64> f);
[[nodiscard]] IdealFactorization ideal_radical(const IdealFactorization& I);
[[nodiscard]] std::vector<IdealFactorization> ideal_exp_divisors(const IdealFactorization& I);

/// Dedekind decomposition I = P1^e1 ... Pg^eg as an exponent vector over
/// labeled prime ideals, sorted by label. Carries the field it came from when
/// built by factor_*; abstract decompositions have no field context.
class IdealFactorization {
 public:
  IdealFactorization() = default;

  [[nodiscard]] const std::vector<IdealFactor>& factors() const { return fs_; }
  [[nodiscard]] const std::optional<QuadraticField>& field() const { return field_; }
  [[nodiscard]] bool empty() const { return fs_.empty(); }
  [[nodiscard]] std::size_t size() const { return fs_.size(); }

  [[nodiscard]] std::vector<u64> exponents() const {
    std::vector<u64> e;
    e.reserve(fs_.size());
    for (const auto& x : fs_) e.push_back(x.e);
    return e;
  }

  [[nodiscard]] std::string to_string() const {
    if (fs_.empty()) return "(1)";
    std::string s;
    for (const auto& x : fs_) {
      if (!s.empty()) s += " * ";
      s += entropia::to_string(x.label);
      if (x.e > 1) s += "^" + std::to_string(x.e);
    }
    return s;
  }

  friend bool operator==(const IdealFactorization&, const IdealFactorization&) = default;

 private:
  struct trusted_t {};
  IdealFactorization(trusted_t, std::optional<QuadraticField> field,
                     std::vector<IdealFactor> fs)
      : field_(std::move(field)), fs_(std::move(fs)) {}

  std::optional<QuadraticField> field_;
  std::vector<IdealFactor> fs_;

  friend IdealFactorization factor_prime_ideal(const QuadraticField&, u64);
  friend IdealFactorization factor_principal(const QuadraticField&, u64);
  friend IdealFactorization from_exponents(std::vector<PrimeIdealLabel>,
                                           std::vector<u64>, std::vector<u64>);
  friend IdealFactorization ideal_radical(const IdealFactorization&);
  friend std::vector<IdealFactorization> ideal_exp_divisors(const IdealFactorization&);
};

/// Omega(I) = sum of exponents.
[[nodiscard]] inline u64 big_omega(const IdealFactorization& I) {
  u64 s = 0;
  for (const auto& x : I.factors()) s += x.e;
  return s;
}

/// omega(I) = number of distinct prime ideal factors.
[[nodiscard]] inline u64 omega(const IdealFactorization& I) { return I.size(); }

/// Decomposition of pO_K per the ramification of p.
[[nodiscard]] inline IdealFactorization factor_prime_ideal(const QuadraticField& K, u64 p) {
  const RamificationData r = ramification(K, p);
  std::vector<IdealFactor> fs;
  switch (r.kind) {
    case SplittingType::split:
      fs = {{{p, 1}, 1, 1}, {{p, 2}, 1, 1}};
      break;
    case SplittingType::inert:
      fs = {{{p, 1}, 1, 2}};
      break;
    default:  // ramified
      fs = {{{p, 1}, 2, 1}};
      break;
  }
  return IdealFactorization(IdealFactorization::trusted_t{}, K, std::move(fs));
}

/// Decomposition of the principal ideal mO_K: factor m and expand each
/// rational prime block by its ramification.
[[nodiscard]] inline IdealFactorization factor_principal(const QuadraticField& K, u64 m) {
  if (m < 2) throw std::domain_error("factor_principal: m must be >= 2");
  std::vector<IdealFactor> fs;
  const Factorization fm = factor(m);  // keep alive: range-for over a member
  for (const auto& pp : fm.prime_powers()) {
    const RamificationData r = ramification(K, pp.prime);
    switch (r.kind) {
      case SplittingType::split:
        fs.push_back({{pp.prime, 1}, pp.exponent, 1});
        fs.push_back({{pp.prime, 2}, pp.exponent, 1});
        break;
      case SplittingType::inert:
        fs.push_back({{pp.prime, 1}, pp.exponent, 2});
        break;
      default:  // ramified
        fs.push_back({{pp.prime, 1}, 2 * pp.exponent, 1});
        break;
    }
  }
  return IdealFactorization(IdealFactorization::trusted_t{}, K, std::move(fs));
}

/// Abstract decomposition from parallel label/exponent/residue-degree lists.
[[nodiscard]] inline IdealFactorization from_exponents(std::vector<PrimeIdealLabel> labels,
                                                       std::vector<u64> e,
                                                       std::vector<u64> f) {
  if (labels.size() != e.size() || labels.size() != f.size())
    throw std::domain_error("from_exponents: list lengths differ");
  std::vector<IdealFactor> fs;
  fs.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (e[i] == 0) throw std::domain_error("from_exponents: exponents must be >= 1");
    if (f[i] == 0) throw std::domain_error("from_exponents: residue degrees must be >= 1");
    if (labels[i].conjugate != 1 && labels[i].conjugate != 2)
      throw std::domain_error("from_exponents: conjugate index must be 1 or 2");
    if (!is_prime(labels[i].p))
      throw std::domain_error("from_exponents: label " + std::to_string(labels[i].p) +
                              " is not prime");
    fs.push_back({labels[i], e[i], f[i]});
  }
  std::sort(fs.begin(), fs.end(),
            [](const IdealFactor& a, const IdealFactor& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (fs[i].label == fs[i - 1].label)
      throw std::domain_error("from_exponents: duplicate label " +
                              to_string(fs[i].label));
  return IdealFactorization(IdealFactorization::trusted_t{}, std::nullopt, std::move(fs));
}

/// H(I) by the closed form log Omega(I) - (1/Omega) sum e_i log e_i.
[[nodiscard]] inline double ideal_entropy(const IdealFactorization& I) {
  if (I.empty()) throw std::domain_error("ideal_entropy: ideal must be proper");
  const auto e = I.exponents();
  return detail::entropy_exponents(e);
}

/// H(I) by the literal Shannon sum over e_i / Omega(I).
[[nodiscard]] inline double ideal_entropy_via_distribution(const IdealFactorization& I) {
  if (I.empty()) throw std::domain_error("ideal_entropy: ideal must be proper");
  const auto e = I.exponents();
  return shannon_entropy(ExponentDistribution::from_exponents(e));
}

/// D(I || J) with blocks paired by canonical label order. Requires
/// omega(I) = omega(J) >= 1.
[[nodiscard]] inline double ideal_divergence(const IdealFactorization& I,
                                             const IdealFactorization& J) {
  if (I.empty() || J.empty())
    throw std::domain_error("ideal_divergence: ideals must be proper");
  if (I.size() != J.size())
    throw std::domain_error("ideal_divergence: omega mismatch (omega=" +
                            std::to_string(I.size()) + " vs omega=" +
                            std::to_string(J.size()) + ")");
  const auto a = I.exponents();
  const auto b = J.exponents();
  return detail::divergence_exponents(a, b);
}

/// D(I || J) under an explicit pairing of blocks (a permutation of 0..g-1).
[[nodiscard]] inline double ideal_divergence(const IdealFactorization& I,
                                             const IdealFactorization& J,
                                             std::span<const std::size_t> pairing) {
  if (I.empty() || J.empty())
    throw std::domain_error("ideal_divergence: ideals must be proper");
  if (I.size() != J.size())
    throw std::domain_error("ideal_divergence: omega mismatch (omega=" +
                            std::to_string(I.size()) + " vs omega=" +
                            std::to_string(J.size()) + ")");
  if (pairing.size() != I.size())
    throw std::domain_error("ideal_divergence: pairing length must equal omega");
  std::vector<bool> seen(pairing.size(), false);
  for (std::size_t j : pairing) {
    if (j >= pairing.size() || seen[j])
      throw std::domain_error("ideal_divergence: pairing is not a permutation");
    seen[j] = true;
  }
  const auto a = I.exponents();
  const auto bj = J.exponents();
  std::vector<u64> b(bj.size());
  for (std::size_t i = 0; i < bj.size(); ++i) b[i] = bj[pairing[i]];
  return detail::divergence_exponents(a, b);
}

/// gamma(I): same prime ideals, all exponents 1 (the lowest e-divisor).
[[nodiscard]] inline IdealFactorization ideal_radical(const IdealFactorization& I) {
  std::vector<IdealFactor> fs = I.factors();
  for (auto& x : fs) x.e = 1;
  return IdealFactorization(IdealFactorization::trusted_t{}, I.field(), std::move(fs));
}

/// tau(I) = prod (e_i + 1).
[[nodiscard]] inline u64 ideal_tau(const IdealFactorization& I) {
  u64 t = 1;
  for (const auto& x : I.factors()) t *= x.e + 1;
  return t;
}

/// tau^(e)(I) = prod tau(e_i).
[[nodiscard]] inline u64 ideal_tau_e(const IdealFactorization& I) {
  u64 t = 1;
  for (const auto& x : I.factors()) t *= tau(x.e);
  return t;
}

/// Exponential divisors of I: all beta with beta_i | e_i, beta_i >= 1, same
/// labels. Lexicographic order in the exponent vector (leftmost label most
/// significant).
[[nodiscard]] inline std::vector<IdealFactorization> ideal_exp_divisors(
    const IdealFactorization& I) {
  if (I.empty()) throw std::domain_error("ideal_exp_divisors: ideal must be proper");
  std::vector<std::vector<u64>> choices;
  choices.reserve(I.size());
  for (const auto& x : I.factors()) choices.push_back(detail::divisors_of(x.e));

  std::vector<IdealFactorization> out;
  std::vector<std::size_t> pick(I.size(), 0);
  while (true) {
    std::vector<IdealFactor> fs = I.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) fs[i].e = choices[i][pick[i]];
    out.push_back(
        IdealFactorization(IdealFactorization::trusted_t{}, I.field(), std::move(fs)));
    std::size_t i = pick.size();
    while (i > 0 && ++pick[i - 1] == choices[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace entropia
