#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <random>
#include <string>

#include "arw/core/error.hpp"

namespace arw {

/// Exact coefficient arithmetic. A field object may carry runtime state
/// (the modulus), so every operation goes through the instance.
template <class F>
concept CoefficientField = requires(const F f, typename F::value_type a,
                                    std::int64_t n, std::mt19937_64& rng) {
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.equal(a, a) } -> std::convertible_to<bool>;
  { f.random(rng) } -> std::same_as<typename F::value_type>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.name() } -> std::convertible_to<std::string>;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Uniform draw from [0, bound) by rejection; mt19937_64 output is fixed by
/// the standard, so the draws are reproducible across toolchains.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

/// F_p for a prime p < 2^31.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 32003) : p_(p) {
    require(p < (1u << 31) && is_prime(p), ErrorKind::kInvalidArgument,
            "prime field modulus must be a prime below 2^31, got " +
                std::to_string(p));
  }

  std::uint64_t characteristic() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  value_type from_rational(const mpz_class& num, const mpz_class& den) const {
    const mpz_class p(static_cast<unsigned long>(p_));
    mpz_class n = num % p, d = den % p;
    if (n < 0) n += p;
    if (d < 0) d += p;
    require(d != 0, ErrorKind::kParse,
            "denominator vanishes modulo " + std::to_string(p_));
    return mul(static_cast<value_type>(n.get_ui()),
               inv(static_cast<value_type>(d.get_ui())));
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }
  value_type inv(value_type a) const {
    require(a != 0, ErrorKind::kInvalidArgument, "division by zero");
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  value_type random(std::mt19937_64& rng) const {
    return static_cast<value_type>(uniform_below(rng, p_));
  }
  /// Symmetric representative, so -1 prints as "-1".
  std::string to_string(value_type a) const {
    if (a > p_ / 2) return "-" + std::to_string(p_ - a);
    return std::to_string(a);
  }
  bool is_negative(value_type a) const { return a > p_ / 2; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, backed by GMP.
class RationalField {
 public:
  using value_type = mpq_class;

  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "QQ"; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t n) const {
    return value_type(mpz_class(static_cast<long>(n)));
  }
  value_type from_rational(const mpz_class& num, const mpz_class& den) const {
    require(den != 0, ErrorKind::kParse, "zero denominator");
    value_type q(num, den);
    q.canonicalize();
    return q;
  }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    require(a != 0, ErrorKind::kInvalidArgument, "division by zero");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  /// Small integers in [-50, 50]; enough genericity for desk-scale draws.
  value_type random(std::mt19937_64& rng) const {
    return from_int(static_cast<std::int64_t>(uniform_below(rng, 101)) - 50);
  }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  bool is_negative(const value_type& a) const { return sgn(a) < 0; }

  bool operator==(const RationalField&) const { return true; }
};

static_assert(CoefficientField<PrimeField>);
static_assert(CoefficientField<RationalField>);

}  // namespace arw
