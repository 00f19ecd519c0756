#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arw/core/error.hpp"

namespace arw {

inline constexpr std::size_t kMaxVars = 16;
inline constexpr std::uint32_t kMaxExponent = 60000;

/// Exponent vector with its weighted degree cached. Unused slots stay zero,
/// so comparisons never need the variable count.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::int32_t deg = 0;

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool is_one() const { return deg == 0 && exp == std::array<std::uint16_t, kMaxVars>{}; }
};

enum class OrderKind { kGrevlex, kLex, kEliminationBlock };

inline const char* to_string(OrderKind k) {
  switch (k) {
    case OrderKind::kGrevlex: return "grevlex";
    case OrderKind::kLex: return "lex";
    case OrderKind::kEliminationBlock: return "elimination-block";
  }
  return "?";
}

/// A monomial order refining divisibility. The elimination-block order puts
/// the first `block` variables in a grevlex block that dominates the rest.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::size_t nvars, std::vector<std::int32_t> weights,
                std::size_t block = 0)
      : kind_(kind), nvars_(nvars), weights_(std::move(weights)), block_(block) {
    require(nvars_ <= kMaxVars, ErrorKind::kLimit,
            "at most " + std::to_string(kMaxVars) + " variables are supported");
    if (weights_.empty()) weights_.assign(nvars_, 1);
    require(weights_.size() == nvars_, ErrorKind::kInvalidArgument,
            "weight vector length must equal the variable count");
    for (auto w : weights_)
      require(w > 0, ErrorKind::kInvalidArgument, "weights must be positive");
    if (kind_ == OrderKind::kEliminationBlock)
      require(block_ >= 1 && block_ <= nvars_, ErrorKind::kInvalidArgument,
              "elimination block size out of range");
  }

  OrderKind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t block() const { return block_; }
  const std::vector<std::int32_t>& weights() const { return weights_; }
  bool degree_compatible() const { return kind_ == OrderKind::kGrevlex; }

  std::int32_t degree_of(const Monomial& m) const {
    std::int32_t d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += weights_[i] * m.exp[i];
    return d;
  }

  /// -1, 0, +1 for a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case OrderKind::kGrevlex:
        if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
        return revlex(a, b, 0, nvars_);
      case OrderKind::kLex:
        for (std::size_t i = 0; i < nvars_; ++i)
          if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? -1 : 1;
        return 0;
      case OrderKind::kEliminationBlock: {
        std::int32_t da = partial_degree(a, 0, block_), db = partial_degree(b, 0, block_);
        if (da != db) return da < db ? -1 : 1;
        if (int c = revlex(a, b, 0, block_)) return c;
        if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
        return revlex(a, b, block_, nvars_);
      }
    }
    return 0;
  }

  /// Reverse-lex tie break on exponent vectors alone (no degree).
  static int revlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = hi; i-- > lo;)
      if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? -1 : 1;
    return 0;
  }

  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && nvars_ == o.nvars_ && weights_ == o.weights_ && block_ == o.block_;
  }

 private:
  std::int32_t partial_degree(const Monomial& m, std::size_t lo, std::size_t hi) const {
    std::int32_t d = 0;
    for (std::size_t i = lo; i < hi; ++i) d += weights_[i] * m.exp[i];
    return d;
  }

  OrderKind kind_ = OrderKind::kGrevlex;
  std::size_t nvars_ = 0;
  std::vector<std::int32_t> weights_;
  std::size_t block_ = 0;
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint32_t e = std::uint32_t(a.exp[i]) + b.exp[i];
    if (e > kMaxExponent) fail(ErrorKind::kLimit, "exponent overflow");
    r.exp[i] = static_cast<std::uint16_t>(e);
  }
  r.deg = a.deg + b.deg;
  return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
  if (a.deg > b.deg) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

/// b / a, assuming a divides b.
inline Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = b.exp[i] - a.exp[i];
  r.deg = b.deg - a.deg;
  return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  r.deg = ord.degree_of(r);
  return r;
}

inline Monomial mono_gcd(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::min(a.exp[i], b.exp[i]);
  r.deg = ord.degree_of(r);
  return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exp) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

}  // namespace arw
