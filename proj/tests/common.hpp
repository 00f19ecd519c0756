#pragma once

#include <string>
#include <vector>

#include "arw/groebner/ideal.hpp"
#include "arw/ring/quotient_ring.hpp"

namespace testing_support {

using K = arw::PrimeField;
using Q = arw::RationalField;
using Poly = arw::Polynomial<K>;
using RingP = arw::RingPtr<K>;
using IdealK = arw::Ideal<K>;

inline RingP ring(std::vector<std::string> vars, std::vector<std::string> defining = {},
                  std::uint32_t p = 32003) {
  return arw::make_quotient_ring(arw::make_polynomial_ring(K(p), std::move(vars)), defining);
}

inline IdealK ideal(const RingP& R, std::vector<std::string> gens) { return IdealK(R, gens); }

inline std::vector<Poly> polys(const RingP& R, const std::vector<std::string>& s) {
  std::vector<Poly> out;
  for (const auto& t : s) out.push_back(R->parse(t));
  return out;
}

}  // namespace testing_support

namespace arw {
template <CoefficientField F>
void PrintTo(const Polynomial<F>& p, std::ostream* os) {
  *os << to_string(p);
}
}  // namespace arw
