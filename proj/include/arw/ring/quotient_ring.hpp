#pragma once

#include <memory>
#include <string>
#include <vector>

#include "arw/groebner/convert.hpp"
#include "arw/groebner/engine.hpp"
#include "arw/groebner/hilbert.hpp"
#include "arw/ring/parse.hpp"
#include "arw/ring/polynomial.hpp"

namespace arw {

/// R = S/J for a homogeneous ideal J of the ambient polynomial ring S.
/// Elements of R are ambient polynomials kept in normal form modulo the
/// reduced Gröbner basis of J.
template <CoefficientField F>
class QuotientRing {
 public:
  using value_type = typename F::value_type;

  QuotientRing(PolyRingPtr<F> ambient, const std::vector<Polynomial<F>>& generators)
      : ambient_(std::move(ambient)), ord_(gb::ideal_order(ambient_->order())) {
    std::vector<gb::GBInput<F>> in;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto& g = generators[i];
      require(g.ring() == nullptr || g.ring()->same_as(*ambient_), ErrorKind::kRingMismatch,
              "defining generator " + std::to_string(i) + " is not in the ambient ring");
      require(g.is_homogeneous(), ErrorKind::kNotHomogeneous,
              "defining generator " + std::to_string(i) + " (" + to_string(g) +
                  ") is not homogeneous");
      if (!g.is_zero()) in.push_back({gb::to_vec(g), false});
    }
    auto res = gb::groebner(field(), ord_, std::move(in), {.product_criterion = true});
    for (auto& v : res.basis) {
      defining_.push_back(gb::vec_to_poly(v, ambient_.get()));
      basis_.push_back(std::move(v));
    }
    std::vector<Monomial> leads;
    for (const auto& g : defining_) leads.push_back(g.lead_monomial());
    dimension_ = dimension_from_leads(leads, ambient_->nvars());
  }

  const PolyRing<F>& ambient() const { return *ambient_; }
  const PolyRingPtr<F>& ambient_ptr() const { return ambient_; }
  const F& field() const { return ambient_->field(); }
  std::size_t nvars() const { return ambient_->nvars(); }
  const std::vector<Polynomial<F>>& defining() const { return defining_; }
  /// The defining basis as rank-one vectors (for module computations).
  const std::vector<gb::Vec<F>>& defining_vecs() const { return basis_; }
  bool is_polynomial_ring() const { return defining_.empty(); }
  int dimension() const { return dimension_; }

  Polynomial<F> normal_form(const Polynomial<F>& f) const {
    check(f);
    if (defining_.empty() || f.is_zero()) return f.ring() ? f : Polynomial<F>(ambient_.get());
    auto v = gb::normal_form(field(), ord_, basis_, gb::to_vec(f));
    return gb::vec_to_poly(v, ambient_.get());
  }

  bool is_homogeneous(const Polynomial<F>& f) const { return normal_form(f).is_homogeneous(); }
  bool is_zero(const Polynomial<F>& f) const { return normal_form(f).is_zero(); }

  /// Parses text in the ambient variables and returns its normal form.
  Polynomial<F> parse(std::string_view text) const {
    return normal_form(parse_polynomial(*ambient_, text));
  }

  Polynomial<F> zero() const { return ambient_->zero(); }
  Polynomial<F> one() const { return ambient_->one(); }
  Polynomial<F> variable(std::size_t i) const { return normal_form(ambient_->variable(i)); }
  Polynomial<F> variable(const std::string& name) const { return normal_form(ambient_->variable(name)); }
  std::vector<Polynomial<F>> variables() const {
    std::vector<Polynomial<F>> out;
    for (std::size_t i = 0; i < nvars(); ++i) out.push_back(variable(i));
    return out;
  }
  Polynomial<F> mul(const Polynomial<F>& a, const Polynomial<F>& b) const { return normal_form(a * b); }

  /// Random homogeneous element of R of the given degree.
  Polynomial<F> random_form(std::int32_t deg, std::mt19937_64& rng) const {
    return normal_form(ambient_->random_form(deg, rng));
  }

  std::string describe() const {
    std::string s = field().name() + "[";
    for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + ambient_->names()[i];
    s += "]";
    if (!defining_.empty()) {
      s += "/(";
      for (std::size_t i = 0; i < defining_.size(); ++i) s += (i ? ", " : "") + to_string(defining_[i]);
      s += ")";
    }
    return s;
  }

  bool same_as(const QuotientRing& o) const {
    return this == &o || (ambient_->same_as(*o.ambient_) && defining_ == o.defining_);
  }

  void check(const Polynomial<F>& f) const {
    if (f.ring() && !f.ring()->same_as(*ambient_))
      fail(ErrorKind::kRingMismatch, "polynomial does not live in the ambient ring of " + describe());
  }

 private:
  PolyRingPtr<F> ambient_;
  gb::ModuleOrder ord_;
  std::vector<Polynomial<F>> defining_;
  std::vector<gb::Vec<F>> basis_;
  int dimension_ = 0;
};

template <CoefficientField F>
using RingPtr = std::shared_ptr<const QuotientRing<F>>;

template <CoefficientField F>
PolyRingPtr<F> make_polynomial_ring(F field, std::vector<std::string> names,
                                    OrderKind kind = OrderKind::kGrevlex,
                                    std::vector<std::int32_t> weights = {}, std::size_t block = 0) {
  return std::make_shared<const PolyRing<F>>(std::move(field), std::move(names), kind,
                                             std::move(weights), block);
}

template <CoefficientField F>
RingPtr<F> make_quotient_ring(PolyRingPtr<F> ambient, const std::vector<Polynomial<F>>& generators = {}) {
  return std::make_shared<const QuotientRing<F>>(std::move(ambient), generators);
}

/// Convenience: quotient ring from generator text, e.g. {"x^2", "x*y"}.
template <CoefficientField F>
RingPtr<F> make_quotient_ring(PolyRingPtr<F> ambient, const std::vector<std::string>& generators) {
  std::vector<Polynomial<F>> g;
  for (const auto& s : generators) g.push_back(parse_polynomial(*ambient, s));
  return make_quotient_ring(std::move(ambient), g);
}

}  // namespace arw
