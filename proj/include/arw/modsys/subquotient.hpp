#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "arw/groebner/hilbert.hpp"
#include "arw/modsys/free_module.hpp"

namespace arw {

/// Gröbner basis over the ambient ring S of span(cols) + J·S^r, i.e. of the
/// lift of a submodule of R^r.
template <CoefficientField F>
class SubmoduleBasis {
 public:
  SubmoduleBasis(const FreeModule<F>& ambient, const std::vector<Column<F>>& cols)
      : ring_(ambient.ring), ord_(ambient.order()) {
    const auto& R = *ring_;
    std::vector<gb::GBInput<F>> in;
    for (auto& v : detail::defining_relations(R, ambient.rank())) in.push_back({std::move(v), true});
    for (const auto& c : cols) {
      auto v = detail::to_vec(c, ord_);
      if (!v.empty()) in.push_back({std::move(v), false});
    }
    basis_ = gb::groebner(R.field(), ord_, std::move(in), {.product_criterion = ambient.rank() == 1}).basis;
  }

  const std::vector<gb::Vec<F>>& basis() const { return basis_; }
  const gb::ModuleOrder& order() const { return ord_; }

  Column<F> reduce(const Column<F>& v) const {
    auto r = gb::normal_form(ring_->field(), ord_, basis_, detail::to_vec(v, ord_));
    return gb::vec_to_column(r, &ring_->ambient(), v.size());
  }
  bool contains(const Column<F>& v) const {
    if (is_zero(v)) return true;
    return gb::normal_form(ring_->field(), ord_, basis_, detail::to_vec(v, ord_)).empty();
  }

  /// Numerator of the Hilbert series of S^r / (this lift).
  LaurentPoly hilbert_numerator() const {
    const auto r = ord_.rank();
    std::vector<std::vector<Monomial>> leads(r);
    for (const auto& g : basis_) leads[g.front().comp].push_back(g.front().m);
    LaurentPoly num;
    for (std::size_t k = 0; k < r; ++k)
      num += arw::hilbert_numerator(leads[k], ring_->ambient().weights()).shifted(ord_.comp_degrees()[k]);
    return num;
  }

  /// Krull dimension of S^r / (this lift), from independent sets per
  /// component; -1 when the quotient is zero.
  int quotient_dimension() const {
    const auto r = ord_.rank();
    std::vector<std::vector<Monomial>> leads(r);
    for (const auto& g : basis_) leads[g.front().comp].push_back(g.front().m);
    int d = -1;
    for (std::size_t k = 0; k < r; ++k) d = std::max(d, dimension_from_leads(leads[k], ring_->nvars()));
    return d;
  }

 private:
  RingPtr<F> ring_;
  gb::ModuleOrder ord_;
  std::vector<gb::Vec<F>> basis_;
};

/// Hilbert series K(t) / prod (1 - t^{w_i}) of a graded module.
struct GradedSeries {
  LaurentPoly numerator;
  std::vector<std::int32_t> weights;

  bool operator==(const GradedSeries& o) const { return numerator == o.numerator && weights == o.weights; }
  bool is_zero() const { return numerator.is_zero(); }
  int dimension() const { return pole_order(numerator, weights.size()); }
  std::vector<std::int64_t> values(std::int32_t lo, std::int32_t hi) const {
    return expand_series(numerator, weights, lo, hi);
  }
  /// Total k-dimension for finite-length modules; -1 otherwise.
  std::int64_t length() const {
    if (numerator.is_zero()) return 0;
    if (dimension() > 0) return -1;
    std::int32_t lo = numerator.c.begin()->first, hi = numerator.c.rbegin()->first;
    std::int64_t s = 0;
    for (auto v : values(lo, hi)) s += v;
    return s;
  }
  /// Lowest and highest degrees carrying a nonzero value (finite length only).
  std::pair<std::int32_t, std::int32_t> support() const {
    std::int32_t lo = numerator.c.begin()->first, hi = numerator.c.rbegin()->first;
    auto v = values(lo, hi);
    std::int32_t a = hi, b = lo;
    for (std::int32_t d = lo; d <= hi; ++d)
      if (v[static_cast<std::size_t>(d - lo)]) {
        a = std::min(a, d);
        b = std::max(b, d);
      }
    return {a, b};
  }
};

/// M = (im gens + im rels) / im rels inside a graded free module. With no
/// relations M is a submodule; with gens = identity it is a quotient.
template <CoefficientField F>
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(FreeModule<F> ambient, Matrix<F> gens, Matrix<F> rels)
      : ambient_(std::move(ambient)), gens_(std::move(gens)), rels_(std::move(rels)) {
    require(gens_.rows() == ambient_.rank() && rels_.rows() == ambient_.rank(), ErrorKind::kInvalidArgument,
            "subquotient matrices do not match the ambient rank");
    normalize(gens_);
    normalize(rels_);
    cache_ = std::make_shared<Cache>();
  }

  static Subquotient submodule(FreeModule<F> ambient, Matrix<F> gens) {
    auto r = ambient.rank();
    return Subquotient(std::move(ambient), std::move(gens), Matrix<F>(r, {}));
  }
  static Subquotient quotient(FreeModule<F> ambient, Matrix<F> rels) {
    auto id = Matrix<F>::identity(*ambient.ring, ambient.rank());
    return Subquotient(std::move(ambient), std::move(id), std::move(rels));
  }
  static Subquotient free(FreeModule<F> ambient) { return quotient(ambient, Matrix<F>(ambient.rank(), {})); }
  /// R/I as a cyclic module.
  static Subquotient cyclic(const Ideal<F>& I) {
    FreeModule<F> A(I.ring_ptr(), 1);
    std::vector<Column<F>> cols;
    for (const auto& g : I.generators()) cols.push_back({g});
    return quotient(A, Matrix<F>(1, cols));
  }

  const FreeModule<F>& ambient() const { return ambient_; }
  const QuotientRing<F>& ring() const { return *ambient_.ring; }
  const RingPtr<F>& ring_ptr() const { return ambient_.ring; }
  const Matrix<F>& generators() const { return gens_; }
  const Matrix<F>& relations() const { return rels_; }
  bool is_submodule() const { return rels_.is_zero(); }

  /// Lift of span(rels) (+ J).
  const SubmoduleBasis<F>& relation_basis() const {
    std::call_once(cache_->rel_once, [&] { cache_->rel = std::make_unique<SubmoduleBasis<F>>(ambient_, rels_.columns()); });
    return *cache_->rel;
  }
  /// Lift of span(gens) + span(rels) (+ J).
  const SubmoduleBasis<F>& full_basis() const {
    std::call_once(cache_->full_once, [&] {
      auto cols = gens_.columns();
      cols.insert(cols.end(), rels_.columns().begin(), rels_.columns().end());
      cache_->full = std::make_unique<SubmoduleBasis<F>>(ambient_, cols);
    });
    return *cache_->full;
  }

  /// v ∈ im gens + im rels.
  bool contains(const Column<F>& v) const {
    require(v.size() == ambient_.rank(), ErrorKind::kInvalidArgument, "vector rank does not match the ambient module");
    return full_basis().contains(v);
  }
  /// v represents zero in M (v ∈ im rels).
  bool is_zero_element(const Column<F>& v) const {
    require(v.size() == ambient_.rank(), ErrorKind::kInvalidArgument, "vector rank does not match the ambient module");
    return relation_basis().contains(v);
  }
  bool is_zero() const {
    for (const auto& c : gens_.columns())
      if (!is_zero_element(c)) return false;
    return true;
  }

  bool is_homogeneous() const {
    for (const auto& c : gens_.columns())
      if (!column_homogeneous(c, ambient_.degrees)) return false;
    for (const auto& c : rels_.columns())
      if (!column_homogeneous(c, ambient_.degrees)) return false;
    return true;
  }

  std::vector<std::int32_t> generator_degrees() const { return induced_source_degrees(gens_, ambient_.degrees); }

  GradedSeries hilbert_series() const {
    require(is_homogeneous(), ErrorKind::kNotHomogeneous, "Hilbert series of non-homogeneous module data");
    auto num = relation_basis().hilbert_numerator();
    num -= full_basis().hilbert_numerator();
    return {num, ring().ambient().weights()};
  }
  std::vector<std::int64_t> hilbert_function(std::int32_t lo, std::int32_t hi) const {
    return hilbert_series().values(lo, hi);
  }
  int dimension() const { return hilbert_series().dimension(); }

  std::string describe() const {
    return "subquotient of " + ambient_.describe() + " with " + std::to_string(gens_.cols()) +
           " generators and " + std::to_string(rels_.cols()) + " relations";
  }

 private:
  struct Cache {
    std::once_flag rel_once, full_once;
    std::unique_ptr<SubmoduleBasis<F>> rel, full;
  };

  void normalize(Matrix<F>& m) {
    const auto& R = *ambient_.ring;
    std::vector<Column<F>> cols;
    for (const auto& c : m.columns()) {
      Column<F> n;
      for (const auto& p : c) n.push_back(R.normal_form(p));
      cols.push_back(std::move(n));
    }
    m = Matrix<F>(m.rows(), std::move(cols));
  }

  FreeModule<F> ambient_;
  Matrix<F> gens_, rels_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace arw
