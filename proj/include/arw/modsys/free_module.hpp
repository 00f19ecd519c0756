#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arw/groebner/convert.hpp"
#include "arw/groebner/ideal.hpp"
#include "arw/ring/quotient_ring.hpp"

namespace arw {

template <CoefficientField F>
using Column = std::vector<Polynomial<F>>;

/// Graded free module R(-a_1) ⊕ ... ⊕ R(-a_r); `degrees` holds the a_k,
/// i.e. the degree of each basis vector.
template <CoefficientField F>
struct FreeModule {
  RingPtr<F> ring;
  std::vector<std::int32_t> degrees;

  FreeModule() = default;
  FreeModule(RingPtr<F> R, std::size_t rank) : ring(std::move(R)), degrees(rank, 0) {}
  FreeModule(RingPtr<F> R, std::vector<std::int32_t> degs) : ring(std::move(R)), degrees(std::move(degs)) {}

  std::size_t rank() const { return degrees.size(); }
  /// Degree shifts in the R(t) convention: twist_k = -degree_k.
  std::vector<std::int32_t> twists() const {
    std::vector<std::int32_t> t;
    for (auto d : degrees) t.push_back(-d);
    return t;
  }
  Column<F> zero_vector() const { return Column<F>(rank(), ring->zero()); }
  Column<F> basis_vector(std::size_t k) const {
    auto v = zero_vector();
    v[k] = ring->one();
    return v;
  }
  gb::ModuleOrder order() const { return gb::ModuleOrder(ring->ambient().order(), degrees); }

  bool operator==(const FreeModule& o) const { return ring->same_as(*o.ring) && degrees == o.degrees; }

  std::string describe() const {
    if (degrees.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < degrees.size();) {
      std::size_t j = i;
      while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
      if (!s.empty()) s += " + ";
      s += "R(" + std::to_string(-degrees[i]) + ")";
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
    return s;
  }
};

template <CoefficientField F>
FreeModule<F> direct_sum(const FreeModule<F>& a, const FreeModule<F>& b) {
  auto d = a.degrees;
  d.insert(d.end(), b.degrees.begin(), b.degrees.end());
  return FreeModule<F>(a.ring, d);
}

/// Column-major matrix over R; column j is the image of the j-th source
/// basis vector.
template <CoefficientField F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::vector<Column<F>> cols) : rows_(rows), cols_(std::move(cols)) {
    for (const auto& c : cols_)
      require(c.size() == rows_, ErrorKind::kInvalidArgument, "matrix column of wrong length");
  }
  static Matrix zero(const QuotientRing<F>& R, std::size_t rows, std::size_t ncols) {
    return Matrix(rows, std::vector<Column<F>>(ncols, Column<F>(rows, R.zero())));
  }
  static Matrix identity(const QuotientRing<F>& R, std::size_t n) {
    Matrix m = zero(R, n, n);
    for (std::size_t i = 0; i < n; ++i) m.cols_[i][i] = R.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const Polynomial<F>& operator()(std::size_t i, std::size_t j) const { return cols_[j][i]; }
  Polynomial<F>& operator()(std::size_t i, std::size_t j) { return cols_[j][i]; }
  const Column<F>& column(std::size_t j) const { return cols_[j]; }
  const std::vector<Column<F>>& columns() const { return cols_; }
  void add_column(Column<F> c) {
    require(c.size() == rows_, ErrorKind::kInvalidArgument, "matrix column of wrong length");
    cols_.push_back(std::move(c));
  }
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool is_zero() const {
    for (const auto& c : cols_)
      for (const auto& p : c)
        if (!p.is_zero()) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<Column<F>> cols_;
};

/// Applies a matrix to a coefficient vector, reducing into R.
template <CoefficientField F>
Column<F> apply(const QuotientRing<F>& R, const Matrix<F>& m, const Column<F>& a) {
  require(a.size() == m.cols(), ErrorKind::kInvalidArgument, "vector length does not match matrix");
  Column<F> out(m.rows(), R.zero());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) out[i] += m(i, j) * a[j];
  }
  for (auto& p : out) p = R.normal_form(p);
  return out;
}

template <CoefficientField F>
Matrix<F> multiply(const QuotientRing<F>& R, const Matrix<F>& a, const Matrix<F>& b) {
  require(a.cols() == b.rows(), ErrorKind::kInvalidArgument, "matrix sizes do not compose");
  std::vector<Column<F>> cols;
  for (const auto& c : b.columns()) cols.push_back(apply(R, a, c));
  return Matrix<F>(a.rows(), cols);
}

template <CoefficientField F>
Column<F> scale(const QuotientRing<F>& R, const Column<F>& v, const Polynomial<F>& f) {
  Column<F> out;
  for (const auto& p : v) out.push_back(R.normal_form(p * f));
  return out;
}

template <CoefficientField F>
bool is_zero(const Column<F>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

/// Degree of a homogeneous column in the grading of `degrees`; nullopt for
/// the zero column or inhomogeneous data.
template <CoefficientField F>
std::optional<std::int32_t> column_degree(const Column<F>& v, const std::vector<std::int32_t>& degrees) {
  std::optional<std::int32_t> d;
  for (std::size_t k = 0; k < v.size(); ++k)
    for (const auto& t : v[k].terms) {
      std::int32_t e = t.m.deg + degrees[k];
      if (d && *d != e) return std::nullopt;
      d = e;
    }
  return d;
}

template <CoefficientField F>
bool column_homogeneous(const Column<F>& v, const std::vector<std::int32_t>& degrees) {
  return is_zero(v) || column_degree(v, degrees).has_value();
}

/// A map of free modules given by a target.rank x source.rank matrix.
template <CoefficientField F>
struct ModuleMap {
  FreeModule<F> source;
  FreeModule<F> target;
  Matrix<F> matrix;

  ModuleMap() = default;
  ModuleMap(FreeModule<F> s, FreeModule<F> t, Matrix<F> m)
      : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    require(matrix.rows() == target.rank() && matrix.cols() == source.rank(), ErrorKind::kInvalidArgument,
            "map matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                " but the free modules have ranks " + std::to_string(target.rank()) + " and " +
                std::to_string(source.rank()));
    const auto& R = *target.ring;
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      for (std::size_t i = 0; i < matrix.rows(); ++i) matrix(i, j) = R.normal_form(matrix(i, j));
  }

  /// Entry degrees match the twist differences.
  bool is_graded() const {
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (const auto& t : matrix(i, j).terms)
          if (t.m.deg != source.degrees[j] - target.degrees[i]) return false;
    return true;
  }
};

/// Source degrees making every (homogeneous) column of `m` degree-preserving
/// into a target with the given degrees; zero columns get degree `fallback`.
template <CoefficientField F>
std::vector<std::int32_t> induced_source_degrees(const Matrix<F>& m, const std::vector<std::int32_t>& target,
                                                 std::int32_t fallback = 0) {
  std::vector<std::int32_t> out;
  for (const auto& c : m.columns()) {
    auto d = column_degree(c, target);
    if (d) {
      out.push_back(*d);
    } else {
      // zero or inhomogeneous: use the largest twisted degree present
      std::int32_t best = fallback;
      bool any = false;
      for (std::size_t k = 0; k < c.size(); ++k)
        for (const auto& t : c[k].terms) {
          best = any ? std::max(best, t.m.deg + target[k]) : t.m.deg + target[k];
          any = true;
        }
      out.push_back(best);
    }
  }
  return out;
}

template <CoefficientField F>
ModuleMap<F> make_map(const FreeModule<F>& target, const Matrix<F>& m) {
  return ModuleMap<F>(FreeModule<F>(target.ring, induced_source_degrees(m, target.degrees)), target, m);
}

template <CoefficientField F>
ModuleMap<F> compose(const ModuleMap<F>& g, const ModuleMap<F>& f) {
  require(g.source.rank() == f.target.rank(), ErrorKind::kInvalidArgument, "maps do not compose");
  return ModuleMap<F>(f.source, g.target, multiply(*g.target.ring, g.matrix, f.matrix));
}

/// Parses a row-major matrix: rows separated by ';' or newlines, entries by
/// ','. Example: "x, y; 0, z".
template <CoefficientField F>
Matrix<F> parse_matrix(const QuotientRing<F>& R, const std::string& text) {
  std::vector<std::vector<Polynomial<F>>> rows;
  std::string cur;
  auto flush_row = [&](const std::string& row) {
    std::vector<Polynomial<F>> entries;
    std::string e;
    bool any = false;
    for (char ch : row + ",") {
      if (ch == ',') {
        bool blank = e.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) fail(ErrorKind::kParse, "empty matrix entry in row '" + row + "'");
        entries.push_back(R.parse(e));
        e.clear();
        any = true;
      } else {
        e += ch;
      }
    }
    if (any) rows.push_back(std::move(entries));
  };
  for (char ch : text + ";") {
    if (ch == ';' || ch == '\n') {
      if (cur.find_first_not_of(" \t\r") != std::string::npos) flush_row(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (rows.empty()) return Matrix<F>();
  std::size_t nc = rows[0].size();
  for (const auto& r : rows)
    require(r.size() == nc, ErrorKind::kParse, "matrix rows have different lengths");
  std::vector<Column<F>> cols(nc, Column<F>(rows.size(), R.zero()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nc; ++j) cols[j][i] = rows[i][j];
  return Matrix<F>(rows.size(), cols);
}

template <CoefficientField F>
std::string format_matrix(const Matrix<F>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
  }
  return s;
}

namespace detail {

/// Column as a sparse vector with components shifted by `shift`.
template <CoefficientField F>
gb::Vec<F> to_vec(const Column<F>& c, const gb::ModuleOrder& ord, std::uint32_t shift = 0) {
  return gb::column_to_vec(c, ord, shift);
}

/// J·e_k for every component k in [shift, shift + rank).
template <CoefficientField F>
std::vector<gb::Vec<F>> defining_relations(const QuotientRing<F>& R, std::size_t rank, std::uint32_t shift = 0) {
  std::vector<gb::Vec<F>> out;
  for (std::size_t k = 0; k < rank; ++k)
    for (const auto& g : R.defining_vecs()) {
      gb::Vec<F> v = g;
      for (auto& t : v) t.comp = static_cast<std::uint32_t>(k) + shift;
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace detail

}  // namespace arw
