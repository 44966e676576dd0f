#pragma once

// Exact dense linear algebra over a prime field F_p (p odd).
//
// Every subspace is kept in reduced row echelon form, so two Subspace values
// compare equal exactly when they describe the same subspace.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "brnr/errors.hpp"

namespace brnr {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

/// Arithmetic context for F_p. The modulus is validated once here; scalars
/// themselves are plain residues in [0, p).
class PrimeField {
 public:
  static constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

  explicit PrimeField(std::int64_t p) : p_(validate(p)) {}

  Scalar p() const noexcept { return p_; }

  Scalar reduce(std::int64_t x) const noexcept {
    const std::int64_t m = static_cast<std::int64_t>(p_);
    std::int64_t r = x % m;
    return static_cast<Scalar>(r < 0 ? r + m : r);
  }
  Scalar add(Scalar a, Scalar b) const noexcept {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Scalar>(s >= p_ ? s - p_ : s);
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    return static_cast<Scalar>((std::uint64_t{a} * b) % p_);
  }
  /// a + b * c
  Scalar fma(Scalar a, Scalar b, Scalar c) const noexcept {
    return static_cast<Scalar>((std::uint64_t{a} + std::uint64_t{b} * c) % p_);
  }

  /// Multiplicative inverse by the extended Euclidean algorithm.
  Scalar inv(Scalar a) const {
    if (a % p_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
    std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
      std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    return reduce(s0);
  }

  Scalar pow(Scalar a, std::uint64_t e) const noexcept {
    Scalar result = 1 % p_;
    Scalar base = a;
    while (e != 0) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return result;
  }

  /// True for nonzero squares (Euler's criterion). Zero is not a unit and
  /// returns false.
  bool is_square(Scalar a) const noexcept { return a % p_ != 0 && pow(a, (p_ - 1) / 2) == 1; }

  /// Representative in (-p/2, p/2].
  std::int64_t signed_rep(Scalar a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  static Scalar validate(std::int64_t p) {
    if (p == 2) throw DomainError("p = 2 is not supported; p must be an odd prime");
    if (p < 3 || p > kMaxModulus) throw DomainError("p = " + std::to_string(p) + " is not an odd prime below 2^31");
    for (std::int64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw DomainError("p = " + std::to_string(p) + " is not prime");
    }
    return static_cast<Scalar>(p);
  }

  Scalar p_;
};

inline void require_same_field(const PrimeField& a, const PrimeField& b) {
  if (a != b) throw DimensionError("operands live over different prime fields");
}

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Builds from rows of residues; every row must have `cols` entries.
  static Matrix from_rows(PrimeField field, std::size_t cols, std::span<const Vec> rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) {
        throw DimensionError("row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                             ", expected " + std::to_string(cols));
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.reduce(rows[r][c]);
    }
    return m;
  }

  static Matrix identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return {row(r).begin(), row(r).end()}; }
  Vec col_vec(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Vec apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector product: length mismatch");
    Vec y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{(*this)(r, c)} * x[c]) % field_.p();
      y[r] = static_cast<Scalar>(acc);
    }
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_);
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    Matrix out(a.field_, a.rows_, b.cols_);
    const PrimeField& f = a.field_;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = f.fma(out(i, j), aik, b(k, j));
      }
    }
    return out;
  }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
  }
  void fill(Scalar v) noexcept { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  Vec data_;
};

namespace detail {

// row[target] -= factor * row[source], over the full row.
inline void axpy_row(const PrimeField& f, std::span<Scalar> target, Scalar factor, std::span<const Scalar> source) {
  const Scalar minus = f.neg(factor);
  for (std::size_t c = 0; c < target.size(); ++c) {
    if (source[c] != 0) target[c] = f.fma(target[c], minus, source[c]);
  }
}

inline void scale_row(const PrimeField& f, std::span<Scalar> row, Scalar factor) {
  for (Scalar& x : row) x = f.mul(x, factor);
}

}  // namespace detail

/// Reduced row echelon form with its rank and pivot columns.
struct Echelon {
  Matrix form;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Gauss-Jordan elimination. Returns the unique RREF of `m`; zero rows are
/// kept at the bottom so the shape is unchanged.
inline Echelon rref(Matrix m) {
  const PrimeField f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && m(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    if (r != pivot_row) {
      auto a = m.row(r);
      auto b = m.row(pivot_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    detail::scale_row(f, m.row(pivot_row), f.inv(m(pivot_row, c)));
    for (std::size_t other = 0; other < m.rows(); ++other) {
      if (other != pivot_row && m(other, c) != 0) detail::axpy_row(f, m.row(other), m(other, c), m.row(pivot_row));
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

/// Incrementally maintained RREF basis. Used to accumulate spans with an
/// early exit once a target dimension is reached.
class EchelonBasis {
 public:
  EchelonBasis(PrimeField field, std::size_t ambient) : field_(field), ambient_(ambient) {}

  const PrimeField& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<Vec>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Residual of `v` after elimination against the basis.
  Vec reduce(std::span<const Scalar> v) const {
    check_length(v.size());
    Vec r(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar coef = r[pivots_[i]];
      if (coef != 0) detail::axpy_row(field_, r, coef, rows_[i]);
    }
    return r;
  }

  bool contains(std::span<const Scalar> v) const {
    const Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Scalar x) { return x == 0; });
  }

  /// Adds `v` to the span. Returns false when it was already contained.
  bool insert(std::span<const Scalar> v) {
    Vec r = reduce(v);
    const auto lead = std::find_if(r.begin(), r.end(), [](Scalar x) { return x != 0; });
    if (lead == r.end()) return false;
    const std::size_t pc = static_cast<std::size_t>(lead - r.begin());
    detail::scale_row(field_, r, field_.inv(*lead));
    for (auto& row : rows_) {
      if (row[pc] != 0) detail::axpy_row(field_, row, row[pc], r);
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, pc);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
  }

 private:
  void check_length(std::size_t n) const {
    if (n != ambient_) {
      throw DimensionError("vector of length " + std::to_string(n) + " in ambient dimension " + std::to_string(ambient_));
    }
  }

  PrimeField field_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// A subspace of F_p^N held by its canonical RREF basis.
class Subspace {
 public:
  explicit Subspace(EchelonBasis basis) : basis_(std::move(basis)) {}

  static Subspace zero(PrimeField field, std::size_t ambient) { return Subspace(EchelonBasis(field, ambient)); }
  static Subspace full(PrimeField field, std::size_t ambient) {
    EchelonBasis b(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      Vec e(ambient, 0);
      e[i] = 1;
      b.insert(e);
    }
    return Subspace(std::move(b));
  }

  const PrimeField& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.ambient_dim(); }
  std::size_t dim() const noexcept { return basis_.dim(); }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_dim(); }

  /// Canonical basis vectors, ordered by pivot column.
  const std::vector<Vec>& basis() const noexcept { return basis_.rows(); }
  const std::vector<std::size_t>& pivots() const noexcept { return basis_.pivots(); }
  const EchelonBasis& echelon() const noexcept { return basis_; }

  Matrix basis_matrix() const { return Matrix::from_rows(field(), ambient_dim(), basis()); }

  bool contains(std::span<const Scalar> v) const { return basis_.contains(v); }
  bool contains(const Subspace& other) const {
    require_compatible(other);
    return std::all_of(other.basis().begin(), other.basis().end(), [&](const Vec& v) { return contains(v); });
  }

  void require_compatible(const Subspace& other) const {
    require_same_field(field(), other.field());
    if (ambient_dim() != other.ambient_dim()) {
      throw DimensionError("subspaces in ambient dimensions " + std::to_string(ambient_dim()) + " and " +
                           std::to_string(other.ambient_dim()));
    }
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field() == b.field() && a.ambient_dim() == b.ambient_dim() && a.basis() == b.basis();
  }

 private:
  EchelonBasis basis_;
};

/// Canonical subspace spanned by `vectors` in F_p^ambient.
inline Subspace span(PrimeField field, std::span<const Vec> vectors, std::size_t ambient) {
  EchelonBasis b(field, ambient);
  for (const Vec& v : vectors) {
    Vec reduced(v.size());
    std::transform(v.begin(), v.end(), reduced.begin(), [&](Scalar x) { return field.reduce(x); });
    b.insert(reduced);
  }
  return Subspace(std::move(b));
}

inline Subspace row_space(const Matrix& m) {
  EchelonBasis b(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) b.insert(m.row(r));
  return Subspace(std::move(b));
}

/// {x : m x = 0}.
inline Subspace kernel(const Matrix& m) {
  const Echelon e = rref(m);
  const PrimeField& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  EchelonBasis b(f, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(m.cols(), 0);
    x[free] = 1;
    for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = f.neg(e.form(i, free));
    b.insert(x);
  }
  return Subspace(std::move(b));
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  a.require_compatible(b);
  EchelonBasis acc = a.echelon();
  for (const Vec& v : b.basis()) acc.insert(v);
  return Subspace(std::move(acc));
}

inline bool subspace_contains(const Subspace& a, std::span<const Scalar> v) { return a.contains(v); }

/// Intersection via the kernel of [A^T | -B^T].
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  a.require_compatible(b);
  const PrimeField& f = a.field();
  const std::size_t n = a.ambient_dim();
  const std::size_t da = a.dim();
  Matrix stacked(f, n, da + b.dim());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t c = 0; c < n; ++c) stacked(c, i) = a.basis()[i][c];
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t c = 0; c < n; ++c) stacked(c, da + j) = f.neg(b.basis()[j][c]);
  const Subspace coeffs = kernel(stacked);
  EchelonBasis out(f, n);
  for (const Vec& k : coeffs.basis()) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < da; ++i) {
      if (k[i] == 0) continue;
      for (std::size_t c = 0; c < n; ++c) v[c] = f.fma(v[c], k[i], a.basis()[i][c]);
    }
    out.insert(v);
  }
  return Subspace(std::move(out));
}

/// Annihilator of `s` under the pairing <<w, f>> = w^T gram f, where `s`
/// lives on the right-hand (f) side: returns {w : <<w, f>> = 0 for all f in s}.
/// Throws DomainError when the pairing is degenerate.
inline Subspace annihilator(const Subspace& s, const Matrix& gram) {
  require_same_field(s.field(), gram.field());
  const std::size_t n = s.ambient_dim();
  if (gram.rows() != n || gram.cols() != n) throw DimensionError("gram matrix shape does not match the ambient space");
  if (rank(gram) != n) throw DomainError("pairing is degenerate (singular gram matrix)");
  // Row k of the constraint matrix is (gram f_k)^T.
  Matrix constraints(s.field(), s.dim(), n);
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const Vec gf = gram.apply(s.basis()[k]);
    std::copy(gf.begin(), gf.end(), constraints.row(k).begin());
  }
  return kernel(constraints);
}

/// Some x with a x = b, or nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = a.field().reduce(b[r]);
  }
  const Echelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols(), 0);
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.form(i, a.cols());
  return x;
}

}  // namespace brnr
