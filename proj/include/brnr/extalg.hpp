#pragma once

// Exterior powers of an n-dimensional space U (and of its dual U*) over F_p.
//
// Coordinates of a degree-d multivector are indexed by strictly increasing
// index tuples in lexicographic order, so the coordinate vector has C(n, d)
// entries. Indices are 0-based internally and rendered 1-based, in the
// (i,j,k) / [i,j,k] abbreviations for U and U* respectively.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brnr/errors.hpp"
#include "brnr/fflin.hpp"

namespace brnr {

using IndexTuple = std::vector<int>;

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

inline bool is_index_tuple(int n, const IndexTuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0 || t[i] >= n) return false;
    if (i > 0 && t[i] <= t[i - 1]) return false;
  }
  return true;
}

/// Lexicographic rank of a strictly increasing tuple among all d-subsets of
/// {0, ..., n-1}.
inline std::size_t rank_tuple(int n, const IndexTuple& t) {
  if (!is_index_tuple(n, t)) throw DimensionError("not a strictly increasing index tuple in range");
  const int d = static_cast<int>(t.size());
  std::uint64_t r = 0;
  int prev = -1;
  for (int k = 0; k < d; ++k) {
    for (int j = prev + 1; j < t[k]; ++j) r += binomial(n - 1 - j, d - 1 - k);
    prev = t[k];
  }
  return static_cast<std::size_t>(r);
}

inline IndexTuple unrank_tuple(int n, int d, std::size_t rank) {
  if (rank >= binomial(n, d)) throw DimensionError("tuple rank out of range");
  IndexTuple t;
  std::uint64_t r = rank;
  int j = 0;
  for (int k = 0; k < d; ++k) {
    while (true) {
      const std::uint64_t block = binomial(n - 1 - j, d - 1 - k);
      if (r < block) break;
      r -= block;
      ++j;
    }
    t.push_back(j++);
  }
  return t;
}

inline std::vector<IndexTuple> all_tuples(int n, int d) {
  std::vector<IndexTuple> out;
  if (d < 0 || d > n) return out;
  IndexTuple t(static_cast<std::size_t>(d));
  std::iota(t.begin(), t.end(), 0);
  while (true) {
    out.push_back(t);
    int k = d - 1;
    while (k >= 0 && t[k] == n - d + k) --k;
    if (k < 0) break;
    ++t[k];
    for (int i = k + 1; i < d; ++i) t[i] = t[i - 1] + 1;
  }
  return out;
}

namespace detail {

inline std::uint64_t tuple_mask(const IndexTuple& t) {
  std::uint64_t m = 0;
  for (int i : t) m |= std::uint64_t{1} << i;
  return m;
}

inline IndexTuple mask_tuple(std::uint64_t m) {
  IndexTuple t;
  for (int i = 0; m != 0; ++i, m >>= 1U) {
    if (m & 1U) t.push_back(i);
  }
  return t;
}

// Number of pairs (x in a, y in b) with x > y; the sign of moving the
// concatenation a|b into sorted order is (-1)^this.
inline int merge_inversions(std::uint64_t a, std::uint64_t b) {
  int inv = 0;
  while (b != 0) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    inv += std::popcount(a >> (y + 1));
  }
  return inv;
}

}  // namespace detail

enum class Side { primal, dual };

inline const char* side_name(Side s) { return s == Side::primal ? "primal" : "dual"; }

/// An element of the degree-d exterior power of U (primal) or U* (dual).
class MultiVector {
 public:
  MultiVector(PrimeField field, int n, int d, Side side)
      : field_(field), n_(n), d_(d), side_(side), coords_(binomial(n, d), 0) {
    if (n < 0 || d < 0) throw DimensionError("negative dimension or degree");
  }
  MultiVector(PrimeField field, int n, int d, Side side, Vec coords) : MultiVector(field, n, d, side) {
    if (coords.size() != coords_.size()) {
      throw DimensionError("expected " + std::to_string(coords_.size()) + " coordinates, got " +
                           std::to_string(coords.size()));
    }
    for (std::size_t i = 0; i < coords.size(); ++i) coords_[i] = field.reduce(coords[i]);
  }

  /// e_{t1} ^ ... ^ e_{td}, for a strictly increasing tuple.
  static MultiVector basis(PrimeField field, int n, const IndexTuple& t, Side side) {
    MultiVector v(field, n, static_cast<int>(t.size()), side);
    v.coords_[rank_tuple(n, t)] = 1;
    return v;
  }
  static MultiVector vector(PrimeField field, Side side, const Vec& coords) {
    return {field, static_cast<int>(coords.size()), 1, side, coords};
  }

  const PrimeField& field() const noexcept { return field_; }
  int n() const noexcept { return n_; }
  int degree() const noexcept { return d_; }
  Side side() const noexcept { return side_; }
  const Vec& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }

  Scalar coeff(const IndexTuple& t) const { return coords_[rank_tuple(n_, t)]; }
  void set_coeff(const IndexTuple& t, Scalar c) { coords_[rank_tuple(n_, t)] = field_.reduce(c); }

  bool is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](Scalar x) { return x == 0; });
  }

  MultiVector& operator+=(const MultiVector& o) {
    require_like(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = field_.add(coords_[i], o.coords_[i]);
    return *this;
  }
  MultiVector& operator-=(const MultiVector& o) {
    require_like(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = field_.sub(coords_[i], o.coords_[i]);
    return *this;
  }
  MultiVector scaled(Scalar c) const {
    MultiVector out = *this;
    for (Scalar& x : out.coords_) x = field_.mul(x, field_.reduce(c));
    return out;
  }

  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend bool operator==(const MultiVector&, const MultiVector&) = default;

  /// Primal and dual vectors never mix through addition.
  void require_like(const MultiVector& o) const {
    require_same_field(field_, o.field_);
    if (n_ != o.n_ || d_ != o.d_) throw DimensionError("multivectors of different shape");
    if (side_ != o.side_) throw DimensionError("cannot combine primal and dual multivectors");
  }

 private:
  PrimeField field_;
  int n_;
  int d_;
  Side side_;
  Vec coords_;
};

/// a ^ b. The result has degree d1 + d2 and is zero when that exceeds n.
inline MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  require_same_field(a.field(), b.field());
  if (a.n() != b.n()) throw DimensionError("wedge of multivectors over different spaces");
  if (a.side() != b.side()) throw DimensionError("wedge of a primal and a dual multivector");
  const int n = a.n();
  const PrimeField& f = a.field();
  MultiVector out(f, n, a.degree() + b.degree(), a.side());
  if (out.size() == 0) return out;
  const auto ta = all_tuples(n, a.degree());
  const auto tb = all_tuples(n, b.degree());
  std::vector<std::uint64_t> mb(tb.size());
  for (std::size_t j = 0; j < tb.size(); ++j) mb[j] = detail::tuple_mask(tb[j]);
  Vec coords = out.coords();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const Scalar ca = a.coords()[i];
    if (ca == 0) continue;
    const std::uint64_t ma = detail::tuple_mask(ta[i]);
    for (std::size_t j = 0; j < tb.size(); ++j) {
      const Scalar cb = b.coords()[j];
      if (cb == 0 || (ma & mb[j]) != 0) continue;
      const std::size_t r = rank_tuple(n, detail::mask_tuple(ma | mb[j]));
      Scalar term = f.mul(ca, cb);
      if (detail::merge_inversions(ma, mb[j]) % 2 != 0) term = f.neg(term);
      coords[r] = f.add(coords[r], term);
    }
  }
  return {f, n, out.degree(), out.side(), std::move(coords)};
}

/// <<s, f>> for s in the d-th power of U and f in the d-th power of U*.
/// On basis tuples this is the signed permutation sum
///   sum over tau of sgn(tau) * f_1(u_tau(1)) * ... * f_d(u_tau(d)),
/// which is 1 on equal tuples and 0 otherwise (see pairing_gram), so it
/// reduces to the coordinate dot product.
inline Scalar pairing(const MultiVector& s, const MultiVector& f) {
  require_same_field(s.field(), f.field());
  if (s.side() != Side::primal || f.side() != Side::dual) {
    throw DimensionError("pairing takes a primal multivector and a dual multivector");
  }
  if (s.n() != f.n() || s.degree() != f.degree()) throw DimensionError("pairing of mismatched degree or dimension");
  std::uint64_t acc = 0;
  const Scalar p = s.field().p();
  for (std::size_t i = 0; i < s.size(); ++i) acc = (acc + std::uint64_t{s.coords()[i]} * f.coords()[i]) % p;
  return static_cast<Scalar>(acc);
}

/// Signed permutation sum of the product f_a(u_b) over permutations, for
/// dual basis covectors indexed by `dual` and basis vectors indexed by
/// `primal` (both of length d, any order).
inline Scalar alternating_form_value(const PrimeField& field, const IndexTuple& dual, const IndexTuple& primal) {
  const std::size_t d = dual.size();
  if (primal.size() != d) throw DimensionError("degree mismatch in alternating form");
  std::vector<std::size_t> tau(d);
  std::iota(tau.begin(), tau.end(), 0);
  std::int64_t total = 0;
  do {
    bool nonzero = true;
    for (std::size_t a = 0; a < d && nonzero; ++a) nonzero = dual[a] == primal[tau[a]];
    if (!nonzero) continue;
    int inversions = 0;
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = x + 1; y < d; ++y) inversions += tau[x] > tau[y] ? 1 : 0;
    total += inversions % 2 == 0 ? 1 : -1;
  } while (std::next_permutation(tau.begin(), tau.end()));
  return field.reduce(total);
}

/// Gram matrix of the pairing on standard basis tuples, evaluated from the
/// permutation-sum definition rather than assumed.
inline Matrix pairing_gram(const PrimeField& field, int n, int d) {
  const auto tuples = all_tuples(n, d);
  Matrix g(field, tuples.size(), tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i)
    for (std::size_t j = 0; j < tuples.size(); ++j) g(i, j) = alternating_form_value(field, tuples[j], tuples[i]);
  return g;
}

/// Sparse table of e_I ^ e_k for every degree-d tuple I and index k: the
/// target coordinate and sign, or no entry when k is in I.
class WedgeTable {
 public:
  struct Entry {
    std::size_t target;
    bool negative;
  };

  WedgeTable(int n, int d) : n_(n), d_(d), entries_(binomial(n, d) * static_cast<std::size_t>(n)) {
    const auto tuples = all_tuples(n, d);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const std::uint64_t m = detail::tuple_mask(tuples[i]);
      for (int k = 0; k < n; ++k) {
        const std::uint64_t bit = std::uint64_t{1} << k;
        if ((m & bit) != 0) continue;
        const bool neg = detail::merge_inversions(m, bit) % 2 != 0;
        entries_[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] =
            Entry{rank_tuple(n, detail::mask_tuple(m | bit)), neg};
      }
    }
  }

  int n() const noexcept { return n_; }
  int degree() const noexcept { return d_; }
  const std::optional<Entry>& at(std::size_t tuple_rank, int k) const {
    return entries_[tuple_rank * static_cast<std::size_t>(n_) + static_cast<std::size_t>(k)];
  }

 private:
  int n_;
  int d_;
  std::vector<std::optional<Entry>> entries_;
};

/// Matrix of u |-> w ^ u from U to the (d+1)-th power, in standard
/// coordinates: C(n, d+1) rows, n columns.
inline Matrix wedge_vector_map(const MultiVector& w) {
  if (w.side() != Side::primal) throw DimensionError("wedge_vector_map expects a primal multivector");
  const int n = w.n();
  const PrimeField& f = w.field();
  Matrix m(f, binomial(n, w.degree() + 1), static_cast<std::size_t>(n));
  if (m.rows() == 0) return m;
  const WedgeTable table(n, w.degree());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Scalar c = w.coords()[i];
    if (c == 0) continue;
    for (int k = 0; k < n; ++k) {
      if (const auto& e = table.at(i, k)) {
        Scalar& cell = m(e->target, static_cast<std::size_t>(k));
        cell = e->negative ? f.sub(cell, c) : f.add(cell, c);
      }
    }
  }
  return m;
}

/// A nonzero u0 with w ^ u0 = 0 when one exists (the first canonical basis
/// vector of the kernel of wedge_vector_map), otherwise nullopt. Such a u0
/// exists exactly when w = u' ^ u0 for some u' of degree d - 1.
inline std::optional<Vec> partial_decomposability_witness(const MultiVector& w) {
  if (w.is_zero()) throw DomainError("decomposability test of the zero multivector");
  if (w.degree() < 1 || w.degree() > w.n()) throw DimensionError("degree must satisfy 1 <= d <= n");
  const Subspace k = kernel(wedge_vector_map(w));
  if (k.is_zero()) return std::nullopt;
  return k.basis().front();
}

/// Some u' with u' ^ u0 = w, or nullopt when none exists.
inline std::optional<MultiVector> cofactor(const MultiVector& w, const Vec& u0) {
  if (w.side() != Side::primal) throw DimensionError("cofactor expects a primal multivector");
  if (static_cast<int>(u0.size()) != w.n()) throw DimensionError("cofactor: vector length differs from n");
  const int n = w.n();
  const int dm = w.degree() - 1;
  if (dm < 0) return std::nullopt;
  const PrimeField& f = w.field();
  const MultiVector u = MultiVector::vector(f, Side::primal, u0);
  const auto tuples = all_tuples(n, dm);
  Matrix a(f, w.size(), tuples.size());
  for (std::size_t j = 0; j < tuples.size(); ++j) {
    const MultiVector col = wedge(MultiVector::basis(f, n, tuples[j], Side::primal), u);
    for (std::size_t r = 0; r < col.size(); ++r) a(r, j) = col.coords()[r];
  }
  auto x = solve(a, w.coords());
  if (!x) return std::nullopt;
  return MultiVector(f, n, dm, Side::primal, std::move(*x));
}

/// Renders in the abbreviated notation, e.g. "(1,2)-(3,4)+2(1,5)" or
/// "[1,2,3]-[3,4,5]". Coefficients use representatives in (-p/2, p/2].
inline std::string to_string(const MultiVector& v) {
  const char open = v.side() == Side::primal ? '(' : '[';
  const char close = v.side() == Side::primal ? ')' : ']';
  std::string out;
  const auto tuples = all_tuples(v.n(), v.degree());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t c = v.field().signed_rep(v.coords()[i]);
    if (c == 0) continue;
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    const std::int64_t mag = c < 0 ? -c : c;
    if (v.degree() == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += open;
    for (std::size_t k = 0; k < tuples[i].size(); ++k) {
      if (k > 0) out += ',';
      out += std::to_string(tuples[i][k] + 1);
    }
    out += close;
  }
  return out.empty() ? "0" : out;
}

/// Parses the notation produced by to_string. Tuples may be unsorted
/// ("(5,6,1)" is read with the sign of the sorting permutation) and a repeated
/// index makes the term vanish. An optional '*' may separate a coefficient
/// from its tuple. Degree and side come from the first tuple.
inline MultiVector parse_multivector(std::string_view text, const PrimeField& field, int n,
                                     std::optional<Side> expected_side = std::nullopt) {
  struct Term {
    std::int64_t coef;
    IndexTuple indices;
    Side side;
  };
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> std::optional<std::int64_t> {
    skip_ws();
    const std::size_t start = pos;
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > PrimeField::kMaxModulus * 4) throw ParseError("integer too large in multivector expression");
      ++pos;
    }
    if (pos == start) return std::nullopt;
    return v;
  };
  auto fail = [&](const std::string& what) {
    throw ParseError("multivector expression, column " + std::to_string(pos + 1) + ": " + what);
  };

  skip_ws();
  if (pos == text.size()) fail("empty expression");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    std::int64_t sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    std::int64_t coef = read_int().value_or(1);
    skip_ws();
    if (pos < text.size() && text[pos] == '*') ++pos;
    skip_ws();
    if (pos == text.size() || (text[pos] != '(' && text[pos] != '[')) fail("expected '(' or '['");
    const Side side = text[pos] == '(' ? Side::primal : Side::dual;
    const char close = side == Side::primal ? ')' : ']';
    ++pos;
    IndexTuple idx;
    while (true) {
      const auto i = read_int();
      if (!i) fail("expected an index");
      if (*i < 1 || *i > n) fail("index " + std::to_string(*i) + " outside 1.." + std::to_string(n));
      idx.push_back(static_cast<int>(*i) - 1);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == close) {
        ++pos;
        break;
      }
      fail(std::string("expected ',' or '") + close + "'");
    }
    terms.push_back({sign * coef, std::move(idx), side});
  }

  const int d = static_cast<int>(terms.front().indices.size());
  const Side side = terms.front().side;
  if (expected_side && *expected_side != side) {
    throw ParseError(std::string("expected a ") + side_name(*expected_side) + " expression");
  }
  MultiVector out(field, n, d, side);
  Vec coords = out.coords();
  for (Term& t : terms) {
    if (static_cast<int>(t.indices.size()) != d || t.side != side) throw ParseError("terms of mixed degree or side");
    int inversions = 0;
    for (std::size_t a = 0; a < t.indices.size(); ++a)
      for (std::size_t b = a + 1; b < t.indices.size(); ++b) inversions += t.indices[a] > t.indices[b] ? 1 : 0;
    std::sort(t.indices.begin(), t.indices.end());
    if (std::adjacent_find(t.indices.begin(), t.indices.end()) != t.indices.end()) continue;
    const std::size_t r = rank_tuple(n, t.indices);
    const Scalar c = field.reduce(inversions % 2 == 0 ? t.coef : -t.coef);
    coords[r] = field.add(coords[r], c);
  }
  return {field, n, d, side, std::move(coords)};
}

}  // namespace brnr
