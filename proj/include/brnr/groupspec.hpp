#pragma once

// Exponent-p central extensions 0 -> V -> G -> U -> 0 presented by their
// commutator table [u_i, u_j] = prod_k v_k^{e_k}. The alternating map
// gamma : wedge^2 U -> V read off this table is all the downstream
// computation ever needs; no group elements are materialized.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "brnr/errors.hpp"
#include "brnr/extalg.hpp"
#include "brnr/fflin.hpp"

namespace brnr {

/// [u_i, u_j] = prod_k v_k^{exponents[k]}, with 1 <= i < j <= n (1-based,
/// as written in presentations).
struct Relation {
  int i = 0;
  int j = 0;
  std::vector<std::int64_t> exponents;

  friend bool operator==(const Relation&, const Relation&) = default;
};

class CentralExtensionSpec {
 public:
  /// Validates indices and exponent lengths, reduces exponents mod p and
  /// combines repeated (i, j) entries additively. Pairs whose combined
  /// exponent vector vanishes are dropped.
  CentralExtensionSpec(PrimeField field, int dim_v, int dim_u, const std::vector<Relation>& relations,
                       std::string name = {})
      : field_(field), m_(dim_v), n_(dim_u), name_(std::move(name)) {
    if (m_ < 0) throw DomainError("center dimension must be non-negative");
    if (n_ < 1) throw DomainError("need at least one generator");
    std::map<std::pair<int, int>, std::vector<std::int64_t>> combined;
    for (const Relation& r : relations) {
      if (r.i < 1 || r.j > n_ || r.i >= r.j) {
        throw DomainError("relation [u" + std::to_string(r.i) + ", u" + std::to_string(r.j) +
                          "] needs 1 <= i < j <= " + std::to_string(n_));
      }
      if (static_cast<int>(r.exponents.size()) != m_) {
        throw DomainError("relation [u" + std::to_string(r.i) + ", u" + std::to_string(r.j) + "] has " +
                          std::to_string(r.exponents.size()) + " exponents, expected " + std::to_string(m_));
      }
      auto& acc = combined.try_emplace({r.i, r.j}, std::vector<std::int64_t>(static_cast<std::size_t>(m_), 0))
                      .first->second;
      for (int k = 0; k < m_; ++k) acc[k] = field_.reduce(acc[k] + field_.reduce(r.exponents[k]));
    }
    for (auto& [key, e] : combined) {
      if (std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; })) continue;
      relations_.push_back({key.first, key.second, std::move(e)});
    }
  }

  const PrimeField& field() const noexcept { return field_; }
  Scalar p() const noexcept { return field_.p(); }
  int dim_v() const noexcept { return m_; }
  int dim_u() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  /// Combined, sorted by (i, j), exponents in [0, p).
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  /// |G| = p^(m + n).
  int order_exponent() const noexcept { return m_ + n_; }

  Vec exponent(int i, int j) const {
    for (const Relation& r : relations_) {
      if (r.i == i && r.j == j) return {r.exponents.begin(), r.exponents.end()};
    }
    return Vec(static_cast<std::size_t>(m_), 0);
  }

 private:
  PrimeField field_;
  int m_;
  int n_;
  std::string name_;
  std::vector<Relation> relations_;
};

/// gamma : wedge^2 U -> V (m x C(n,2)) and its dual V* -> wedge^2 U*
/// (C(n,2) x m). Under the identity Gram pairing the dual is the transpose.
struct GammaMap {
  int m;
  int n;
  Matrix gamma;
  Matrix dual;

  /// gamma^*(v_k^*) as a dual bivector.
  MultiVector dual_image(int k) const {
    return {gamma.field(), n, 2, Side::dual, gamma.row_vec(static_cast<std::size_t>(k))};
  }
};

inline GammaMap build_gamma(const CentralExtensionSpec& spec) {
  const int n = spec.dim_u();
  Matrix g(spec.field(), static_cast<std::size_t>(spec.dim_v()), binomial(n, 2));
  for (const Relation& r : spec.relations()) {
    const std::size_t col = rank_tuple(n, {r.i - 1, r.j - 1});
    for (int k = 0; k < spec.dim_v(); ++k) g(static_cast<std::size_t>(k), col) = static_cast<Scalar>(r.exponents[k]);
  }
  Matrix dual = g.transpose();
  return {spec.dim_v(), n, std::move(g), std::move(dual)};
}

/// True iff gamma is surjective, i.e. the presented V is the whole
/// commutator subgroup. Equivalently gamma^* is injective.
inline bool check_commutator_full(const GammaMap& g) {
  const std::size_t r = rank(g.gamma);
  if (r != rank(g.dual)) throw InternalError("rank of gamma differs from rank of its dual");
  return r == static_cast<std::size_t>(g.m);
}

/// True iff the V-valued alternating form has zero radical: no nonzero
/// u in U commutes (modulo nothing) with every u'. This is Z(G) = V.
inline bool check_center_minimal(const GammaMap& g) {
  const PrimeField& f = g.gamma.field();
  const auto n = static_cast<std::size_t>(g.n);
  Matrix stacked(f, static_cast<std::size_t>(g.m) * n, n);
  for (int k = 0; k < g.m; ++k) {
    for (int i = 0; i < g.n; ++i) {
      for (int l = i + 1; l < g.n; ++l) {
        const Scalar e = g.gamma(static_cast<std::size_t>(k), rank_tuple(g.n, {i, l}));
        // Row (k, l) constrains sum_i u_i gamma_k(e_i ^ e_l); row (k, i) gets the
        // antisymmetric partner.
        stacked(static_cast<std::size_t>(k) * n + static_cast<std::size_t>(l), static_cast<std::size_t>(i)) = e;
        stacked(static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i), static_cast<std::size_t>(l)) = f.neg(e);
      }
    }
  }
  return kernel(stacked).is_zero();
}

/// Throws DomainError unless gamma is surjective; the obstruction pipeline
/// presumes V = [G, G].
inline void validate_for_report(const CentralExtensionSpec& spec) {
  if (!check_commutator_full(build_gamma(spec))) {
    throw DomainError("commutator map is not surjective: the presented center is larger than [G,G]");
  }
}

/// Rebuilds a spec from a gamma matrix (m x C(n,2)).
inline CentralExtensionSpec spec_from_gamma(const Matrix& gamma, int n, std::string name = {}) {
  const int m = static_cast<int>(gamma.rows());
  if (gamma.cols() != binomial(n, 2)) throw DimensionError("gamma has the wrong number of columns");
  std::vector<Relation> rels;
  const auto pairs = all_tuples(n, 2);
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    Relation r{pairs[c][0] + 1, pairs[c][1] + 1, std::vector<std::int64_t>(static_cast<std::size_t>(m))};
    bool any = false;
    for (int k = 0; k < m; ++k) {
      r.exponents[k] = gamma(static_cast<std::size_t>(k), c);
      any = any || r.exponents[k] != 0;
    }
    if (any) rels.push_back(std::move(r));
  }
  return {gamma.field(), m, n, rels, std::move(name)};
}

/// Re-presents G in the basis u'_i = sum_k change(k, i) u_k of U. `change`
/// must be invertible.
inline CentralExtensionSpec change_generator_basis(const CentralExtensionSpec& spec, const Matrix& change) {
  const int n = spec.dim_u();
  const PrimeField& f = spec.field();
  if (change.rows() != static_cast<std::size_t>(n) || change.cols() != static_cast<std::size_t>(n)) {
    throw DimensionError("basis change must be n x n");
  }
  if (rank(change) != static_cast<std::size_t>(n)) throw DomainError("basis change is singular");
  const GammaMap g = build_gamma(spec);
  const auto pairs = all_tuples(n, 2);
  Matrix out(f, static_cast<std::size_t>(spec.dim_v()), pairs.size());
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    const MultiVector a = MultiVector::vector(f, Side::primal, change.col_vec(static_cast<std::size_t>(pairs[c][0])));
    const MultiVector b = MultiVector::vector(f, Side::primal, change.col_vec(static_cast<std::size_t>(pairs[c][1])));
    const Vec image = g.gamma.apply(wedge(a, b).coords());
    for (std::size_t k = 0; k < image.size(); ++k) out(k, c) = image[k];
  }
  return spec_from_gamma(out, n, spec.name());
}

/// Re-presents G with v'-coordinates gamma' = change * gamma (change is an
/// invertible m x m matrix acting on V).
inline CentralExtensionSpec change_center_basis(const CentralExtensionSpec& spec, const Matrix& change) {
  const auto m = static_cast<std::size_t>(spec.dim_v());
  if (change.rows() != m || change.cols() != m) throw DimensionError("center basis change must be m x m");
  if (rank(change) != m) throw DomainError("center basis change is singular");
  return spec_from_gamma(change * build_gamma(spec).gamma, spec.dim_u(), spec.name());
}

// ---------------------------------------------------------------------------
// Builtin catalog

enum class Thm34Sign {
  sec3,     ///< [u1,u6] = v7, so gamma^*(v7^*) = [3,4]+[1,6]
  printed,   ///< [u1,u6]^-1 = v7, so gamma^*(v7^*) = [3,4]-[1,6]
};

struct BuiltinParams {
  std::int64_t p = 3;
  std::int64_t t = 1;
  std::int64_t a = 0;
  std::int64_t b = 1;
  int n = 2;
  Thm34Sign variant = Thm34Sign::sec3;
};

namespace detail {

// One relation with a single nonzero exponent.
inline Relation rel(int i, int j, int m, int k, std::int64_t e = 1) {
  Relation r{i, j, std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
  r.exponents[static_cast<std::size_t>(k - 1)] = e;
  return r;
}

}  // namespace detail

inline CentralExtensionSpec extraspecial(std::int64_t p, int n) {
  if (n < 1) throw DomainError("extraspecial groups need n >= 1");
  const PrimeField f(p);
  std::vector<Relation> rels;
  for (int i = 1; i <= n; ++i) rels.push_back(detail::rel(2 * i - 1, 2 * i, 1, 1));
  return {f, 1, 2 * n, rels, "extraspecial(" + std::to_string(n) + ")"};
}

inline bool quadratic_is_irreducible(const PrimeField& f, std::int64_t a, std::int64_t b) {
  const Scalar ra = f.reduce(a);
  const Scalar rb = f.reduce(b);
  for (Scalar x = 0; x < f.p(); ++x) {
    if (f.add(f.add(f.mul(x, x), f.mul(ra, x)), rb) == 0) return false;
  }
  return true;
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"thm2.4",  "thm2.6", "thm2.7",    "prop3.2",
                                              "prop3.3", "thm3.4", "peyre-p12", "extraspecial"};
  return names;
}

/// The groups of the catalog, transcribed from their commutator tables.
/// Inverse commutators [u_a,u_b]^-1 = v are stored as exponent -1.
inline CentralExtensionSpec builtin(std::string_view name, const BuiltinParams& params) {
  using detail::rel;
  const PrimeField f(params.p);
  const std::string label(name);
  if (name == "thm2.4") {
    return {f, 3, 6,
            {rel(1, 2, 3, 1), rel(3, 4, 3, 1), rel(1, 4, 3, 2), rel(2, 5, 3, 2), rel(3, 6, 3, 2), rel(3, 5, 3, 3),
             rel(4, 6, 3, 3)},
            label};
  }
  if (name == "thm2.6" || name == "thm2.7") {
    std::vector<Relation> rels{rel(1, 2, 3, 1), rel(4, 5, 3, 1, -1), rel(2, 3, 3, 2), rel(5, 6, 3, 2, -1),
                               rel(1, 4, 3, 2), rel(3, 6, 3, 3),     rel(2, 4, 3, 3, -1)};
    if (name == "thm2.6") {
      if (f.reduce(params.t) == 0) throw DomainError("t must be nonzero in F_p");
      // gamma^*(v3^*) = [3,6] - t[1,5] - [2,4].
      rels.push_back(rel(1, 5, 3, 3, -params.t));
    }
    return {f, 3, 6, rels, label};
  }
  if (name == "prop3.2") {
    return {f, 3, 4, {rel(1, 2, 3, 1), rel(1, 3, 3, 2), rel(2, 4, 3, 2), rel(1, 4, 3, 3)}, label};
  }
  if (name == "prop3.3") {
    if (!quadratic_is_irreducible(f, params.a, params.b)) throw DomainError("X^2+aX+b must be irreducible over F_p");
    // (u2,u4) is listed twice; the entries add up to v2 * v3^-a.
    return {f, 3, 4,
            {rel(1, 2, 3, 1), rel(1, 3, 3, 2), rel(2, 4, 3, 2), rel(2, 3, 3, 3), rel(1, 4, 3, 3, -params.b),
             rel(2, 4, 3, 3, -params.a)},
            label};
  }
  if (name == "thm3.4") {
    const std::int64_t s16 = params.variant == Thm34Sign::sec3 ? 1 : -1;
    return {f, 9, 6,
            {rel(1, 2, 9, 1), rel(4, 5, 9, 1, -1), rel(2, 3, 9, 2), rel(5, 6, 9, 2, -1), rel(1, 4, 9, 3),
             rel(2, 5, 9, 4), rel(3, 6, 9, 5), rel(4, 6, 9, 6), rel(3, 4, 9, 7), rel(1, 6, 9, 7, s16), rel(2, 4, 9, 8),
             rel(2, 6, 9, 9)},
            params.variant == Thm34Sign::sec3 ? label : label + " (printed sign)"};
  }
  if (name == "peyre-p12") {
    return {f, 6, 6,
            {rel(1, 2, 6, 1), rel(4, 5, 6, 1, -1), rel(2, 3, 6, 2), rel(5, 6, 6, 2, -1), rel(1, 4, 6, 3),
             rel(2, 5, 6, 4), rel(3, 6, 6, 5), rel(4, 6, 6, 6)},
            label};
  }
  if (name == "extraspecial") return extraspecial(params.p, params.n);
  throw DomainError("unknown builtin '" + label + "'");
}

// ---------------------------------------------------------------------------
// Presentation files
//
//   p = 5
//   center = 3
//   generators = 6
//   rel [u1, u2] = v1
//   rel [u4, u5] = v1^-1 v2^2

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::int64_t integer() {
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer too large");
    }
    if (start == pos_) fail("expected an integer");
    return negative ? -v : v;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline CentralExtensionSpec parse_presentation(std::string_view text, std::string name = {}) {
  std::int64_t p = 0;
  int m = -1;
  int n = -1;
  int header = 0;
  std::vector<Relation> rels;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    static constexpr std::string_view kHeaders[] = {"p", "center", "generators"};
    if (header < 3) {
      const auto eq = line.find('=');
      const std::string_view key = detail::trim(line.substr(0, eq));
      if (eq == std::string_view::npos || key != kHeaders[header]) {
        throw ParseError(line_no, "expected '" + std::string(kHeaders[header]) + " = <value>'");
      }
      detail::LineCursor cur(line.substr(eq + 1), line_no);
      const std::int64_t v = cur.integer();
      if (!cur.at_end()) cur.fail("trailing characters after value");
      if (header == 0) {
        p = v;
      } else if (v < 0 || v > 64) {
        cur.fail("dimension out of range");
      } else if (header == 1) {
        m = static_cast<int>(v);
      } else {
        n = static_cast<int>(v);
        if (n < 1) cur.fail("need at least one generator");
      }
      ++header;
      continue;
    }

    if (line.substr(0, 3) != "rel" || (line.size() > 3 && !std::isspace(static_cast<unsigned char>(line[3])) &&
                                       line[3] != '[')) {
      throw ParseError(line_no, "unknown directive '" + std::string(line.substr(0, line.find(' '))) + "'");
    }
    detail::LineCursor cur(line.substr(3), line_no);
    cur.expect('[');
    cur.expect('u');
    const std::int64_t i = cur.integer();
    cur.expect(',');
    cur.expect('u');
    const std::int64_t j = cur.integer();
    cur.expect(']');
    cur.expect('=');
    if (i < 1 || i > n || j < 1 || j > n) cur.fail("generator index outside 1.." + std::to_string(n));
    if (i >= j) cur.fail("relation [u" + std::to_string(i) + ", u" + std::to_string(j) + "] needs i < j");
    Relation r{static_cast<int>(i), static_cast<int>(j), std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
    bool any_factor = false;
    while (!cur.at_end()) {
      if (cur.accept('1')) {  // identity
        any_factor = true;
        continue;
      }
      cur.expect('v');
      const std::int64_t k = cur.integer();
      if (k < 1 || k > m) cur.fail("center index outside 1.." + std::to_string(m));
      std::int64_t e = 1;
      if (cur.accept('^')) {
        const bool braced = cur.accept('{');
        e = cur.integer();
        if (braced) cur.expect('}');
      }
      r.exponents[static_cast<std::size_t>(k - 1)] += e;
      any_factor = true;
    }
    if (!any_factor) cur.fail("missing right-hand side");
    rels.push_back(std::move(r));
  }
  if (header < 3) throw ParseError(line_no, "incomplete header: expected p, center and generators");
  return {PrimeField(p), m, n, rels, std::move(name)};
}

inline std::string format_presentation(const CentralExtensionSpec& spec) {
  std::ostringstream out;
  if (!spec.name().empty()) out << "# " << spec.name() << '\n';
  out << "p = " << spec.p() << "\ncenter = " << spec.dim_v() << "\ngenerators = " << spec.dim_u() << '\n';
  for (const Relation& r : spec.relations()) {
    out << "rel [u" << r.i << ", u" << r.j << "] =";
    for (int k = 0; k < spec.dim_v(); ++k) {
      const std::int64_t e = spec.field().signed_rep(static_cast<Scalar>(r.exponents[k]));
      if (e == 0) continue;
      out << " v" << k + 1;
      if (e != 1) out << '^' << e;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace brnr
