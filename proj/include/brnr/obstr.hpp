#pragma once

// The K / S / S_dec / K_max pipeline.
//
//   K2 = gamma^*(V^*)            K3 = K2 ^ U^*
//   S^d = annihilator of K^d in wedge^d U
//   S^d_dec = span of the elements u' ^ u of S^d (u in U)
//   K^d_max = annihilator of S^d_dec in wedge^d U^*
//
// dim K2_max/K2 is the F_p-dimension of the unramified Brauer group of C(G);
// K3_max/K3 is a subgroup of the degree-three unramified cohomology, so its
// dimension is only a lower bound there.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "brnr/errors.hpp"
#include "brnr/extalg.hpp"
#include "brnr/fflin.hpp"
#include "brnr/groupspec.hpp"

namespace brnr {

/// Calls `visit(u)` once per point of the projective space P(F_p^k), with
/// the first nonzero coordinate normalized to 1. Points come in order of
/// increasing support size, so the coordinate axes are visited first.
/// Stops early when `visit` returns false.
inline void for_each_projective_point(const PrimeField& f, int k, const std::function<bool(const Vec&)>& visit) {
  Vec u(static_cast<std::size_t>(k), 0);
  for (int weight = 1; weight <= k; ++weight) {
    for (const IndexTuple& support : all_tuples(k, weight)) {
      // Odometer over the (p-1)^(weight-1) nonzero values of the trailing
      // support coordinates.
      std::vector<Scalar> digits(static_cast<std::size_t>(weight), 1);
      while (true) {
        std::fill(u.begin(), u.end(), 0);
        for (int i = 0; i < weight; ++i) u[static_cast<std::size_t>(support[i])] = digits[static_cast<std::size_t>(i)];
        if (!visit(u)) return;
        int pos = weight - 1;
        while (pos >= 1 && digits[static_cast<std::size_t>(pos)] == f.p() - 1) digits[static_cast<std::size_t>(pos--)] = 1;
        if (pos < 1) break;
        ++digits[static_cast<std::size_t>(pos)];
      }
    }
  }
}

/// (p^k - 1) / (p - 1), saturating at UINT64_MAX.
inline std::uint64_t projective_point_count(Scalar p, int k) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (int i = 0; i < k; ++i) {
    if (total > UINT64_MAX - power) return UINT64_MAX;
    total += power;
    if (power > UINT64_MAX / p) power = UINT64_MAX;
    else power *= p;
  }
  return total;
}

inline Subspace compute_k2(const GammaMap& g) { return row_space(g.gamma); }

/// span{ f ^ u_j^* : f in a basis of k2, 1 <= j <= n }.
inline Subspace compute_k3(const Subspace& k2, int n) {
  if (k2.ambient_dim() != binomial(n, 2)) throw DimensionError("K2 does not live in wedge^2 U^*");
  const PrimeField& f = k2.field();
  const WedgeTable table(n, 2);
  EchelonBasis acc(f, binomial(n, 3));
  for (const Vec& b : k2.basis()) {
    for (int j = 0; j < n; ++j) {
      Vec v(acc.ambient_dim(), 0);
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        if (const auto& e = table.at(i, j)) v[e->target] = e->negative ? f.sub(v[e->target], b[i]) : f.add(v[e->target], b[i]);
      }
      acc.insert(v);
    }
  }
  return Subspace(std::move(acc));
}

namespace detail {

inline bool is_identity(const Matrix& g) {
  if (g.rows() != g.cols()) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) != (i == j ? 1U : 0U)) return false;
  return true;
}

// Annihilator under the degree-d pairing. The Gram matrix is rebuilt from
// the permutation-sum definition; when it is the identity (it always is)
// the rank check of the generic annihilator is skipped.
inline Subspace pairing_annihilator(const Subspace& s, int n, int d, bool transpose) {
  if (s.ambient_dim() != binomial(n, d)) throw DimensionError("subspace does not live in wedge^d");
  Matrix gram = pairing_gram(s.field(), n, d);
  if (transpose) gram = gram.transpose();
  if (!is_identity(gram)) return annihilator(s, gram);
  Matrix rows = s.basis_matrix();
  return kernel(rows);
}

}  // namespace detail

/// (K^d)^perp in wedge^d U.
inline Subspace compute_s(const Subspace& k, int n, int d) { return detail::pairing_annihilator(k, n, d, false); }

/// (S^d_dec)^perp in wedge^d U^*.
inline Subspace compute_kmax(const Subspace& s_dec, int n, int d) {
  return detail::pairing_annihilator(s_dec, n, d, true);
}

/// Span of the elements of `s` of the form u' ^ u with u in U.
///
/// An element w is of that form iff w ^ u0 = 0 for some nonzero u0, so the
/// span is the sum over projective points [u] of s intersected with the
/// kernel of w |-> w ^ u. The sweep stops once the sum reaches s.
inline Subspace compute_s_dec(const Subspace& s, int n, int d) {
  if (s.ambient_dim() != binomial(n, d)) throw DimensionError("subspace does not live in wedge^d U");
  const PrimeField& f = s.field();
  EchelonBasis acc(f, s.ambient_dim());
  if (s.is_zero() || d + 1 > n) {
    // d = n: every element is a multiple of u1 ^ ... ^ un, hence decomposable.
    if (d == n) return s;
    return Subspace(std::move(acc));
  }
  const std::size_t rows = binomial(n, d + 1);
  const std::size_t cols = s.dim();
  const WedgeTable table(n, d);
  // per_axis[k] is the matrix of w |-> w ^ e_k restricted to s.
  std::vector<Matrix> per_axis;
  for (int k = 0; k < n; ++k) {
    Matrix mk(f, rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const Vec& b = s.basis()[c];
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        if (const auto& e = table.at(i, k)) {
          Scalar& cell = mk(e->target, c);
          cell = e->negative ? f.sub(cell, b[i]) : f.add(cell, b[i]);
        }
      }
    }
    per_axis.push_back(std::move(mk));
  }

  Matrix m(f, rows, cols);
  for_each_projective_point(f, n, [&](const Vec& u) {
    m.fill(0);
    for (int k = 0; k < n; ++k) {
      const Scalar uk = u[static_cast<std::size_t>(k)];
      if (uk == 0) continue;
      const Matrix& mk = per_axis[static_cast<std::size_t>(k)];
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.fma(m(r, c), uk, mk(r, c));
    }
    const Subspace coeffs = kernel(m);
    for (const Vec& a : coeffs.basis()) {
      Vec w(s.ambient_dim(), 0);
      for (std::size_t c = 0; c < cols; ++c) {
        if (a[c] == 0) continue;
        const Vec& b = s.basis()[c];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = f.fma(w[i], a[c], b[i]);
      }
      acc.insert(w);
    }
    return acc.dim() < s.dim();
  });
  return Subspace(std::move(acc));
}

/// Basis vectors of `outer` that extend `inner` to a basis of `outer`,
/// taken greedily in canonical order.
inline std::vector<Vec> complement_basis(const Subspace& inner, const Subspace& outer) {
  inner.require_compatible(outer);
  EchelonBasis acc = inner.echelon();
  std::vector<Vec> out;
  for (const Vec& v : outer.basis()) {
    if (acc.insert(v)) out.push_back(v);
  }
  return out;
}

struct ObstructionReport {
  std::string name;
  PrimeField field;
  int m;
  int n;
  bool center_minimal;
  Subspace k2, s2, s2dec, k2max;
  Subspace k3, s3, s3dec, k3max;
  /// Completions of S^d_dec's basis to a basis of S^d.
  std::vector<MultiVector> brnr_witnesses;
  std::vector<MultiVector> h3_witnesses;

  int order_exponent() const noexcept { return m + n; }
  /// dim K2_max / K2 = dim Br_nr(C(G)).
  int brnr_dim() const noexcept { return static_cast<int>(k2max.dim()) - static_cast<int>(k2.dim()); }
  /// dim K3_max / K3, a lower bound for the dimension of H3_nr(C(G), Q/Z).
  int h3_lower_dim() const noexcept { return static_cast<int>(k3max.dim()) - static_cast<int>(k3.dim()); }
};

inline ObstructionReport report(const CentralExtensionSpec& spec) {
  validate_for_report(spec);
  const int n = spec.dim_u();
  const PrimeField& f = spec.field();
  const GammaMap g = build_gamma(spec);
  Subspace k2 = compute_k2(g);
  Subspace k3 = compute_k3(k2, n);
  Subspace s2 = compute_s(k2, n, 2);
  Subspace s3 = compute_s(k3, n, 3);
  Subspace s2dec = compute_s_dec(s2, n, 2);
  Subspace s3dec = compute_s_dec(s3, n, 3);
  Subspace k2max = compute_kmax(s2dec, n, 2);
  Subspace k3max = compute_kmax(s3dec, n, 3);

  auto as_multivectors = [&](const std::vector<Vec>& vs, int d) {
    std::vector<MultiVector> out;
    for (const Vec& v : vs) out.emplace_back(f, n, d, Side::primal, v);
    return out;
  };
  ObstructionReport r{spec.name(),
                      f,
                      spec.dim_v(),
                      n,
                      check_center_minimal(g),
                      std::move(k2),
                      std::move(s2),
                      std::move(s2dec),
                      std::move(k2max),
                      std::move(k3),
                      std::move(s3),
                      std::move(s3dec),
                      std::move(k3max),
                      {},
                      {}};
  r.brnr_witnesses = as_multivectors(complement_basis(r.s2dec, r.s2), 2);
  r.h3_witnesses = as_multivectors(complement_basis(r.s3dec, r.s3), 3);

  auto require = [](bool ok, const char* what) {
    if (!ok) throw InternalError(std::string("report invariant violated: ") + what);
  };
  require(r.s2.contains(r.s2dec) && r.s3.contains(r.s3dec), "S_dec is contained in S");
  require(r.k2max.contains(r.k2) && r.k3max.contains(r.k3), "K is contained in K_max");
  require(r.brnr_dim() == static_cast<int>(r.s2.dim()) - static_cast<int>(r.s2dec.dim()), "degree-2 duality");
  require(r.h3_lower_dim() == static_cast<int>(r.s3.dim()) - static_cast<int>(r.s3dec.dim()), "degree-3 duality");
  return r;
}

// ---------------------------------------------------------------------------
// Independent oracles. Neither uses the w ^ u0 = 0 criterion.

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  return (a != 0 && b > UINT64_MAX / a) ? UINT64_MAX : a * b;
}

/// Element-wise variant of the factor search: for every projective point [w]
/// of s and every projective point [u] of U, solves u' ^ u = w for u'
/// directly.
inline Subspace sdec_by_elements(const Subspace& s, int n, int d) {
  const PrimeField& f = s.field();
  const auto left_dim = binomial(n, d - 1);
  std::vector<Matrix> maps;
  for_each_projective_point(f, n, [&](const Vec& u) {
    Matrix m(f, s.ambient_dim(), left_dim);
    const MultiVector uv = MultiVector::vector(f, Side::primal, u);
    for (std::size_t j = 0; j < left_dim; ++j) {
      const MultiVector prod = wedge(MultiVector::basis(f, n, unrank_tuple(n, d - 1, j), Side::primal), uv);
      for (std::size_t r = 0; r < prod.size(); ++r) m(r, j) = prod.coords()[r];
    }
    maps.push_back(std::move(m));
    return true;
  });
  EchelonBasis acc(f, s.ambient_dim());
  const int k = static_cast<int>(s.dim());
  for_each_projective_point(f, k, [&](const Vec& a) {
    Vec w(s.ambient_dim(), 0);
    for (int i = 0; i < k; ++i)
      for (std::size_t c = 0; c < w.size(); ++c) w[c] = f.fma(w[c], a[static_cast<std::size_t>(i)], s.basis()[i][c]);
    for (const Matrix& m : maps) {
      if (solve(m, w)) {
        acc.insert(w);
        break;
      }
    }
    return acc.dim() < s.dim();
  });
  return Subspace(std::move(acc));
}

}  // namespace detail

/// Brute-force S_dec from the definition, without the w ^ u0 = 0 criterion.
/// Enumerates every pair (u', u) with u' in wedge^(d-1) U and u in U (one
/// representative per projective point of each factor) and spans the
/// products u' ^ u that land in s. When s is small it is cheaper to run over
/// the projective points [w] of s and points [u] of U and solve u' ^ u = w;
/// the cheaper plan is used. Refuses with BudgetExceeded when the cheaper
/// count still exceeds `budget`.
inline Subspace sdec_oracle(const Subspace& s, int n, int d, std::uint64_t budget) {
  if (d < 1) throw DomainError("degree must be at least 1");
  if (s.ambient_dim() != binomial(n, d)) throw DimensionError("subspace does not live in wedge^d U");
  const PrimeField& f = s.field();
  const int left_dim = static_cast<int>(binomial(n, d - 1));
  const std::uint64_t right = projective_point_count(f.p(), n);
  const std::uint64_t pairs = detail::saturating_mul(projective_point_count(f.p(), left_dim), right);
  const std::uint64_t elements =
      detail::saturating_mul(projective_point_count(f.p(), static_cast<int>(s.dim())), right);
  if (std::min(pairs, elements) > budget) {
    throw BudgetExceeded("S_dec oracle needs " + std::to_string(std::min(pairs, elements)) +
                         " enumeration steps, budget is " + std::to_string(budget));
  }
  EchelonBasis acc(f, s.ambient_dim());
  if (s.is_zero()) return Subspace(std::move(acc));
  if (elements < pairs) return detail::sdec_by_elements(s, n, d);
  const WedgeTable table(n, d - 1);
  std::vector<Vec> products(static_cast<std::size_t>(n), Vec(s.ambient_dim()));
  for_each_projective_point(f, left_dim, [&](const Vec& left_factor) {
    // products[k] = u' ^ e_k
    for (int k = 0; k < n; ++k) {
      Vec& pk = products[static_cast<std::size_t>(k)];
      std::fill(pk.begin(), pk.end(), 0);
      for (std::size_t i = 0; i < left_factor.size(); ++i) {
        const Scalar c = left_factor[i];
        if (c == 0) continue;
        if (const auto& e = table.at(i, k)) pk[e->target] = e->negative ? f.sub(pk[e->target], c) : f.add(pk[e->target], c);
      }
    }
    for_each_projective_point(f, n, [&](const Vec& u) {
      Vec w(s.ambient_dim(), 0);
      for (int k = 0; k < n; ++k) {
        const Scalar uk = u[static_cast<std::size_t>(k)];
        if (uk == 0) continue;
        const Vec& pk = products[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = f.fma(w[i], uk, pk[i]);
      }
      if (s.contains(w)) acc.insert(w);
      return true;
    });
    return acc.dim() < s.dim();
  });
  return Subspace(std::move(acc));
}

/// Bivector-only oracle: the span of {w in s : w ^ w = 0}, found by
/// enumerating all p^dim(s) elements of s. For p odd, w ^ w = 0 exactly when
/// w is a product of two vectors.
inline Subspace plucker_oracle_s2(const Subspace& s, int n, std::uint64_t budget) {
  if (s.ambient_dim() != binomial(n, 2)) throw DimensionError("subspace does not live in wedge^2 U");
  const PrimeField& f = s.field();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (count > budget / f.p()) {
      throw BudgetExceeded("Plucker oracle needs p^" + std::to_string(s.dim()) + " elements, budget is " +
                           std::to_string(budget));
    }
    count *= f.p();
  }
  if (count > budget) throw BudgetExceeded("Plucker oracle exceeds budget " + std::to_string(budget));

  // Products e_I ^ e_J for I < J, taken from the general wedge once.
  struct Term {
    std::size_t i, j, target;
    Scalar sign;
  };
  std::vector<Term> terms;
  const auto pairs = all_tuples(n, 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const MultiVector prod = wedge(MultiVector::basis(f, n, pairs[i], Side::primal),
                                     MultiVector::basis(f, n, pairs[j], Side::primal));
      for (std::size_t t = 0; t < prod.size(); ++t) {
        if (prod.coords()[t] != 0) terms.push_back({i, j, t, prod.coords()[t]});
      }
    }
  }

  EchelonBasis acc(f, s.ambient_dim());
  const std::size_t dim = s.dim();
  if (dim == 0) return Subspace(std::move(acc));
  Vec w(s.ambient_dim(), 0);
  Vec square(binomial(n, 4), 0);
  std::vector<Scalar> digits(dim, 0);
  while (true) {
    // Odometer step: every digit that ticks (including carries wrapping p-1
    // to 0) adds its basis vector once, since p * b = 0.
    std::size_t pos = 0;
    while (pos < dim) {
      const Vec& b = s.basis()[pos];
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = f.add(w[i], b[i]);
      digits[pos] = digits[pos] + 1 == f.p() ? 0 : digits[pos] + 1;
      if (digits[pos] != 0) break;
      ++pos;
    }
    if (pos == dim) break;  // wrapped back to zero

    std::fill(square.begin(), square.end(), 0);
    for (const Term& t : terms) {
      if (w[t.i] == 0 || w[t.j] == 0) continue;
      square[t.target] = f.fma(square[t.target], f.mul(w[t.i], w[t.j]), t.sign);
    }
    // w ^ w = 2 * sum_{I<J} w_I w_J e_I ^ e_J; the factor 2 is a unit.
    const bool decomposable = std::all_of(square.begin(), square.end(), [](Scalar x) { return x == 0; });
    if (decomposable && !acc.contains(w)) {
      acc.insert(w);
      if (acc.dim() == dim) break;
    }
  }
  return Subspace(std::move(acc));
}

}  // namespace brnr
