#pragma once

// Search for groups with trivial Brauer obstruction but nontrivial degree-three
// obstruction. For a target trivector w, every K2 inside
//   X_w = { x in wedge^2 U^* : <<w, x ^ y>> = 0 for all y in U^* }
// puts w into S3; candidates are subspaces of X_w turned back into
// commutator tables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "brnr/errors.hpp"
#include "brnr/extalg.hpp"
#include "brnr/fflin.hpp"
#include "brnr/groupspec.hpp"
#include "brnr/obstr.hpp"

namespace brnr {

/// Kernel of x |-> (y |-> <<w, x ^ y>>), an n x C(n,2) linear map.
inline Subspace compute_xw(const MultiVector& w) {
  if (w.side() != Side::primal || w.degree() != 3) throw DimensionError("X_w needs a primal trivector");
  if (w.is_zero()) throw DomainError("X_w of the zero trivector");
  const int n = w.n();
  const PrimeField& f = w.field();
  const WedgeTable table(n, 2);
  Matrix m(f, static_cast<std::size_t>(n), binomial(n, 2));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (int k = 0; k < n; ++k) {
      if (const auto& e = table.at(j, k)) {
        const Scalar c = w.coords()[e->target];
        m(static_cast<std::size_t>(k), j) = e->negative ? f.neg(c) : c;
      }
    }
  }
  return kernel(m);
}

/// A subspace K of wedge^2 U^* and the group whose K2 it is: v_k^* maps to
/// the k-th canonical basis vector f_k of K, so [u_i, u_j] has exponent
/// <<u_i ^ u_j, f_k>> on v_k.
struct CandidateK2 {
  Subspace k;
  std::vector<MultiVector> generators;
  CentralExtensionSpec spec;
  bool commutator_full;
  bool center_minimal;
};

inline CandidateK2 derive_candidate(const PrimeField& field, int n, std::vector<MultiVector> generators,
                                    std::string name = {}) {
  std::vector<Vec> vecs;
  for (const MultiVector& g : generators) {
    require_same_field(field, g.field());
    if (g.side() != Side::dual || g.degree() != 2 || g.n() != n) {
      throw DimensionError("candidate generators must be dual bivectors over U of dimension " + std::to_string(n));
    }
    vecs.push_back(g.coords());
  }
  Subspace k = span(field, vecs, binomial(n, 2));
  if (k.is_zero()) throw DomainError("candidate K2 is the zero subspace");
  CentralExtensionSpec spec = spec_from_gamma(k.basis_matrix(), n, std::move(name));
  const GammaMap g = build_gamma(spec);
  const bool full = check_commutator_full(g);
  const bool minimal = check_center_minimal(g);
  return {std::move(k), std::move(generators), std::move(spec), full, minimal};
}

enum class Classification {
  harmful,            ///< brnr_dim = 0 and h3_lower_dim > 0
  brauer_obstructed,  ///< brnr_dim > 0
  clean,              ///< both zero
};

inline const char* classification_name(Classification c) {
  switch (c) {
    case Classification::harmful:
      return "harmful";
    case Classification::brauer_obstructed:
      return "brauer-obstructed";
    case Classification::clean:
      return "clean";
  }
  return "?";
}

inline Classification classify(const ObstructionReport& r) {
  if (r.brnr_dim() > 0) return Classification::brauer_obstructed;
  return r.h3_lower_dim() > 0 ? Classification::harmful : Classification::clean;
}

struct SearchOutcome {
  CandidateK2 candidate;
  ObstructionReport report;
  Classification classification;
  bool within_xw;
};

/// Runs the pipeline on a candidate. When K lies in X_w the target w must
/// come out in S3; a violation raises InternalError.
inline SearchOutcome evaluate_candidate(CandidateK2 c, const MultiVector& w) {
  ObstructionReport r = report(c.spec);
  const bool within = compute_xw(w).contains(c.k);
  if (within && !r.s3.contains(w.coords())) {
    throw InternalError("K2 lies in X_w but the target trivector is not in S3");
  }
  const Classification cls = classify(r);
  return {std::move(c), std::move(r), cls, within};
}

// ---------------------------------------------------------------------------
// Strategies

struct ExplicitStrategy {
  std::vector<std::vector<MultiVector>> generator_sets;
};

/// Samples `count` subspaces of X_w. Each draws a dimension uniformly from
/// [min_dim, max_dim], then that many coefficient vectors over the canonical
/// basis of X_w, rejecting dependent draws. Random words come from
/// std::mt19937_64 seeded with `seed`, reduced modulo the range.
struct RandomStrategy {
  int min_dim = 1;
  int max_dim = 1;
  std::uint64_t seed = 0;
  std::size_t count = 1;
};

/// Every k-dimensional subspace of X_w, in order of RREF pivot pattern and
/// then free entries. Refuses up front when the count exceeds `ceiling`.
struct ExhaustiveStrategy {
  int dim = 1;
  std::uint64_t ceiling = 1'000'000;
};

using SearchStrategy = std::variant<ExplicitStrategy, RandomStrategy, ExhaustiveStrategy>;

/// Number of k-dimensional subspaces of F_p^N (the Gaussian binomial),
/// saturating at UINT64_MAX.
inline std::uint64_t gaussian_binomial(Scalar p, int big_n, int k) {
  if (k < 0 || k > big_n) return 0;
  auto sat_add = [](std::uint64_t x, std::uint64_t y) { return x > UINT64_MAX - y ? UINT64_MAX : x + y; };
  auto sat_mul = [](std::uint64_t x, std::uint64_t y) { return x != 0 && y > UINT64_MAX / x ? UINT64_MAX : x * y; };
  // G(N, k) = G(N-1, k-1) + p^k G(N-1, k)
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int n = 1; n <= big_n; ++n) {
    for (int j = std::min(n, k); j >= 1; --j) {
      std::uint64_t pk = 1;
      for (int i = 0; i < j; ++i) pk = sat_mul(pk, p);
      row[static_cast<std::size_t>(j)] = sat_add(row[static_cast<std::size_t>(j) - 1], sat_mul(pk, row[static_cast<std::size_t>(j)]));
    }
  }
  return row[static_cast<std::size_t>(k)];
}

namespace detail {

inline std::vector<MultiVector> combine_xw(const Subspace& xw, int n, const std::vector<Vec>& coefficient_rows) {
  const PrimeField& f = xw.field();
  std::vector<MultiVector> gens;
  for (const Vec& a : coefficient_rows) {
    Vec v(xw.ambient_dim(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.fma(v[c], a[i], xw.basis()[i][c]);
    }
    gens.emplace_back(f, n, 2, Side::dual, std::move(v));
  }
  return gens;
}

}  // namespace detail

/// Evaluates candidates in the strategy's enumeration order and hands each
/// outcome to `sink`.
inline void search(const MultiVector& w, const SearchStrategy& strategy,
                   const std::function<void(const SearchOutcome&)>& sink) {
  const Subspace xw = compute_xw(w);
  const PrimeField& f = w.field();
  const int n = w.n();
  const int big_n = static_cast<int>(xw.dim());

  auto emit = [&](std::vector<MultiVector> gens) {
    sink(evaluate_candidate(derive_candidate(f, n, std::move(gens)), w));
  };

  if (const auto* ex = std::get_if<ExplicitStrategy>(&strategy)) {
    for (const auto& gens : ex->generator_sets) emit(gens);
    return;
  }

  if (const auto* rnd = std::get_if<RandomStrategy>(&strategy)) {
    if (rnd->min_dim < 1 || rnd->max_dim < rnd->min_dim || rnd->max_dim > big_n) {
      throw DomainError("random dimension range must lie in 1.." + std::to_string(big_n) + " (dim X_w)");
    }
    std::mt19937_64 rng(rnd->seed);
    const auto span_size = static_cast<std::uint64_t>(rnd->max_dim - rnd->min_dim + 1);
    for (std::size_t s = 0; s < rnd->count; ++s) {
      const int k = rnd->min_dim + static_cast<int>(rng() % span_size);
      std::vector<Vec> rows;
      while (true) {
        rows.clear();
        EchelonBasis check(f, static_cast<std::size_t>(big_n));
        for (int i = 0; i < k; ++i) {
          Vec a(static_cast<std::size_t>(big_n));
          for (Scalar& x : a) x = static_cast<Scalar>(rng() % f.p());
          check.insert(a);
          rows.push_back(std::move(a));
        }
        if (check.dim() == static_cast<std::size_t>(k)) break;
      }
      emit(detail::combine_xw(xw, n, rows));
    }
    return;
  }

  const auto& exh = std::get<ExhaustiveStrategy>(strategy);
  const int k = exh.dim;
  if (k < 1 || k > big_n) throw DomainError("subspace dimension must lie in 1.." + std::to_string(big_n) + " (dim X_w)");
  const std::uint64_t count = gaussian_binomial(f.p(), big_n, k);
  if (count > exh.ceiling) {
    throw BudgetExceeded("exhaustive search over " + std::to_string(count) + " subspaces exceeds the ceiling of " +
                         std::to_string(exh.ceiling));
  }
  for (const IndexTuple& pivots : all_tuples(big_n, k)) {
    // Free slots: row r, columns right of its pivot that are not pivots.
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < k; ++r) {
      for (int c = pivots[r] + 1; c < big_n; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) slots.emplace_back(r, c);
      }
    }
    std::vector<Scalar> digits(slots.size(), 0);
    while (true) {
      std::vector<Vec> rows(static_cast<std::size_t>(k), Vec(static_cast<std::size_t>(big_n), 0));
      for (int r = 0; r < k; ++r) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivots[r])] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        rows[static_cast<std::size_t>(slots[s].first)][static_cast<std::size_t>(slots[s].second)] = digits[s];
      }
      emit(detail::combine_xw(xw, n, rows));
      std::size_t pos = 0;
      while (pos < digits.size() && digits[pos] == f.p() - 1) digits[pos++] = 0;
      if (pos == digits.size()) break;
      ++digits[pos];
    }
  }
}

inline std::vector<SearchOutcome> search_all(const MultiVector& w, const SearchStrategy& strategy) {
  std::vector<SearchOutcome> out;
  search(w, strategy, [&](const SearchOutcome& o) { out.push_back(o); });
  return out;
}

/// The three K2 choices inside X_w for w = (1,2,3)+(3,4,5)+(5,6,1): the first
/// six listed generators (Peyre's group of order p^12), a 3-dimensional
/// subspace (the order-p^9 group with [u1,u5] trivial), and all of X_w.
inline std::vector<std::vector<MultiVector>> case1_choices(const PrimeField& f) {
  auto dual = [&](const char* text) { return parse_multivector(text, f, 6, Side::dual); };
  return {
      {dual("[1,2]-[4,5]"), dual("[2,3]-[5,6]"), dual("[1,4]"), dual("[2,5]"), dual("[3,6]"), dual("[4,6]")},
      {dual("[1,2]-[4,5]"), dual("[2,3]-[5,6]+[1,4]"), dual("[3,6]-[2,4]")},
      {dual("[1,2]-[4,5]"), dual("[2,3]-[5,6]"), dual("[1,4]"), dual("[2,5]"), dual("[3,6]"), dual("[4,6]"),
       dual("[3,4]+[1,6]"), dual("[2,4]"), dual("[2,6]")},
  };
}

}  // namespace brnr
