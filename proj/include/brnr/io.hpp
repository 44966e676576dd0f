#pragma once

// Human-readable and machine-readable renderings of reports and search
// outcomes. Machine output is JSON with a fixed key order; identical inputs
// give byte-identical output.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "brnr/explorer.hpp"
#include "brnr/extalg.hpp"
#include "brnr/fflin.hpp"
#include "brnr/obstr.hpp"

namespace brnr {

using Json = nlohmann::ordered_json;

inline std::vector<MultiVector> as_multivectors(const Subspace& s, int n, int d, Side side) {
  std::vector<MultiVector> out;
  for (const Vec& v : s.basis()) out.emplace_back(s.field(), n, d, side, v);
  return out;
}

/// "<(1,3), (1,2)-(3,4)>", or "0" for the zero subspace.
inline std::string render_subspace(const Subspace& s, int n, int d, Side side) {
  if (s.is_zero()) return "0";
  std::string out = "<";
  bool first = true;
  for (const MultiVector& v : as_multivectors(s, n, d, side)) {
    if (!first) out += ", ";
    out += to_string(v);
    first = false;
  }
  return out + ">";
}

inline Json multivectors_json(const std::vector<MultiVector>& vs) {
  Json arr = Json::array();
  for (const MultiVector& v : vs) {
    Json coeffs = Json::array();
    for (Scalar c : v.coords()) coeffs.push_back(c);
    arr.push_back(Json{{"coeffs", std::move(coeffs)}, {"text", to_string(v)}});
  }
  return arr;
}

inline Json to_json(const ObstructionReport& r) {
  Json j;
  j["p"] = r.field.p();
  j["m"] = r.m;
  j["n"] = r.n;
  j["order_exponent"] = r.order_exponent();
  j["dim_k2"] = r.k2.dim();
  j["dim_s2"] = r.s2.dim();
  j["dim_s2dec"] = r.s2dec.dim();
  j["dim_k2max"] = r.k2max.dim();
  j["brnr_dim"] = r.brnr_dim();
  j["dim_k3"] = r.k3.dim();
  j["dim_s3"] = r.s3.dim();
  j["dim_s3dec"] = r.s3dec.dim();
  j["dim_k3max"] = r.k3max.dim();
  j["h3_lower_dim"] = r.h3_lower_dim();
  j["name"] = r.name;
  j["center_minimal"] = r.center_minimal;
  Json bases;
  bases["k2"] = multivectors_json(as_multivectors(r.k2, r.n, 2, Side::dual));
  bases["s2"] = multivectors_json(as_multivectors(r.s2, r.n, 2, Side::primal));
  bases["s2dec"] = multivectors_json(as_multivectors(r.s2dec, r.n, 2, Side::primal));
  bases["s3"] = multivectors_json(as_multivectors(r.s3, r.n, 3, Side::primal));
  bases["s3dec"] = multivectors_json(as_multivectors(r.s3dec, r.n, 3, Side::primal));
  bases["brnr_witnesses"] = multivectors_json(r.brnr_witnesses);
  bases["h3_witnesses"] = multivectors_json(r.h3_witnesses);
  j["bases"] = std::move(bases);
  return j;
}

inline std::string to_text(const ObstructionReport& r) {
  std::ostringstream out;
  const int n = r.n;
  out << "group " << (r.name.empty() ? "(unnamed)" : r.name) << ": p = " << r.field.p() << ", dim V = " << r.m
      << ", dim U = " << n << ", |G| = p^" << r.order_exponent() << '\n';
  if (!r.center_minimal) out << "warning: the commutator form has a radical, so Z(G) is larger than [G,G]\n";
  out << "K2     dim " << r.k2.dim() << "  " << render_subspace(r.k2, n, 2, Side::dual) << '\n';
  out << "S2     dim " << r.s2.dim() << "  " << render_subspace(r.s2, n, 2, Side::primal) << '\n';
  out << "S2dec  dim " << r.s2dec.dim() << (r.s2dec == r.s2 ? "  (= S2)" : "") << '\n';
  out << "K2max  dim " << r.k2max.dim() << '\n';
  out << "K3     dim " << r.k3.dim() << '\n';
  out << "S3     dim " << r.s3.dim() << "  " << render_subspace(r.s3, n, 3, Side::primal) << '\n';
  out << "S3dec  dim " << r.s3dec.dim() << "  " << render_subspace(r.s3dec, n, 3, Side::primal) << '\n';
  out << "K3max  dim " << r.k3max.dim() << '\n';
  for (const MultiVector& w : r.brnr_witnesses) out << "S2 class outside S2dec: " << to_string(w) << '\n';
  for (const MultiVector& w : r.h3_witnesses) out << "S3 class outside S3dec: " << to_string(w) << '\n';
  out << "Br_nr dimension: " << r.brnr_dim() << "  (dim K2max/K2; Br_nr(C(G)) is isomorphic to K2max/K2)\n";
  out << "H3_nr lower-bound dimension: " << r.h3_lower_dim()
      << "  (dim K3max/K3; K3max/K3 is a subgroup of H3_nr(C(G), Q/Z))\n";
  return out.str();
}

inline Json to_json(const SearchOutcome& o) {
  Json j;
  Json gens = Json::array();
  for (const MultiVector& g : o.candidate.generators) gens.push_back(to_string(g));
  j["generators"] = std::move(gens);
  j["classification"] = classification_name(o.classification);
  j["within_xw"] = o.within_xw;
  j["commutator_full"] = o.candidate.commutator_full;
  j["center_minimal"] = o.candidate.center_minimal;
  j["report"] = to_json(o.report);
  return j;
}

inline std::string to_text(const SearchOutcome& o) {
  std::ostringstream out;
  out << "K2 = <";
  for (std::size_t i = 0; i < o.candidate.generators.size(); ++i) {
    out << (i == 0 ? "" : ", ") << to_string(o.candidate.generators[i]);
  }
  out << ">  |G| = p^" << o.report.order_exponent() << "  brnr_dim " << o.report.brnr_dim() << "  h3_lower_dim "
      << o.report.h3_lower_dim() << "  " << classification_name(o.classification) << '\n';
  return out.str();
}

}  // namespace brnr
