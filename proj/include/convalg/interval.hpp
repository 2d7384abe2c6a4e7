#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/conv.hpp"
#include "convalg/psg.hpp"

namespace convalg {

// Finite poset. The order pairs given to the constructor are closed
// reflexively and transitively; antisymmetry is then validated.
class FinPoset {
public:
  FinPoset() = default;
  FinPoset(std::vector<std::string> names, std::vector<std::pair<int, int>> leq);

  int size() const { return n_; }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 if absent
  bool leq(int a, int b) const { return leq_[a * n_ + b] != 0; }

private:
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<uint8_t> leq_;
};

FinPoset chain_poset(int n);  // elements 0..n in their numeric order
FinPoset diamond_poset();     // bot < a, b < top with a, b incomparable
FinPoset forest_poset();      // two disjoint 2-chains

// The battery used by the law tests: chains up to 0..6, the diamond, the
// forest.
std::vector<FinPoset> poset_catalog();

// Linear interval property: any two elements lying between a comparable pair
// are themselves comparable. On failure `witness` holds (i, j, k, l) with
// i <= k, l <= j and k, l incomparable.
struct LiResult {
  bool ok = true;
  std::array<int, 4> witness{-1, -1, -1, -1};
};
LiResult check_li(const FinPoset& p);

// Segments [lo,hi] with lo <= hi (lo != hi when strict), in the fixed order
// shared by the fusion monoid and every relation built over them.
std::vector<std::pair<int, int>> poset_segments(const FinPoset& p, bool strict);
std::string segment_name(const FinPoset& p, std::pair<int, int> s);

// Fusion monoid: [i,j]*[j',k] = [i,k] defined iff j = j'. Units are the
// point segments, so the strict variant has none.
PartialMonoid segment_monoid(const FinPoset& p, bool strict = false);

struct AllenRels {
  BinRel b, e, a, d, o, l;
};

struct VenemaRels {
  TernaryRel c, dv, tv;
};

// Everything derived from one segment carrier, index-aligned: the fusion
// monoid, the splitting relation c (x = y*z) and its permutations dv, tv,
// and the six Allen relations
//   b x y: y begins x          e x y: y ends x        a x y: y starts where
//                                                            x ends
//   d = b;e (= e;b, asserted)  o = b;e~               l = a;a
struct IntervalAlgebra {
  FinPoset poset;
  bool strict = false;
  std::vector<std::pair<int, int>> segments;
  PartialMonoid fusion;
  VenemaRels ven;
  AllenRels allen;

  int seg_count() const { return static_cast<int>(segments.size()); }
  int seg_index(int lo, int hi) const;           // -1 when absent
  int seg_index(const std::string& name) const;  // same, by display name
};

IntervalAlgebra interval_algebra(const FinPoset& p, bool strict = false);

AllenRels allen_relations(const FinPoset& p, bool strict = false);
VenemaRels venema_relations(const FinPoset& p, bool strict = false);

// Halpern-Shoham modality over segment tables. name is one of B, E, A or the
// converses Bc, Ec, Ac. The forward three are computed by convolving with
// the constant-unit table over ven.c / ven.tv; the converses as backward
// diamonds over the matching Allen relation. Needs a unital codomain.
template <class Q>
std::vector<typename Q::Value> hs_modality(
    const IntervalAlgebra& ia, const std::string& name, const Q& q,
    const std::vector<typename Q::Value>& f) {
  if (!q.unital())
    throw std::invalid_argument("hs_modality needs a unital codomain");
  const std::vector<typename Q::Value> c1(ia.segments.size(), q.unit());
  if (name == "B") return convolve(ia.ven.c, q, f, c1);
  if (name == "E") return convolve(ia.ven.c, q, c1, f);
  if (name == "A") return convolve(ia.ven.tv, q, f, c1);
  if (name == "Bc") return bdia(ia.allen.b, q, f);
  if (name == "Ec") return bdia(ia.allen.e, q, f);
  if (name == "Ac") return bdia(ia.allen.a, q, f);
  throw std::invalid_argument("unknown modality: " + name);
}

// The same six modalities as plain diamonds over the Allen relations; the
// reference the convolution forms are checked against.
template <class Q>
std::vector<typename Q::Value> hs_modality_direct(
    const IntervalAlgebra& ia, const std::string& name, const Q& q,
    const std::vector<typename Q::Value>& f) {
  if (name == "B") return fdia(ia.allen.b, q, f);
  if (name == "E") return fdia(ia.allen.e, q, f);
  if (name == "A") return fdia(ia.allen.a, q, f);
  if (name == "Bc") return bdia(ia.allen.b, q, f);
  if (name == "Ec") return bdia(ia.allen.e, q, f);
  if (name == "Ac") return bdia(ia.allen.a, q, f);
  throw std::invalid_argument("unknown modality: " + name);
}

const std::vector<std::string>& hs_modality_names();

// Diagnostic for the segments-as-sets representation: sigma [i,j] is the set
// of elements between i and j. Fusion maps to set union exactly when the
// poset has the linear interval property; otherwise only a superset, and
// `witness` names the first composable pair where the inclusion is strict.
struct SigmaResult {
  bool exact = true;
  std::string witness;
};
SigmaResult check_sigma_union(const FinPoset& p);

nlohmann::json poset_to_json(const FinPoset& p);
FinPoset poset_from_json(const nlohmann::json& j);

} // namespace convalg
