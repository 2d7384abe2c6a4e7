#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/law_report.hpp"

namespace convalg {

// Partial monoid over an indexed finite carrier. Undefined compositions are
// stored as -1 in the table; the definedness predicate is kept redundantly
// and validated against the table.
class PartialMonoid {
public:
  PartialMonoid() = default;
  // comp entries: -1 undefined. `defined` may be empty (derived from comp).
  PartialMonoid(std::vector<std::string> names, std::vector<int32_t> comp,
                std::vector<int> units, std::vector<uint8_t> defined = {});

  int size() const { return n_; }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 if absent

  bool defined(int a, int b) const { return defined_[a * n_ + b] != 0; }
  int compose(int a, int b) const { return comp_[a * n_ + b]; }
  const std::vector<int>& units() const { return units_; }
  bool is_unit(int x) const;

private:
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<int32_t> comp_;
  std::vector<uint8_t> defined_;
  std::vector<int> units_;
};

// Law rows:
//   definedness-consistent   stored predicate matches the table
//   assoc-defined-iff        D y z & D x (y z)  <=>  D x y & D (x y) z
//   assoc-equal              both association orders defined => equal results
//   left-unit-exists         every x has e in E with e x = x
//   right-unit-exists        every x has e in E with x e = x
//   unit-composition         distinct units never compose
//   unitless                 (only when E is empty) no element acts as a
//                            two-sided unit for the whole carrier
// Constructions that adjoin an annihilator satisfy every row except
// assoc-defined-iff, whose forward direction breaks on the total zero row;
// callers decide which rows they require.
LawReport check_psg_laws(const PartialMonoid& m);

bool psg_strict_ok(const LawReport& r);
// Everything except the definedness bi-implication.
bool psg_weak_ok(const LawReport& r);

// Pair fusion (a,b)(b,c) = (a,c) over a k-element set; units are the diagonal.
PartialMonoid pairs_monoid(int k);

// Componentwise product; defined iff both components are.
PartialMonoid product_monoid(const PartialMonoid& m1, const PartialMonoid& m2);

// M x Y with (x,s)(y,s) = (xy,s) for equal tags only; units are E x Y.
PartialMonoid monoid_set_product(const PartialMonoid& m,
                                 const std::vector<std::string>& tags);

// Words over `alphabet` of length <= maxlen; concatenation is defined when
// the result still fits.
PartialMonoid free_monoid_trunc(const std::vector<std::string>& alphabet,
                                int maxlen);

PartialMonoid one_element_monoid();

// Boundary types {o,c}^2 with x•y = (fst x, snd y), defined iff snd x != fst y.
// Units are (o,c) and (c,o).
PartialMonoid boundary_monoid();

// Segments tagged with boundary types: the product of a non-strict fusion
// monoid (whose units must be exactly the point segments) with
// boundary_monoid, minus the degenerate fully-open points (point, (o,o)).
// The removal is closure-checked.
PartialMonoid boundary_segment_monoid(const PartialMonoid& segments);

// Total absorbing zero adjoined as a fresh element. The result is only
// weakly associative (see check_psg_laws).
PartialMonoid adjoin_annihilator(const PartialMonoid& m,
                                 const std::string& zero_name = "0");

// Sub-partial-monoid on the elements with keep[x] != 0. Throws if two kept
// elements compose to a dropped one (not closed).
PartialMonoid restrict_submonoid(const PartialMonoid& m,
                                 const std::vector<uint8_t>& keep);

// Left action of partial monoid S on partial monoid T. act entries: -1
// undefined.
struct PartialAction {
  PartialMonoid s, t;
  std::vector<int32_t> act;  // |S| x |T|

  bool act_defined(int a, int x) const { return act[a * t.size() + x] >= 0; }
  int apply(int a, int x) const { return act[a * t.size() + x]; }
};

// Law rows (strict definedness bi-implications separated from the guarded
// equalities, as for check_psg_laws):
//   action-assoc-defined-iff   D a b & D_(ab)t  <=>  D_b t & D_a (b t)
//   action-assoc-equal         (a b)∘t = a∘(b∘t) when all parts defined
//   action-merge-defined-iff   the matching law for T's composition
//   action-merge-equal         a∘(t u) = (a∘t)(a∘u) when all parts defined
//   acting-unit-exists         every t has e in E_S with e∘t = t
//   acting-unit-trivial        e in E_S and e∘t defined => e∘t = t
//   acting-unit-total          e in E_S => e∘t defined for every t (strict)
//   acted-unit-absorbs         e in E_T => s∘e defined and equal to e
LawReport check_action_laws(const PartialAction& a);

// Semidirect product S ⋉ T on the full pair carrier:
//   (s1,t1)(s2,t2) = (s1 s2, t1 (s1∘t2))   when every part is defined
// Units are E_S x E_T. Requires the guarded action rows to hold; throws with
// a witness otherwise.
PartialMonoid sd_monoid(const PartialAction& a);

// Finite segments of the chain 0..n under fusion, with an adjoined zero,
// acting on semi-infinite segments [i,inf] (plus the empty one) by fusion at
// the matching endpoint. The motivating model for sd_monoid.
struct FinInfSegmentAction {
  PartialAction action;
  int s_zero;   // index of the adjoined zero in S
  int t_unit;   // index of the empty infinite segment in T
  int chain_n;
};

FinInfSegmentAction fin_inf_segment_action(int n);

// Keep predicate for the "purely finite or purely infinite" pairs of the
// semidirect product of a FinInfSegmentAction: pairs (s, t_unit) or (s_zero, t).
std::vector<uint8_t> pure_pair_mask(const FinInfSegmentAction& fia);

nlohmann::json psg_to_json(const PartialMonoid& m);
PartialMonoid psg_from_json(const nlohmann::json& j);

} // namespace convalg
