#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/interval.hpp"

namespace convalg {

// ---------------------------------------------------------------------------
// formulas

class Formula;
using Fml = std::shared_ptr<const Formula>;

class Formula {
public:
  enum class Kind {
    atom,
    top,
    bot,
    conj,
    disj,
    neg,
    chop,
    unit,   // the point-interval predicate
    star,   // least fixpoint of x -> unit | (lhs ; x)
    omega,  // bounded greatest-fixpoint unfolding of x -> lhs ; x
    hs,     // unary segment modality, name in B E A Bc Ec Ac
    ven_d,
    ven_t,
  };

  Kind kind;
  std::string name;  // atom name or modality name
  Fml lhs, rhs;
};

Fml f_atom(std::string name);
Fml f_top();
Fml f_bot();
Fml f_and(Fml a, Fml b);
Fml f_or(Fml a, Fml b);
Fml f_not(Fml a);
Fml f_chop(Fml a, Fml b);
Fml f_point();
Fml f_star(Fml a);
Fml f_omega(Fml a);
Fml f_hs(std::string name, Fml a);
Fml f_ven_d(Fml a, Fml b);
Fml f_ven_t(Fml a, Fml b);

bool formula_eq(const Fml& a, const Fml& b);

// Text form: `!` > postfix `*` > `;` > `&` > `|`; atoms are identifiers;
// `top`, `bot`, `point`; modalities `<B> f` etc. The Venema binaries have no
// surface syntax and print as VD(..)/VT(..), which parse_formula rejects.
std::string formula_str(const Fml& f);
Fml parse_formula(const std::string& text);  // throws std::invalid_argument

// ---------------------------------------------------------------------------
// models

// Closed interval [lo,hi] over 0..N, or [lo,inf) when hi == kInfinite.
struct Iv {
  static constexpr int kInfinite = -1;

  int lo = 0;
  int hi = 0;

  bool infinite() const { return hi == kInfinite; }
  bool operator==(const Iv&) const = default;
};

std::string iv_str(Iv iv);

struct AtomDef {
  // exactly one of the two finite-interval forms is used
  std::set<std::pair<int, int>> intervals;      // explicit truths
  std::optional<std::string> state_pred;        // sigma(k) == state on [i,j]
  std::set<int> inf_from;                       // i with the atom true on [i,inf)
};

struct StreamModel {
  int horizon = 0;
  std::vector<std::string> stream;  // states at 0..horizon
  std::map<std::string, AtomDef> atoms;
  bool infinite_enabled = false;

  // true on [i,j] per the atom definition; throws on unknown names
  bool atom_holds(const std::string& name, Iv iv) const;
  void validate() const;  // throws std::invalid_argument
};

// {"horizon": N, "stream": [...], "atoms": {name: {"intervals": [[i,j],..]}
//  | {"state_pred": state}}, "inf_intervals": {name: [i,..]}} — the last key
// is optional and enables semi-infinite intervals.
StreamModel trace_from_json(const nlohmann::json& j);
nlohmann::json trace_to_json(const StreamModel& m);

// ---------------------------------------------------------------------------
// evaluation

struct EvalResult {
  bool value = false;
  // set when a bounded omega unfolding stopped before stabilising
  bool approximate = false;
};

// Table-driven evaluator: each subformula is computed once over the whole
// interval carrier (finite intervals within the horizon, plus [i,inf) ones
// when enabled). Chop over an infinite interval takes the whole of it for
// the left operand or splits it at a point within the horizon.
EvalResult eval_full(const Fml& f, const StreamModel& m, Iv iv);
bool eval(const Fml& f, const StreamModel& m, Iv iv);

// Reference semantics by direct recursion: no tables, no memoisation, Allen
// relations recomputed from endpoint arithmetic. Rejects omega.
bool eval_naive(const Fml& f, const StreamModel& m, Iv iv);

// ---------------------------------------------------------------------------
// iteration on tables

// Least fixpoint of x -> id | f*x by Kleene iteration from constant bottom.
// Throws std::runtime_error when `bound` rounds do not reach stability.
template <class Q>
std::vector<typename Q::Value> star_table(const RelMonoid& rm, const Q& q,
                                          const std::vector<typename Q::Value>& f,
                                          int bound = 64) {
  auto id = delta_unit(rm, q);
  std::vector<typename Q::Value> x(f.size(), q.bottom());
  for (int round = 0; round < bound; ++round) {
    auto next = pointwise_join(q, id, convolve(rm.rel, q, f, x));
    if (fn_eq(q, next, x)) return x;
    x = std::move(next);
  }
  throw std::runtime_error("star iteration did not stabilise within " +
                           std::to_string(bound) + " rounds");
}

template <class Q>
struct NuResult {
  std::vector<typename Q::Value> table;
  int rounds = 0;
  bool approximate = false;  // bound hit before stability
};

// Bounded descent towards the greatest fixpoint of x -> f*x.
template <class Q>
NuResult<Q> omega_table(const TernaryRel& rel, const Q& q,
                        const std::vector<typename Q::Value>& f,
                        int bound = 64) {
  NuResult<Q> r;
  r.table.assign(f.size(), q.top());
  for (; r.rounds < bound; ++r.rounds) {
    auto next = convolve(rel, q, f, r.table);
    if (fn_eq(q, next, r.table)) return r;
    r.table = std::move(next);
  }
  r.approximate = true;
  return r;
}

// Bounded descent towards the greatest fixpoint of x -> id | f*x.
template <class Q>
NuResult<Q> inf_table(const RelMonoid& rm, const Q& q,
                      const std::vector<typename Q::Value>& f, int bound = 64) {
  auto id = delta_unit(rm, q);
  NuResult<Q> r;
  r.table.assign(f.size(), q.top());
  for (; r.rounds < bound; ++r.rounds) {
    auto next = pointwise_join(q, id, convolve(rm.rel, q, f, r.table));
    if (fn_eq(q, next, r.table)) return r;
    r.table = std::move(next);
  }
  r.approximate = true;
  return r;
}

// ---------------------------------------------------------------------------
// algebra of the interval carrier

// Finite part: the interval x stream partial monoid lifted over bool in
// unital mode. With infinite intervals enabled: the semidirect pair carrier
// (finite-or-infinite segments) lifted over the pair codomain in weak mode
// with component-shaped tables, the expected right-annihilation failure
// pinned, and the finite algebra embedded via f -> (f, const bottom).
LawReport check_itl_algebra(int horizon, bool with_infinite);
LawReport check_itl_algebra(const StreamModel& m);

} // namespace convalg
