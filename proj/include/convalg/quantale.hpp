#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/lattice.hpp"
#include "convalg/law_report.hpp"
#include "convalg/rng.hpp"

namespace convalg {

enum class QFlag { unital, distributive, boolean_alg, abelian, weak };

std::string to_string(QFlag f);
QFlag qflag_from_string(const std::string& s);

// Strictness of the law suite. `full` demands distributivity over arbitrary
// element families including the empty one (hence both annihilation laws);
// `weak` drops the empty family on the left, so composition need not
// annihilate bottom from the right; `proto` additionally drops associativity.
enum class QMode { full, weak, proto };

std::string to_string(QMode m);
QMode qmode_from_string(const std::string& s);

struct QuantaleCheckOptions {
  int subset_bound = 6;      // carriers larger than this need sampling
  int sample_subsets = 500;  // used only when sampling kicks in
  bool allow_sampling = false;
  uint64_t seed = kDefaultSeed;
};

// Finite quantale: a finite bounded lattice plus a total composition table.
// Element values are carrier indices.
class FinQuantale {
public:
  using Value = int32_t;

  FinQuantale() = default;
  FinQuantale(FinLattice lat, std::vector<int32_t> comp, int unit,
              std::set<QFlag> flags);

  const FinLattice& lattice() const { return lat_; }
  int size() const { return lat_.size(); }
  const std::string& name(Value a) const { return lat_.name(a); }

  Value compose(Value a, Value b) const { return comp_[a * lat_.size() + b]; }
  Value join(Value a, Value b) const { return lat_.join(a, b); }
  Value meet(Value a, Value b) const { return lat_.meet(a, b); }
  bool leq(Value a, Value b) const { return lat_.leq(a, b); }
  bool eq(Value a, Value b) const { return a == b; }
  Value bottom() const { return lat_.bottom(); }
  Value top() const { return lat_.top(); }
  bool unital() const { return unit_ >= 0; }
  Value unit() const { return unit_; }
  int complement(Value a) const { return complement_.empty() ? -1 : complement_[a]; }

  const std::set<QFlag>& flags() const { return flags_; }
  bool has(QFlag f) const { return flags_.count(f) != 0; }

private:
  FinLattice lat_;
  std::vector<int32_t> comp_;
  int unit_ = -1;
  std::set<QFlag> flags_;
  std::vector<int> complement_;  // derived when boolean_alg is claimed
};

LawReport check_quantale_laws(const FinQuantale& q, QMode mode,
                              const QuantaleCheckOptions& opts = {});

// u \ w: largest v with u·v <= w. w / v: largest u with u·v <= w.
// Well-behaved (adjoint) only in full quantales.
FinQuantale::Value residual_left(const FinQuantale& q, FinQuantale::Value u,
                                 FinQuantale::Value w);
FinQuantale::Value residual_right(const FinQuantale& q, FinQuantale::Value w,
                                  FinQuantale::Value v);

// u·v <= w  <=>  v <= u\w  <=>  u <= w/v, for every element triple.
LawReport check_residual_galois(const FinQuantale& q);

// Real-valued quantales over tropical or unit-interval carriers. These have
// infinite carriers, so law checks run on finite samples and numeric
// comparison uses a tolerance.
class RealQuantale {
public:
  using Value = double;
  enum class Tag { minplus, maxplus, unit_min, unit_max };

  explicit RealQuantale(Tag tag, double tol = 1e-9) : tag_(tag), tol_(tol) {}

  Tag tag() const { return tag_; }
  double tol() const { return tol_; }

  bool leq(Value a, Value b) const;
  Value join(Value a, Value b) const;
  Value meet(Value a, Value b) const;
  Value compose(Value a, Value b) const;
  Value bottom() const;
  // For maxplus the carrier has no greatest element; the +inf returned there
  // is a one-point completion used only as the value of an empty meet.
  Value top() const;
  Value unit() const;
  bool unital() const { return true; }
  bool eq(Value a, Value b) const;

  std::set<QFlag> flags() const;
  std::vector<Value> default_sample() const;
  std::string name(Value v) const;  // for witnesses

private:
  Tag tag_;
  double tol_;
};

LawReport check_real_quantale_laws(const RealQuantale& q, QMode mode,
                                   const std::vector<double>& sample,
                                   int subset_bound = 12);

// Catalog entry: exactly one of `fin` / `real` is set. `declared_mode` is the
// strongest mode in which the instance passes its law suite.
struct BuiltinQuantale {
  std::string name;
  std::optional<FinQuantale> fin;
  std::optional<RealQuantale> real;
  QMode declared_mode = QMode::full;
};

BuiltinQuantale builtin_quantale(const std::string& name);
std::vector<std::string> builtin_quantale_names();

// Saturating tropical chain {0, 1, ..., m, inf}: composition is addition
// clipped to inf, order is reversed numeric, join is min. A finite stand-in
// for minplus where table-based algorithms need a finite carrier.
FinQuantale tropical_chain(int m);

nlohmann::json fin_quantale_to_json(const FinQuantale& q);
FinQuantale fin_quantale_from_json(const nlohmann::json& j);

// Left action of a finite quantale Q on a complete lattice L, with
// (u·v)∘x = u∘(v∘x) and ∘ distributing over joins in both arguments.
struct QuantaleModule {
  FinQuantale q;
  FinLattice l;
  std::vector<int32_t> act;  // |Q| x |L|

  int apply(int u, int x) const { return act[u * l.size() + x]; }
};

QuantaleModule self_module(const FinQuantale& q);
LawReport check_module_laws(const QuantaleModule& m);

// Semidirect pair quantale over Q x L:
//   (u,x) ⋉ (v,y) = (u·v, x ⊔ u∘y)
// Lifts a quantale module to a weak quantale; right annihilation fails in
// general, which is the point of the construction.
FinQuantale sd_quantale(const QuantaleModule& m);

} // namespace convalg
