#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convalg/law_report.hpp"
#include "convalg/quantale.hpp"
#include "convalg/relstruct.hpp"
#include "convalg/rng.hpp"

namespace convalg {

// Function tables X -> Q, indexed like the relation's carrier.
using FnF = std::vector<int32_t>;  // finite-quantale values
using FnR = std::vector<double>;   // real-quantale values

// (f * g) x = join { f y · g z | R x y z }; an element with no
// decompositions gets bottom. Works for any codomain exposing the shared
// quantale method set (FinQuantale, RealQuantale).
template <class Q>
std::vector<typename Q::Value> convolve(const TernaryRel& r, const Q& q,
                                        const std::vector<typename Q::Value>& f,
                                        const std::vector<typename Q::Value>& g) {
  const size_t n = static_cast<size_t>(r.size());
  if (f.size() != n || g.size() != n)
    throw std::invalid_argument("convolve: table size does not match carrier");
  std::vector<typename Q::Value> out(n, q.bottom());
  for (int x = 0; x < r.size(); ++x)
    for (const auto& [y, z] : r.decompositions(x))
      out[x] = q.join(out[x], q.compose(f[y], g[z]));
  return out;
}

template <class Q>
std::vector<typename Q::Value> pointwise_join(
    const Q& q, const std::vector<typename Q::Value>& f,
    const std::vector<typename Q::Value>& g) {
  std::vector<typename Q::Value> out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = q.join(f[i], g[i]);
  return out;
}

template <class Q>
bool fn_eq(const Q& q, const std::vector<typename Q::Value>& f,
           const std::vector<typename Q::Value>& g) {
  if (f.size() != g.size()) return false;
  for (size_t i = 0; i < f.size(); ++i)
    if (!q.eq(f[i], g[i])) return false;
  return true;
}

template <class Q>
bool fn_leq(const Q& q, const std::vector<typename Q::Value>& f,
            const std::vector<typename Q::Value>& g) {
  for (size_t i = 0; i < f.size(); ++i)
    if (!q.leq(f[i], g[i])) return false;
  return true;
}

// x -> unit on the units, bottom elsewhere; the convolution unit.
template <class Q>
std::vector<typename Q::Value> delta_unit(const RelMonoid& rm, const Q& q) {
  if (!q.unital())
    throw std::invalid_argument("delta_unit: codomain has no unit");
  if (rm.units.empty())
    throw std::invalid_argument("delta_unit: relational structure has no units");
  std::vector<typename Q::Value> out(rm.rel.size(), q.bottom());
  for (int e : rm.units) out[e] = q.unit();
  return out;
}

// Forward/backward diamonds and boxes over a binary relation. Forward
// operators produce tables over the rows, backward ones over the columns.
template <class Q>
std::vector<typename Q::Value> fdia(const BinRel& r, const Q& q,
                                    const std::vector<typename Q::Value>& g) {
  std::vector<typename Q::Value> out(r.rows(), q.bottom());
  for (int x = 0; x < r.rows(); ++x)
    for (int y = 0; y < r.cols(); ++y)
      if (r.at(x, y)) out[x] = q.join(out[x], g[y]);
  return out;
}

template <class Q>
std::vector<typename Q::Value> fbox(const BinRel& r, const Q& q,
                                    const std::vector<typename Q::Value>& g) {
  std::vector<typename Q::Value> out(r.rows(), q.top());
  for (int x = 0; x < r.rows(); ++x)
    for (int y = 0; y < r.cols(); ++y)
      if (r.at(x, y)) out[x] = q.meet(out[x], g[y]);
  return out;
}

template <class Q>
std::vector<typename Q::Value> bdia(const BinRel& r, const Q& q,
                                    const std::vector<typename Q::Value>& f) {
  std::vector<typename Q::Value> out(r.cols(), q.bottom());
  for (int x = 0; x < r.rows(); ++x)
    for (int y = 0; y < r.cols(); ++y)
      if (r.at(x, y)) out[y] = q.join(out[y], f[x]);
  return out;
}

template <class Q>
std::vector<typename Q::Value> bbox(const BinRel& r, const Q& q,
                                    const std::vector<typename Q::Value>& f) {
  std::vector<typename Q::Value> out(r.cols(), q.top());
  for (int x = 0; x < r.rows(); ++x)
    for (int y = 0; y < r.cols(); ++y)
      if (r.at(x, y)) out[y] = q.meet(out[y], f[x]);
  return out;
}

// Diamond computed by convolving with the constant-unit table over the padded
// ternary relation S x y z <=> R x y.
template <class Q>
std::vector<typename Q::Value> fdia_via_conv(const BinRel& r, const Q& q,
                                             const std::vector<typename Q::Value>& f) {
  if (!q.unital())
    throw std::invalid_argument("fdia_via_conv: codomain has no unit");
  if (r.rows() != r.cols())
    throw std::invalid_argument("fdia_via_conv: relation must be square");
  const int n = r.rows();
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
  std::vector<std::array<int, 3>> triples;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (r.at(x, y))
        for (int z = 0; z < n; ++z) triples.push_back({x, y, z});
  TernaryRel s(std::move(names), std::move(triples));
  std::vector<typename Q::Value> c1(n, q.unit());
  return convolve(s, q, f, c1);
}

// Convolution computed as a forward diamond over the pairing relation
// S x (y,z) <=> R x y z, applied to the table (y,z) -> f y · g z.
template <class Q>
std::vector<typename Q::Value> convolve_via_fdia(const TernaryRel& r, const Q& q,
                                                 const std::vector<typename Q::Value>& f,
                                                 const std::vector<typename Q::Value>& g) {
  const int n = r.size();
  BinRel s(n, n * n);
  for (const auto& t : r.triples()) s.set(t[0], t[1] * n + t[2]);
  std::vector<typename Q::Value> h(static_cast<size_t>(n) * n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z)
      h[static_cast<size_t>(y) * n + z] = q.compose(f[y], g[z]);
  return fdia(s, q, h);
}

// Residual modalities over a finite codomain (element residuals are found by
// search):
//   (f \ g) x = meet { f y \ g w | R w y x }
//   (f / g) x = meet { f w / g z | R w x z }
// They are the upper adjoints of convolution: f*g <= h iff g <= f\h iff
// f <= h/g, provided the codomain's residuals are themselves adjoints.
FnF residual_mod_left(const TernaryRel& r, const FinQuantale& q, const FnF& f,
                      const FnF& g);
FnF residual_mod_right(const TernaryRel& r, const FinQuantale& q, const FnF& f,
                       const FnF& g);

// Exhaustive check of the lifted Galois equivalence over all table triples.
LawReport check_conv_galois(const TernaryRel& r, const FinQuantale& q);

enum class LiftMode { proto, quantale, unital, weak, abelian, semiring };

std::string to_string(LiftMode m);
LiftMode lift_mode_from_string(const std::string& s);

struct LiftOptions {
  // enumerate the whole table space when |Q|^|X| fits in this bound
  uint64_t table_bound = 4096;
  // cap on per-law tuple scans; an exhaustive row that would exceed it
  // falls back to sampling (recorded on the row)
  uint64_t tuple_budget = 2'000'000'000ULL;
  int samples = 500;
  int max_family = 4;  // family size for distributivity rows
  uint64_t seed = kDefaultSeed;
  // optional replacement for the uniform random table generator
  std::function<FnF(Rng&)> sampler;
};

// Law suite for the convolution algebra Q^X.
//
// Rows by mode (proto ⊂ quantale ⊂ unital; weak and abelian and semiring are
// separate profiles):
//   proto:     left/right-distributivity, left/right-annihilation
//   quantale:  proto + assoc
//   unital:    quantale + unit-left + unit-right
//   weak:      left-distributivity over nonempty families only,
//              right-distributivity, left-annihilation, unit-left;
//              assoc, unit-right and right-annihilation become skip rows
//              whose witness records the observed behaviour
//   abelian:   quantale rows + commutative (requires a commutative relation
//              and an abelian codomain)
//   semiring:  counting-valued lifting (natural-number tables, finite sums),
//              gated on local finiteness
// Throws when the mode is inconsistent with the structures (unital without
// units, abelian without commutativity).
LawReport check_lifting(const RelMonoid& rm, const FinQuantale& q,
                        LiftMode mode, const LiftOptions& opts = {});

// Rows: delta-injective, delta-multiplicative (delta y * delta z equals the
// join of delta x over R x y z), delta-unit-join.
LawReport check_embedding(const RelMonoid& rm, const FinQuantale& q);

// Seeded generators for the module-law suites.
std::vector<BinRel> sample_binrels(int n, int count, Rng& rng);
std::vector<TernaryRel> sample_ternary_rels(int n, int count, Rng& rng);
FnF sample_fin_table(const FinQuantale& q, int n, Rng& rng);
FnR sample_real_table(const RealQuantale& q, int n, Rng& rng);

namespace detail {
inline int32_t random_value(const FinQuantale& q, Rng& rng) {
  return static_cast<int32_t>(rng.below(q.size()));
}
inline double random_value(const RealQuantale& q, Rng& rng) {
  const auto pool = q.default_sample();
  return pool[rng.below(pool.size())];
}
} // namespace detail

// Module laws for the unary modalities and binary convolution:
//   dia-union       <R ∪ S>f = <R>f ⊔ <S>f
//   dia-sup         <R>(f ⊔ g) = <R>f ⊔ <R>g
//   dia-compose     <R;S>f = <R>(<S>f)
//   dia-identity    <Id>f = f
//   conv-union      f *_{T∪U} g = f *_T g ⊔ f *_U g
//   conv-sup-left   (f ⊔ g) * h = f*h ⊔ g*h
//   conv-sup-right  f * (g ⊔ h) = f*g ⊔ f*h
//   galois-fdia-bbox   <R>f <= g  iff  f <= [R|g
//   galois-bdia-fbox   <R|f <= g  iff  f <= |R]g
//   conjugation-fwd/bwd (boolean codomains): <R>f ⊓ g = 0 iff f ⊓ <R|g = 0
template <class Q>
LawReport check_binary_module(const Q& q, const std::vector<BinRel>& brels,
                              const std::vector<TernaryRel>& trels,
                              const std::vector<std::vector<typename Q::Value>>& tables,
                              bool check_conjugations) {
  using V = typename Q::Value;
  using Fn = std::vector<V>;
  LawReport r;
  r.subject = "binary modal module";

  auto& du = r.add("dia-union");
  auto& dc = r.add("dia-compose");
  for (const auto& a : brels)
    for (const auto& b : brels)
      for (const auto& f : tables) {
        ++du.cases;
        if (!du.failed() &&
            !fn_eq(q, fdia(a.unite(b), q, f),
                   pointwise_join(q, fdia(a, q, f), fdia(b, q, f)))) {
          du.status = LawCheck::Status::fail;
          du.witness = "diamond of a union differs from the join of diamonds";
        }
        ++dc.cases;
        if (!dc.failed() &&
            !fn_eq(q, fdia(a.compose(b), q, f), fdia(a, q, fdia(b, q, f)))) {
          dc.status = LawCheck::Status::fail;
          dc.witness = "diamond of a composition is not the composition";
        }
      }

  auto& ds = r.add("dia-sup");
  auto& di = r.add("dia-identity");
  for (const auto& a : brels)
    for (size_t i = 0; i < tables.size(); ++i) {
      const auto& f = tables[i];
      const auto& g = tables[(i + 1) % tables.size()];
      ++ds.cases;
      if (!ds.failed() &&
          !fn_eq(q, fdia(a, q, pointwise_join(q, f, g)),
                 pointwise_join(q, fdia(a, q, f), fdia(a, q, g)))) {
        ds.status = LawCheck::Status::fail;
        ds.witness = "diamond does not preserve binary joins";
      }
      ++di.cases;
      if (!di.failed() &&
          !fn_eq(q, fdia(BinRel::identity(a.rows()), q, f), f)) {
        di.status = LawCheck::Status::fail;
        di.witness = "identity diamond is not the identity";
      }
    }

  auto& cu = r.add("conv-union");
  auto& cl = r.add("conv-sup-left");
  auto& cr = r.add("conv-sup-right");
  for (const auto& t : trels)
    for (const auto& u : trels)
      for (size_t i = 0; i < tables.size(); ++i) {
        const auto& f = tables[i];
        const auto& g = tables[(i + 1) % tables.size()];
        const auto& h = tables[(i + 2) % tables.size()];
        ++cu.cases;
        if (!cu.failed() &&
            !fn_eq(q, convolve(rel_union(t, u), q, f, g),
                   pointwise_join(q, convolve(t, q, f, g),
                                  convolve(u, q, f, g)))) {
          cu.status = LawCheck::Status::fail;
          cu.witness = "convolution over a union differs from the join";
        }
        ++cl.cases;
        if (!cl.failed() &&
            !fn_eq(q, convolve(t, q, pointwise_join(q, f, g), h),
                   pointwise_join(q, convolve(t, q, f, h),
                                  convolve(t, q, g, h)))) {
          cl.status = LawCheck::Status::fail;
          cl.witness = "join in the left argument is not preserved";
        }
        ++cr.cases;
        if (!cr.failed() &&
            !fn_eq(q, convolve(t, q, f, pointwise_join(q, g, h)),
                   pointwise_join(q, convolve(t, q, f, g),
                                  convolve(t, q, f, h)))) {
          cr.status = LawCheck::Status::fail;
          cr.witness = "join in the right argument is not preserved";
        }
      }

  auto& gf = r.add("galois-fdia-bbox");
  auto& gb = r.add("galois-bdia-fbox");
  for (const auto& a : brels)
    for (const auto& f : tables)
      for (const auto& g : tables) {
        ++gf.cases;
        if (!gf.failed() &&
            fn_leq(q, fdia(a, q, f), g) != fn_leq(q, f, bbox(a, q, g))) {
          gf.status = LawCheck::Status::fail;
          gf.witness = "forward diamond and backward box are not adjoint";
        }
        ++gb.cases;
        if (!gb.failed() &&
            fn_leq(q, bdia(a, q, f), g) != fn_leq(q, f, fbox(a, q, g))) {
          gb.status = LawCheck::Status::fail;
          gb.witness = "backward diamond and forward box are not adjoint";
        }
      }

  if (check_conjugations) {
    auto bot = [&](const Fn& f) {
      for (const auto& v : f)
        if (!q.eq(v, q.bottom())) return false;
      return true;
    };
    auto meet_fn = [&](const Fn& f, const Fn& g) {
      Fn out(f.size());
      for (size_t i = 0; i < f.size(); ++i) out[i] = q.meet(f[i], g[i]);
      return out;
    };
    auto& cf = r.add("conjugation-fwd");
    auto& cb = r.add("conjugation-bwd");
    for (const auto& a : brels)
      for (const auto& f : tables)
        for (const auto& g : tables) {
          ++cf.cases;
          if (!cf.failed() && bot(meet_fn(fdia(a, q, f), g)) !=
                                  bot(meet_fn(f, bdia(a, q, g)))) {
            cf.status = LawCheck::Status::fail;
            cf.witness = "forward conjugation equivalence fails";
          }
          ++cb.cases;
          if (!cb.failed() && bot(meet_fn(bdia(a, q, f), g)) !=
                                  bot(meet_fn(f, fdia(a, q, g)))) {
            cb.status = LawCheck::Status::fail;
            cb.witness = "backward conjugation equivalence fails";
          }
        }
  }

  return r;
}

// Reference (plain-loop) and parallel kernels for the exhaustive lifting
// scans. The parallel versions use OpenMP when it is enabled at build time
// and otherwise degrade to the serial behaviour with identical results.
namespace serial {
// table-code composition: out[i*k + j] = code of (table i * table j)
std::vector<int32_t> conv_table(const TernaryRel& r, const FinQuantale& q,
                                const std::vector<FnF>& tables);
// first associativity violation, or {-1,-1,-1}
std::array<int, 3> assoc_scan(const std::vector<int32_t>& conv, int k);
} // namespace serial

namespace par {
std::vector<int32_t> conv_table(const TernaryRel& r, const FinQuantale& q,
                                const std::vector<FnF>& tables);
std::array<int, 3> assoc_scan(const std::vector<int32_t>& conv, int k);
} // namespace par

} // namespace convalg
