#include "convalg/conv.hpp"

#include <array>
#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace convalg {

namespace {

std::string table_str(const FinQuantale& q, const FnF& f) {
  std::string s = "[";
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += q.name(f[i]);
  }
  return s + "]";
}

uint64_t pow_capped(uint64_t base, int exp, uint64_t cap) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base == 0 || r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// table k has digits k (mod nq), k/nq (mod nq), ... over the carrier
FnF decode_table(uint64_t k, int nx, int nq) {
  FnF f(nx);
  for (int i = 0; i < nx; ++i) {
    f[i] = static_cast<int32_t>(k % nq);
    k /= nq;
  }
  return f;
}

uint64_t encode_table(const FnF& f, int nq) {
  uint64_t k = 0;
  for (size_t i = f.size(); i-- > 0;) k = k * nq + static_cast<uint64_t>(f[i]);
  return k;
}

} // namespace

FnF residual_mod_left(const TernaryRel& r, const FinQuantale& q, const FnF& f,
                      const FnF& g) {
  const size_t n = static_cast<size_t>(r.size());
  if (f.size() != n || g.size() != n)
    throw std::invalid_argument("residual: table size does not match carrier");
  FnF out(n, q.top());
  for (int x = 0; x < r.size(); ++x)
    for (const auto& [whole, y] : r.with_third(x))
      out[x] = q.meet(out[x], residual_left(q, f[y], g[whole]));
  return out;
}

FnF residual_mod_right(const TernaryRel& r, const FinQuantale& q, const FnF& f,
                       const FnF& g) {
  const size_t n = static_cast<size_t>(r.size());
  if (f.size() != n || g.size() != n)
    throw std::invalid_argument("residual: table size does not match carrier");
  FnF out(n, q.top());
  for (int x = 0; x < r.size(); ++x)
    for (const auto& [whole, z] : r.with_second(x))
      out[x] = q.meet(out[x], residual_right(q, f[whole], g[z]));
  return out;
}

LawReport check_conv_galois(const TernaryRel& r, const FinQuantale& q) {
  LawReport rep;
  rep.subject = "convolution residuals";
  const int nx = r.size(), nq = q.size();
  const uint64_t budget = 2'000'000'000ULL;
  const uint64_t k = pow_capped(nq, nx, 1u << 20);
  if (k > (1u << 20) || k * k * k > budget)
    throw std::invalid_argument(
        "carrier too large for the exhaustive Galois check");

  std::vector<FnF> tables(k);
  for (uint64_t i = 0; i < k; ++i) tables[i] = decode_table(i, nx, nq);

  auto& gl = rep.add("galois-left");
  auto& gr = rep.add("galois-right");
  for (uint64_t fi = 0; fi < k; ++fi)
    for (uint64_t gi = 0; gi < k; ++gi) {
      const auto fg = convolve(r, q, tables[fi], tables[gi]);
      for (uint64_t hi = 0; hi < k; ++hi) {
        const bool below = fn_leq(q, fg, tables[hi]);
        ++gl.cases;
        if (!gl.failed() &&
            below != fn_leq(q, tables[gi],
                            residual_mod_left(r, q, tables[fi], tables[hi]))) {
          gl.status = LawCheck::Status::fail;
          gl.witness = "f=" + table_str(q, tables[fi]) +
                       " g=" + table_str(q, tables[gi]) +
                       " h=" + table_str(q, tables[hi]);
        }
        ++gr.cases;
        if (!gr.failed() &&
            below != fn_leq(q, tables[fi],
                            residual_mod_right(r, q, tables[hi], tables[gi]))) {
          gr.status = LawCheck::Status::fail;
          gr.witness = "f=" + table_str(q, tables[fi]) +
                       " g=" + table_str(q, tables[gi]) +
                       " h=" + table_str(q, tables[hi]);
        }
      }
    }
  return rep;
}

std::string to_string(LiftMode m) {
  switch (m) {
    case LiftMode::proto: return "proto";
    case LiftMode::quantale: return "quantale";
    case LiftMode::unital: return "unital";
    case LiftMode::weak: return "weak";
    case LiftMode::abelian: return "abelian";
    case LiftMode::semiring: return "semiring";
  }
  return "?";
}

LiftMode lift_mode_from_string(const std::string& s) {
  if (s == "proto") return LiftMode::proto;
  if (s == "quantale") return LiftMode::quantale;
  if (s == "unital") return LiftMode::unital;
  if (s == "weak") return LiftMode::weak;
  if (s == "abelian") return LiftMode::abelian;
  if (s == "semiring") return LiftMode::semiring;
  throw std::invalid_argument(
      "unknown lifting mode '" + s +
      "' (expected proto, quantale, unital, weak, abelian or semiring)");
}

namespace serial {

std::vector<int32_t> conv_table(const TernaryRel& r, const FinQuantale& q,
                                const std::vector<FnF>& tables) {
  const size_t k = tables.size();
  std::vector<int32_t> out(k * k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      out[i * k + j] = static_cast<int32_t>(
          encode_table(convolve(r, q, tables[i], tables[j]), q.size()));
  return out;
}

std::array<int, 3> assoc_scan(const std::vector<int32_t>& conv, int k) {
  for (int i = 0; i < k; ++i) {
    const int32_t* row_i = conv.data() + static_cast<size_t>(i) * k;
    for (int j = 0; j < k; ++j) {
      const int32_t* row_ij = conv.data() + static_cast<size_t>(row_i[j]) * k;
      const int32_t* row_j = conv.data() + static_cast<size_t>(j) * k;
      for (int l = 0; l < k; ++l)
        if (row_ij[l] != row_i[row_j[l]]) return {i, j, l};
    }
  }
  return {-1, -1, -1};
}

} // namespace serial

namespace par {

std::vector<int32_t> conv_table(const TernaryRel& r, const FinQuantale& q,
                                const std::vector<FnF>& tables) {
  const int64_t k = static_cast<int64_t>(tables.size());
  std::vector<int32_t> out(static_cast<size_t>(k) * k);
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t i = 0; i < k; ++i)
    for (int64_t j = 0; j < k; ++j)
      out[i * k + j] = static_cast<int32_t>(
          encode_table(convolve(r, q, tables[i], tables[j]), q.size()));
  return out;
}

std::array<int, 3> assoc_scan(const std::vector<int32_t>& conv, int k) {
  std::atomic<bool> found{false};
  std::array<int, 3> res{-1, -1, -1};
#pragma omp parallel for schedule(static)
  for (int i = 0; i < k; ++i) {
    if (found.load(std::memory_order_relaxed)) continue;
    const int32_t* row_i = conv.data() + static_cast<size_t>(i) * k;
    for (int j = 0; j < k && !found.load(std::memory_order_relaxed); ++j) {
      const int32_t* row_ij = conv.data() + static_cast<size_t>(row_i[j]) * k;
      const int32_t* row_j = conv.data() + static_cast<size_t>(j) * k;
      for (int l = 0; l < k; ++l)
        if (row_ij[l] != row_i[row_j[l]]) {
          bool expected = false;
          if (found.compare_exchange_strong(expected, true)) res = {i, j, l};
          break;
        }
    }
  }
  return res;
}

} // namespace par

namespace {

LawReport check_semiring_lifting(const RelMonoid& rm, const LiftOptions& opts) {
  LawReport r;
  r.subject = "lifting (semiring)";
  const auto& rel = rm.rel;
  const int nx = rel.size();
  Rng rng(opts.seed);

  auto& lf = r.add("locally-finite");
  lf.cases = static_cast<long>(rel.triples().size());
  lf.witness =
      "max decompositions = " + std::to_string(rel.max_decompositions());

  using CFn = std::vector<uint64_t>;
  auto cconv = [&](const CFn& f, const CFn& g) {
    CFn out(nx, 0);
    for (int x = 0; x < nx; ++x)
      for (const auto& [y, z] : rel.decompositions(x)) out[x] += f[y] * g[z];
    return out;
  };
  auto cadd = [&](const CFn& f, const CFn& g) {
    CFn out(nx);
    for (int i = 0; i < nx; ++i) out[i] = f[i] + g[i];
    return out;
  };
  auto csample = [&] {
    CFn f(nx);
    for (auto& v : f) v = rng.below(4);
    return f;
  };

  auto& assoc = r.add("semiring-assoc");
  auto& dl = r.add("semiring-left-distributivity");
  auto& dr = r.add("semiring-right-distributivity");
  assoc.sampled = dl.sampled = dr.sampled = true;
  for (int s = 0; s < opts.samples; ++s) {
    const auto f = csample(), g = csample(), h = csample();
    ++assoc.cases;
    if (!assoc.failed() && cconv(cconv(f, g), h) != cconv(f, cconv(g, h))) {
      assoc.status = LawCheck::Status::fail;
      assoc.witness = "counting convolution is not associative (sample " +
                      std::to_string(s) + ")";
    }
    ++dl.cases;
    if (!dl.failed() && cconv(cadd(f, g), h) != cadd(cconv(f, h), cconv(g, h))) {
      dl.status = LawCheck::Status::fail;
      dl.witness = "sample " + std::to_string(s);
    }
    ++dr.cases;
    if (!dr.failed() && cconv(f, cadd(g, h)) != cadd(cconv(f, g), cconv(f, h))) {
      dr.status = LawCheck::Status::fail;
      dr.witness = "sample " + std::to_string(s);
    }
  }

  if (!rm.units.empty()) {
    CFn id(nx, 0);
    for (int e : rm.units) id[e] = 1;
    auto& u = r.add("semiring-unit");
    u.sampled = true;
    for (int s = 0; s < opts.samples; ++s) {
      const auto f = csample();
      ++u.cases;
      if (!u.failed() && (cconv(id, f) != f || cconv(f, id) != f)) {
        u.status = LawCheck::Status::fail;
        u.witness = "sample " + std::to_string(s);
      }
    }
  }

  return r;
}

} // namespace

LawReport check_lifting(const RelMonoid& rm, const FinQuantale& q,
                        LiftMode mode, const LiftOptions& opts) {
  if (mode == LiftMode::semiring) return check_semiring_lifting(rm, opts);

  if (mode == LiftMode::unital && (rm.units.empty() || !q.unital()))
    throw std::invalid_argument(
        "lifting: unital mode requires units on the relation and the codomain");
  if (mode == LiftMode::abelian &&
      (!rm.rel.is_commutative() || !q.has(QFlag::abelian)))
    throw std::invalid_argument(
        "lifting: abelian mode requires a commutative relation and an abelian "
        "codomain");

  LawReport r;
  r.subject = "lifting (" + to_string(mode) + ")";
  const auto& rel = rm.rel;
  const int nx = rel.size(), nq = q.size();
  Rng rng(opts.seed);

  auto sample = [&](Rng& g) -> FnF {
    if (opts.sampler) return opts.sampler(g);
    FnF f(nx);
    for (auto& v : f) v = static_cast<int32_t>(g.below(nq));
    return f;
  };
  auto conv = [&](const FnF& f, const FnF& g) { return convolve(rel, q, f, g); };

  const uint64_t k = pow_capped(nq, nx, opts.table_bound);
  const bool enumerable = k <= opts.table_bound;
  std::vector<FnF> tables;
  if (enumerable) {
    tables.resize(k);
    for (uint64_t i = 0; i < k; ++i) tables[i] = decode_table(i, nx, nq);
  }

  const FnF bot_table(nx, q.bottom());
  const bool weak = mode == LiftMode::weak;
  const bool want_assoc = mode != LiftMode::proto && !weak;
  const bool want_units =
      (mode == LiftMode::unital || weak) && !rm.units.empty() && q.unital();
  FnF id;
  if (want_units) id = delta_unit(rm, q);

  // associativity: exhaustive via the composition table when the whole
  // triple space fits the budget, otherwise seeded samples
  if (want_assoc) {
    auto& assoc = r.add("assoc");
    if (enumerable && k * k * k <= opts.tuple_budget) {
      const auto ct = par::conv_table(rel, q, tables);
      const auto w = par::assoc_scan(ct, static_cast<int>(k));
      assoc.cases = static_cast<long>(k * k * k);
      if (w[0] >= 0) {
        assoc.status = LawCheck::Status::fail;
        assoc.witness = "f=" + table_str(q, tables[w[0]]) +
                        " g=" + table_str(q, tables[w[1]]) +
                        " h=" + table_str(q, tables[w[2]]);
      }
    } else {
      assoc.sampled = true;
      for (int s = 0; s < opts.samples; ++s) {
        const auto f = sample(rng), g = sample(rng), h = sample(rng);
        ++assoc.cases;
        if (!assoc.failed() &&
            !fn_eq(q, conv(conv(f, g), h), conv(f, conv(g, h)))) {
          assoc.status = LawCheck::Status::fail;
          assoc.witness = "f=" + table_str(q, f) + " g=" + table_str(q, g) +
                          " h=" + table_str(q, h);
        }
      }
    }
  }

  // a scan that either proves a law on every enumerated table or samples
  auto scan_tables = [&](LawCheck& row, auto&& pred, auto&& describe) {
    if (enumerable) {
      for (uint64_t i = 0; i < k; ++i) {
        ++row.cases;
        if (!pred(tables[i])) {
          row.status = LawCheck::Status::fail;
          row.witness = describe(tables[i]);
          return;
        }
      }
    } else {
      row.sampled = true;
      for (int s = 0; s < opts.samples; ++s) {
        const auto f = sample(rng);
        ++row.cases;
        if (!pred(f)) {
          row.status = LawCheck::Status::fail;
          row.witness = describe(f);
          return;
        }
      }
    }
  };
  // same scan, but the row is informational: it records the observed
  // behaviour without affecting LawReport::ok()
  auto skip_scan = [&](LawCheck& row, auto&& pred, auto&& describe) {
    row.status = LawCheck::Status::skip;
    const uint64_t limit = enumerable ? k : static_cast<uint64_t>(opts.samples);
    row.sampled = !enumerable;
    for (uint64_t i = 0; i < limit; ++i) {
      const FnF f = enumerable ? tables[i] : sample(rng);
      ++row.cases;
      if (!pred(f)) {
        row.witness = "not guaranteed in this mode; in fact fails here: " +
                      describe(f);
        return;
      }
    }
    row.witness = "not guaranteed in this mode; no violation found";
  };

  if (want_units) {
    auto& ul = r.add("unit-left");
    scan_tables(
        ul, [&](const FnF& f) { return fn_eq(q, conv(id, f), f); },
        [&](const FnF& f) { return "id*f differs from f at f=" + table_str(q, f); });
    if (weak) {
      auto& ur = r.add("unit-right");
      skip_scan(
          ur, [&](const FnF& f) { return fn_eq(q, conv(f, id), f); },
          [&](const FnF& f) { return "f*id differs from f at f=" + table_str(q, f); });
    } else if (mode == LiftMode::unital) {
      auto& ur = r.add("unit-right");
      scan_tables(
          ur, [&](const FnF& f) { return fn_eq(q, conv(f, id), f); },
          [&](const FnF& f) { return "f*id differs from f at f=" + table_str(q, f); });
    }
  }

  // distributivity over sampled families; the weak profile keeps the left
  // side away from empty families
  auto family_row = [&](LawCheck& row, bool left, bool allow_empty) {
    row.sampled = true;
    for (int s = 0; s < opts.samples; ++s) {
      const auto f = sample(rng);
      const int lo = allow_empty ? 0 : 1;
      const int sz = lo + static_cast<int>(rng.below(opts.max_family + 1 - lo));
      std::vector<FnF> fam;
      FnF joined = bot_table;
      for (int i = 0; i < sz; ++i) {
        fam.push_back(sample(rng));
        joined = pointwise_join(q, joined, fam.back());
      }
      FnF lhs = left ? conv(f, joined) : conv(joined, f);
      FnF rhs = bot_table;
      for (const auto& g : fam)
        rhs = pointwise_join(q, rhs, left ? conv(f, g) : conv(g, f));
      ++row.cases;
      if (!fn_eq(q, lhs, rhs)) {
        row.status = LawCheck::Status::fail;
        row.witness = "family of size " + std::to_string(sz) +
                      " with f=" + table_str(q, f);
        return;
      }
    }
  };
  family_row(r.add("left-distributivity"), true, !weak);
  family_row(r.add("right-distributivity"), false, true);

  {
    auto& la = r.add("left-annihilation");
    scan_tables(
        la, [&](const FnF& f) { return fn_eq(q, conv(bot_table, f), bot_table); },
        [&](const FnF& f) { return "bot*f differs from bot at f=" + table_str(q, f); });
    auto& ra = r.add("right-annihilation");
    auto pred = [&](const FnF& f) { return fn_eq(q, conv(f, bot_table), bot_table); };
    auto desc = [&](const FnF& f) {
      return "f*bot differs from bot at f=" + table_str(q, f);
    };
    if (weak)
      skip_scan(ra, pred, desc);
    else
      scan_tables(ra, pred, desc);
  }

  if (weak) {
    auto& assoc = r.add("assoc");
    assoc.status = LawCheck::Status::skip;
    auto probe = [&](const FnF& f, const FnF& g, const FnF& h) {
      ++assoc.cases;
      if (!assoc.witness.empty()) return false;
      if (!fn_eq(q, conv(conv(f, g), h), conv(f, conv(g, h)))) {
        assoc.witness =
            "not guaranteed in this mode; in fact fails here: f=" +
            table_str(q, f) + " g=" + table_str(q, g) + " h=" + table_str(q, h);
        return true;
      }
      return false;
    };
    if (enumerable && k * k * k <= 1'000'000ULL) {
      for (uint64_t i = 0; i < k && assoc.witness.empty(); ++i)
        for (uint64_t j = 0; j < k && assoc.witness.empty(); ++j)
          for (uint64_t l = 0; l < k; ++l)
            if (probe(tables[i], tables[j], tables[l])) break;
    } else {
      assoc.sampled = true;
      for (int s = 0; s < opts.samples && assoc.witness.empty(); ++s)
        probe(sample(rng), sample(rng), sample(rng));
    }
    if (assoc.witness.empty())
      assoc.witness = "not guaranteed in this mode; no violation found";
  }

  if (mode == LiftMode::abelian) {
    auto& ab = r.add("commutative");
    if (enumerable && k * k <= 16'777'216ULL) {
      for (uint64_t i = 0; i < k && !ab.failed(); ++i)
        for (uint64_t j = i; j < k; ++j) {
          ++ab.cases;
          if (!fn_eq(q, conv(tables[i], tables[j]), conv(tables[j], tables[i]))) {
            ab.status = LawCheck::Status::fail;
            ab.witness = "f=" + table_str(q, tables[i]) +
                         " g=" + table_str(q, tables[j]);
            break;
          }
        }
    } else {
      ab.sampled = true;
      for (int s = 0; s < opts.samples; ++s) {
        const auto f = sample(rng), g = sample(rng);
        ++ab.cases;
        if (!ab.failed() && !fn_eq(q, conv(f, g), conv(g, f))) {
          ab.status = LawCheck::Status::fail;
          ab.witness = "f=" + table_str(q, f) + " g=" + table_str(q, g);
        }
      }
    }
  }

  return r;
}

LawReport check_embedding(const RelMonoid& rm, const FinQuantale& q) {
  if (!q.unital())
    throw std::invalid_argument("embedding check needs a unital codomain");
  LawReport r;
  r.subject = "delta embedding";
  const auto& rel = rm.rel;
  const int n = rel.size();

  auto delta = [&](int y) {
    FnF f(n, q.bottom());
    f[y] = q.unit();
    return f;
  };

  auto& inj = r.add("delta-injective");
  inj.cases = n;
  if (q.unit() == q.bottom() && n > 1) {
    inj.status = LawCheck::Status::fail;
    inj.witness = "unit equals bottom, so all deltas coincide";
  }

  auto& mul = r.add("delta-multiplicative");
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      FnF expected(n, q.bottom());
      for (int x = 0; x < n; ++x)
        if (rel.has(x, y, z)) expected[x] = q.unit();
      ++mul.cases;
      if (!mul.failed() &&
          !fn_eq(q, convolve(rel, q, delta(y), delta(z)), expected)) {
        mul.status = LawCheck::Status::fail;
        mul.witness = "delta " + rel.name(y) + " * delta " + rel.name(z);
      }
    }

  if (!rm.units.empty()) {
    const auto id = delta_unit(rm, q);
    auto& du = r.add("delta-unit");
    for (int y = 0; y < n; ++y) {
      ++du.cases;
      const auto d = delta(y);
      if (!du.failed() && (!fn_eq(q, convolve(rel, q, id, d), d) ||
                           !fn_eq(q, convolve(rel, q, d, id), d))) {
        du.status = LawCheck::Status::fail;
        du.witness = "id does not fix delta " + rel.name(y);
      }
    }
  }

  return r;
}

std::vector<BinRel> sample_binrels(int n, int count, Rng& rng) {
  std::vector<BinRel> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    BinRel r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.below(3) == 0) r.set(i, j);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TernaryRel> sample_ternary_rels(int n, int count, Rng& rng) {
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
  std::vector<TernaryRel> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    std::vector<std::array<int, 3>> triples;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (rng.below(6) == 0) triples.push_back({x, y, z});
    out.emplace_back(names, std::move(triples));
  }
  return out;
}

FnF sample_fin_table(const FinQuantale& q, int n, Rng& rng) {
  FnF f(n);
  for (auto& v : f) v = detail::random_value(q, rng);
  return f;
}

FnR sample_real_table(const RealQuantale& q, int n, Rng& rng) {
  FnR f(n);
  for (auto& v : f) v = detail::random_value(q, rng);
  return f;
}

} // namespace convalg
