#include "convalg/psg.hpp"

#include <algorithm>
#include <stdexcept>

namespace convalg {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("partial monoid: " + what);
}

} // namespace

PartialMonoid::PartialMonoid(std::vector<std::string> names,
                             std::vector<int32_t> comp, std::vector<int> units,
                             std::vector<uint8_t> defined)
    : n_(static_cast<int>(names.size())),
      names_(std::move(names)),
      comp_(std::move(comp)),
      defined_(std::move(defined)),
      units_(std::move(units)) {
  if (comp_.size() != static_cast<size_t>(n_) * n_)
    bad("composition table has wrong size");
  if (defined_.empty()) {
    defined_.resize(comp_.size());
    for (size_t i = 0; i < comp_.size(); ++i) defined_[i] = comp_[i] >= 0;
  }
  if (defined_.size() != comp_.size()) bad("definedness table has wrong size");
  for (size_t i = 0; i < comp_.size(); ++i) {
    if (comp_[i] < -1 || comp_[i] >= n_) bad("composition entry out of range");
    if ((comp_[i] >= 0) != (defined_[i] != 0))
      bad("definedness predicate disagrees with the table");
  }
  for (int u : units_)
    if (u < 0 || u >= n_) bad("unit index out of range");
}

int PartialMonoid::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool PartialMonoid::is_unit(int x) const {
  return std::find(units_.begin(), units_.end(), x) != units_.end();
}

LawReport check_psg_laws(const PartialMonoid& m) {
  LawReport r;
  r.subject = "partial monoid";
  const int n = m.size();

  auto& consistent = r.add("definedness-consistent");
  for (int a = 0; a < n && !consistent.failed(); ++a)
    for (int b = 0; b < n; ++b) {
      ++consistent.cases;
      if (m.defined(a, b) != (m.compose(a, b) >= 0)) {
        consistent.status = LawCheck::Status::fail;
        consistent.witness = "at " + m.name(a) + ", " + m.name(b);
        break;
      }
    }

  auto& adef = r.add("assoc-defined-iff");
  auto& aeq = r.add("assoc-equal");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const bool inner_r = m.defined(y, z);
        const bool lhs = inner_r && m.defined(x, m.compose(y, z));
        const bool inner_l = m.defined(x, y);
        const bool rhs = inner_l && m.defined(m.compose(x, y), z);
        ++adef.cases;
        if (lhs != rhs && !adef.failed()) {
          adef.status = LawCheck::Status::fail;
          adef.witness = "definedness differs at " + m.name(x) + ", " +
                         m.name(y) + ", " + m.name(z);
        }
        ++aeq.cases;
        if (lhs && rhs && !aeq.failed()) {
          const int l = m.compose(x, m.compose(y, z));
          const int rr = m.compose(m.compose(x, y), z);
          if (l != rr) {
            aeq.status = LawCheck::Status::fail;
            aeq.witness = m.name(x) + "(" + m.name(y) + m.name(z) + ") = " +
                          m.name(l) + " but (" + m.name(x) + m.name(y) + ")" +
                          m.name(z) + " = " + m.name(rr);
          }
        }
      }

  if (!m.units().empty()) {
    auto& lu = r.add("left-unit-exists");
    auto& ru = r.add("right-unit-exists");
    for (int x = 0; x < n; ++x) {
      bool has_l = false, has_r = false;
      for (int e : m.units()) {
        if (m.defined(e, x) && m.compose(e, x) == x) has_l = true;
        if (m.defined(x, e) && m.compose(x, e) == x) has_r = true;
      }
      ++lu.cases;
      if (!has_l && !lu.failed()) {
        lu.status = LawCheck::Status::fail;
        lu.witness = "no left unit for " + m.name(x);
      }
      ++ru.cases;
      if (!has_r && !ru.failed()) {
        ru.status = LawCheck::Status::fail;
        ru.witness = "no right unit for " + m.name(x);
      }
    }

    auto& uc = r.add("unit-composition");
    for (int e : m.units())
      for (int f : m.units()) {
        ++uc.cases;
        if (e != f && m.defined(e, f) && !uc.failed()) {
          uc.status = LawCheck::Status::fail;
          uc.witness = m.name(e) + m.name(f) + " is defined";
        }
      }
  } else {
    auto& nu = r.add("unitless");
    for (int e = 0; e < n; ++e) {
      bool unit = true;
      for (int x = 0; x < n && unit; ++x)
        unit = m.defined(e, x) && m.compose(e, x) == x && m.defined(x, e) &&
               m.compose(x, e) == x;
      ++nu.cases;
      if (unit && !nu.failed()) {
        nu.status = LawCheck::Status::fail;
        nu.witness = m.name(e) + " is a two-sided unit";
      }
    }
  }

  return r;
}

bool psg_strict_ok(const LawReport& r) { return r.ok(); }

bool psg_weak_ok(const LawReport& r) {
  for (const auto& c : r.checks)
    if (c.failed() && c.name != "assoc-defined-iff") return false;
  return true;
}

PartialMonoid pairs_monoid(int k) {
  const int n = k * k;
  std::vector<std::string> names(n);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  std::vector<int> units;
  auto id = [k](int a, int b) { return a * k + b; };
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      names[id(a, b)] =
          "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        comp[static_cast<size_t>(id(a, b)) * n + id(b, c)] = id(a, c);
  for (int a = 0; a < k; ++a) units.push_back(id(a, a));
  return PartialMonoid(std::move(names), std::move(comp), std::move(units));
}

PartialMonoid product_monoid(const PartialMonoid& m1, const PartialMonoid& m2) {
  const int n1 = m1.size(), n2 = m2.size(), n = n1 * n2;
  std::vector<std::string> names(n);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  std::vector<int> units;
  auto id = [n2](int a, int b) { return a * n2 + b; };
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      names[id(a, b)] = "(" + m1.name(a) + "," + m2.name(b) + ")";
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int c = 0; c < n1; ++c)
        for (int d = 0; d < n2; ++d)
          if (m1.defined(a, c) && m2.defined(b, d))
            comp[static_cast<size_t>(id(a, b)) * n + id(c, d)] =
                id(m1.compose(a, c), m2.compose(b, d));
  for (int e : m1.units())
    for (int f : m2.units()) units.push_back(id(e, f));
  return PartialMonoid(std::move(names), std::move(comp), std::move(units));
}

PartialMonoid monoid_set_product(const PartialMonoid& m,
                                 const std::vector<std::string>& tags) {
  const int nm = m.size(), nt = static_cast<int>(tags.size()), n = nm * nt;
  std::vector<std::string> names(n);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  std::vector<int> units;
  auto id = [nt](int x, int s) { return x * nt + s; };
  for (int x = 0; x < nm; ++x)
    for (int s = 0; s < nt; ++s) names[id(x, s)] = "(" + m.name(x) + "," + tags[s] + ")";
  for (int x = 0; x < nm; ++x)
    for (int y = 0; y < nm; ++y)
      if (m.defined(x, y))
        for (int s = 0; s < nt; ++s)
          comp[static_cast<size_t>(id(x, s)) * n + id(y, s)] =
              id(m.compose(x, y), s);
  for (int e : m.units())
    for (int s = 0; s < nt; ++s) units.push_back(id(e, s));
  return PartialMonoid(std::move(names), std::move(comp), std::move(units));
}

PartialMonoid free_monoid_trunc(const std::vector<std::string>& alphabet,
                                int maxlen) {
  std::vector<std::vector<int>> words{{}};
  for (size_t i = 0; i < words.size(); ++i) {
    if (static_cast<int>(words[i].size()) >= maxlen) continue;
    for (int a = 0; a < static_cast<int>(alphabet.size()); ++a) {
      auto w = words[i];
      w.push_back(a);
      words.push_back(std::move(w));
    }
  }
  const int n = static_cast<int>(words.size());
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) {
    if (words[i].empty()) names[i] = "ε";
    for (int a : words[i]) names[i] += alphabet[a];
  }
  auto find = [&](const std::vector<int>& w) {
    for (int i = 0; i < n; ++i)
      if (words[i] == w) return i;
    return -1;
  };
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(words[i].size() + words[j].size()) > maxlen) continue;
      auto w = words[i];
      w.insert(w.end(), words[j].begin(), words[j].end());
      comp[static_cast<size_t>(i) * n + j] = find(w);
    }
  return PartialMonoid(std::move(names), std::move(comp), {find({})});
}

PartialMonoid one_element_monoid() {
  return PartialMonoid({"e"}, {0}, {0});
}

PartialMonoid boundary_monoid() {
  // indices: 0=(o,o) 1=(o,c) 2=(c,o) 3=(c,c); x•y = (fst x, snd y) when
  // snd x != fst y
  std::vector<std::string> names{"(o,o)", "(o,c)", "(c,o)", "(c,c)"};
  const int n = 4;
  std::vector<int32_t> comp(16, -1);
  auto fst = [](int x) { return x >> 1; };
  auto snd = [](int x) { return x & 1; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (snd(x) != fst(y))
        comp[static_cast<size_t>(x) * n + y] = (fst(x) << 1) | snd(y);
  return PartialMonoid(std::move(names), std::move(comp), {1, 2});
}

PartialMonoid boundary_segment_monoid(const PartialMonoid& segments) {
  auto bdry = boundary_monoid();
  auto prod = product_monoid(segments, bdry);
  std::vector<uint8_t> keep(prod.size(), 1);
  const int open_open = bdry.index_of("(o,o)");
  for (int e : segments.units()) keep[e * bdry.size() + open_open] = 0;
  return restrict_submonoid(prod, keep);
}

PartialMonoid adjoin_annihilator(const PartialMonoid& m,
                                 const std::string& zero_name) {
  const int n = m.size() + 1, zero = m.size();
  std::vector<std::string> names(m.names());
  names.push_back(zero_name);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      comp[static_cast<size_t>(a) * n + b] = m.compose(a, b);
  for (int x = 0; x < n; ++x) {
    comp[static_cast<size_t>(zero) * n + x] = zero;
    comp[static_cast<size_t>(x) * n + zero] = zero;
  }
  return PartialMonoid(std::move(names), std::move(comp), m.units());
}

PartialMonoid restrict_submonoid(const PartialMonoid& m,
                                 const std::vector<uint8_t>& keep) {
  if (keep.size() != static_cast<size_t>(m.size()))
    throw std::invalid_argument("restriction mask has wrong size");
  std::vector<int> to_new(m.size(), -1);
  std::vector<std::string> names;
  for (int x = 0; x < m.size(); ++x)
    if (keep[x]) {
      to_new[x] = static_cast<int>(names.size());
      names.push_back(m.name(x));
    }
  const int n = static_cast<int>(names.size());
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < m.size(); ++a) {
    if (!keep[a]) continue;
    for (int b = 0; b < m.size(); ++b) {
      if (!keep[b] || !m.defined(a, b)) continue;
      const int c = m.compose(a, b);
      if (!keep[c])
        throw std::invalid_argument("restriction is not closed: " + m.name(a) +
                                    " * " + m.name(b) + " = " + m.name(c) +
                                    " is dropped");
      comp[static_cast<size_t>(to_new[a]) * n + to_new[b]] = to_new[c];
    }
  }
  std::vector<int> units;
  for (int e : m.units())
    if (keep[e]) units.push_back(to_new[e]);
  return PartialMonoid(std::move(names), std::move(comp), std::move(units));
}

LawReport check_action_laws(const PartialAction& a) {
  LawReport r;
  r.subject = "partial action";
  const auto& S = a.s;
  const auto& T = a.t;

  auto& adef = r.add("action-assoc-defined-iff");
  auto& aeq = r.add("action-assoc-equal");
  for (int x = 0; x < S.size(); ++x)
    for (int y = 0; y < S.size(); ++y)
      for (int t = 0; t < T.size(); ++t) {
        const bool lhs = S.defined(x, y) && a.act_defined(S.compose(x, y), t);
        const bool rhs =
            a.act_defined(y, t) && a.act_defined(x, a.apply(y, t));
        ++adef.cases;
        if (lhs != rhs && !adef.failed()) {
          adef.status = LawCheck::Status::fail;
          adef.witness = "definedness differs at " + S.name(x) + ", " +
                         S.name(y) + ", " + T.name(t);
        }
        ++aeq.cases;
        if (lhs && rhs && !aeq.failed()) {
          const int l = a.apply(S.compose(x, y), t);
          const int rr = a.apply(x, a.apply(y, t));
          if (l != rr) {
            aeq.status = LawCheck::Status::fail;
            aeq.witness = "(" + S.name(x) + S.name(y) + ")∘" + T.name(t) +
                          " = " + T.name(l) + " but nested application gives " +
                          T.name(rr);
          }
        }
      }

  auto& mdef = r.add("action-merge-defined-iff");
  auto& meq = r.add("action-merge-equal");
  for (int x = 0; x < S.size(); ++x)
    for (int t = 0; t < T.size(); ++t)
      for (int u = 0; u < T.size(); ++u) {
        const bool lhs = T.defined(t, u) && a.act_defined(x, T.compose(t, u));
        const bool rhs = a.act_defined(x, t) && a.act_defined(x, u) &&
                         T.defined(a.apply(x, t), a.apply(x, u));
        ++mdef.cases;
        if (lhs != rhs && !mdef.failed()) {
          mdef.status = LawCheck::Status::fail;
          mdef.witness = "definedness differs at " + S.name(x) + ", " +
                         T.name(t) + ", " + T.name(u);
        }
        ++meq.cases;
        if (lhs && rhs && !meq.failed()) {
          const int l = a.apply(x, T.compose(t, u));
          const int rr = T.compose(a.apply(x, t), a.apply(x, u));
          if (l != rr) {
            meq.status = LawCheck::Status::fail;
            meq.witness = S.name(x) + "∘(" + T.name(t) + T.name(u) + ") = " +
                          T.name(l) + " but composing the parts gives " +
                          T.name(rr);
          }
        }
      }

  auto& ue = r.add("acting-unit-exists");
  for (int t = 0; t < T.size(); ++t) {
    bool has = false;
    for (int e : S.units())
      if (a.act_defined(e, t) && a.apply(e, t) == t) has = true;
    ++ue.cases;
    if (!has && !ue.failed()) {
      ue.status = LawCheck::Status::fail;
      ue.witness = "no acting unit for " + T.name(t);
    }
  }

  auto& ut = r.add("acting-unit-trivial");
  auto& utot = r.add("acting-unit-total");
  for (int e : S.units())
    for (int t = 0; t < T.size(); ++t) {
      ++ut.cases;
      if (a.act_defined(e, t) && a.apply(e, t) != t && !ut.failed()) {
        ut.status = LawCheck::Status::fail;
        ut.witness = S.name(e) + "∘" + T.name(t) + " = " +
                     T.name(a.apply(e, t));
      }
      ++utot.cases;
      if (!a.act_defined(e, t) && !utot.failed()) {
        utot.status = LawCheck::Status::fail;
        utot.witness = S.name(e) + "∘" + T.name(t) + " is undefined";
      }
    }

  auto& ab = r.add("acted-unit-absorbs");
  for (int x = 0; x < S.size(); ++x)
    for (int e : T.units()) {
      ++ab.cases;
      if ((!a.act_defined(x, e) || a.apply(x, e) != e) && !ab.failed()) {
        ab.status = LawCheck::Status::fail;
        ab.witness = S.name(x) + "∘" + T.name(e) +
                     (a.act_defined(x, e) ? " = " + T.name(a.apply(x, e))
                                          : " is undefined");
      }
    }

  return r;
}

PartialMonoid sd_monoid(const PartialAction& a) {
  auto rep = check_action_laws(a);
  for (const auto& row : rep.checks)
    if (row.failed() && row.name != "action-assoc-defined-iff" &&
        row.name != "action-merge-defined-iff" &&
        row.name != "acting-unit-total" && row.name != "acting-unit-exists")
      throw std::invalid_argument("semidirect product needs " + row.name +
                                  "; fails at " + row.witness);

  const auto& S = a.s;
  const auto& T = a.t;
  const int ns = S.size(), nt = T.size(), n = ns * nt;
  auto id = [nt](int s, int t) { return s * nt + t; };
  std::vector<std::string> names(n);
  for (int s = 0; s < ns; ++s)
    for (int t = 0; t < nt; ++t)
      names[id(s, t)] = "(" + S.name(s) + "," + T.name(t) + ")";
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  for (int s1 = 0; s1 < ns; ++s1)
    for (int t1 = 0; t1 < nt; ++t1)
      for (int s2 = 0; s2 < ns; ++s2)
        for (int t2 = 0; t2 < nt; ++t2) {
          if (!S.defined(s1, s2) || !a.act_defined(s1, t2)) continue;
          const int moved = a.apply(s1, t2);
          if (!T.defined(t1, moved)) continue;
          comp[static_cast<size_t>(id(s1, t1)) * n + id(s2, t2)] =
              id(S.compose(s1, s2), T.compose(t1, moved));
        }
  std::vector<int> units;
  for (int e : S.units())
    for (int f : T.units()) units.push_back(id(e, f));
  return PartialMonoid(std::move(names), std::move(comp), std::move(units));
}

FinInfSegmentAction fin_inf_segment_action(int n) {
  if (n < 1) throw std::invalid_argument("chain must have at least two points");
  // finite segments [i,j], 0 <= i <= j <= n, under fusion
  std::vector<std::pair<int, int>> segs;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) segs.emplace_back(i, j);
  const int nf = static_cast<int>(segs.size());
  std::vector<std::string> fnames(nf);
  std::vector<int> funits;
  auto seg_id = [&](int i, int j) {
    for (int k = 0; k < nf; ++k)
      if (segs[k] == std::make_pair(i, j)) return k;
    return -1;
  };
  for (int k = 0; k < nf; ++k) {
    fnames[k] = "[" + std::to_string(segs[k].first) + "," +
                std::to_string(segs[k].second) + "]";
    if (segs[k].first == segs[k].second) funits.push_back(k);
  }
  std::vector<int32_t> fcomp(static_cast<size_t>(nf) * nf, -1);
  for (int x = 0; x < nf; ++x)
    for (int y = 0; y < nf; ++y)
      if (segs[x].second == segs[y].first)
        fcomp[static_cast<size_t>(x) * nf + y] =
            seg_id(segs[x].first, segs[y].second);
  PartialMonoid fin(std::move(fnames), std::move(fcomp), std::move(funits));
  PartialMonoid s = adjoin_annihilator(fin, "0");
  const int s_zero = s.size() - 1;

  // T: empty segment (unit, index 0) plus [i,inf]; merge by equality
  const int ni = n + 2;
  std::vector<std::string> inames(ni);
  inames[0] = "0";
  for (int i = 0; i <= n; ++i) inames[i + 1] = "[" + std::to_string(i) + ",inf]";
  std::vector<int32_t> icomp(static_cast<size_t>(ni) * ni, -1);
  for (int x = 0; x < ni; ++x)
    for (int y = 0; y < ni; ++y)
      if (x == 0)
        icomp[static_cast<size_t>(x) * ni + y] = y;
      else if (y == 0 || x == y)
        icomp[static_cast<size_t>(x) * ni + y] = x;
  PartialMonoid t(std::move(inames), std::move(icomp), {0});

  std::vector<int32_t> act(static_cast<size_t>(s.size()) * ni, -1);
  for (int x = 0; x < s.size(); ++x)
    for (int v = 0; v < ni; ++v) {
      if (x == s_zero || v == 0) {
        act[static_cast<size_t>(x) * ni + v] = 0;  // collapses to the empty segment
      } else {
        const int i = segs[x].first, j = segs[x].second, k = v - 1;
        if (j == k) act[static_cast<size_t>(x) * ni + v] = i + 1;
      }
    }

  FinInfSegmentAction out;
  out.action = PartialAction{std::move(s), std::move(t), std::move(act)};
  out.s_zero = s_zero;
  out.t_unit = 0;
  out.chain_n = n;
  return out;
}

std::vector<uint8_t> pure_pair_mask(const FinInfSegmentAction& fia) {
  const int ns = fia.action.s.size(), nt = fia.action.t.size();
  std::vector<uint8_t> keep(static_cast<size_t>(ns) * nt, 0);
  for (int s = 0; s < ns; ++s)
    for (int t = 0; t < nt; ++t)
      if (t == fia.t_unit || s == fia.s_zero)
        keep[static_cast<size_t>(s) * nt + t] = 1;
  return keep;
}

nlohmann::json psg_to_json(const PartialMonoid& m) {
  nlohmann::json j;
  j["carrier"] = m.names();
  nlohmann::json comp = nlohmann::json::array();
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      if (m.defined(a, b))
        comp.push_back({a, b, m.compose(a, b)});
  j["compose"] = std::move(comp);
  j["units"] = m.units();
  return j;
}

PartialMonoid psg_from_json(const nlohmann::json& j) {
  std::vector<std::string> names = j.at("carrier").get<std::vector<std::string>>();
  const int n = static_cast<int>(names.size());
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  for (const auto& e : j.at("compose")) {
    const int a = e.at(0).get<int>(), b = e.at(1).get<int>(),
              c = e.at(2).get<int>();
    if (a < 0 || a >= n || b < 0 || b >= n || c < 0 || c >= n)
      throw std::invalid_argument("partial monoid: composition entry out of range");
    comp[static_cast<size_t>(a) * n + b] = c;
  }
  std::vector<int> units;
  if (j.contains("units")) units = j.at("units").get<std::vector<int>>();
  return PartialMonoid(std::move(names), std::move(comp), std::move(units));
}

} // namespace convalg
