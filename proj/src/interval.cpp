#include "convalg/interval.hpp"

#include <algorithm>

namespace convalg {

FinPoset::FinPoset(std::vector<std::string> names,
                   std::vector<std::pair<int, int>> leq)
    : n_(static_cast<int>(names.size())), names_(std::move(names)) {
  leq_.assign(static_cast<size_t>(n_) * n_, 0);
  for (int i = 0; i < n_; ++i) leq_[i * n_ + i] = 1;
  for (auto [a, b] : leq) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_)
      throw std::invalid_argument("order pair out of range");
    leq_[a * n_ + b] = 1;
  }
  for (int k = 0; k < n_; ++k)
    for (int a = 0; a < n_; ++a)
      if (leq_[a * n_ + k])
        for (int b = 0; b < n_; ++b)
          if (leq_[k * n_ + b]) leq_[a * n_ + b] = 1;
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (leq_[a * n_ + b] && leq_[b * n_ + a])
        throw std::invalid_argument("not antisymmetric: " + names_[a] +
                                    " <= " + names_[b] + " <= " + names_[a]);
}

int FinPoset::index_of(const std::string& name) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return -1;
}

FinPoset chain_poset(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i <= n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) leq.emplace_back(i - 1, i);
  }
  return FinPoset(std::move(names), std::move(leq));
}

FinPoset diamond_poset() {
  return FinPoset({"bot", "a", "b", "top"},
                  {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

FinPoset forest_poset() {
  return FinPoset({"a0", "a1", "b0", "b1"}, {{0, 1}, {2, 3}});
}

std::vector<FinPoset> poset_catalog() {
  std::vector<FinPoset> out;
  for (int n = 0; n <= 6; ++n) out.push_back(chain_poset(n));
  out.push_back(diamond_poset());
  out.push_back(forest_poset());
  return out;
}

LiResult check_li(const FinPoset& p) {
  const int n = p.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!p.leq(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (!(p.leq(i, k) && p.leq(k, j))) continue;
        for (int l = 0; l < n; ++l) {
          if (!(p.leq(i, l) && p.leq(l, j))) continue;
          if (!p.leq(k, l) && !p.leq(l, k)) return {false, {i, j, k, l}};
        }
      }
    }
  return {};
}

std::vector<std::pair<int, int>> poset_segments(const FinPoset& p,
                                                bool strict) {
  std::vector<std::pair<int, int>> segs;
  for (int lo = 0; lo < p.size(); ++lo)
    for (int hi = 0; hi < p.size(); ++hi)
      if (p.leq(lo, hi) && (!strict || lo != hi)) segs.emplace_back(lo, hi);
  return segs;
}

std::string segment_name(const FinPoset& p, std::pair<int, int> s) {
  return "[" + p.name(s.first) + "," + p.name(s.second) + "]";
}

namespace {

int find_segment(const std::vector<std::pair<int, int>>& segs, int lo,
                 int hi) {
  auto it = std::lower_bound(segs.begin(), segs.end(), std::pair{lo, hi});
  if (it == segs.end() || *it != std::pair{lo, hi}) return -1;
  return static_cast<int>(it - segs.begin());
}

PartialMonoid fusion_monoid(const FinPoset& p,
                            const std::vector<std::pair<int, int>>& segs) {
  const int n = static_cast<int>(segs.size());
  std::vector<std::string> names(n);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  std::vector<int> units;
  for (int x = 0; x < n; ++x) {
    names[x] = segment_name(p, segs[x]);
    if (segs[x].first == segs[x].second) units.push_back(x);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (segs[x].second == segs[y].first)
        comp[static_cast<size_t>(x) * n + y] =
            find_segment(segs, segs[x].first, segs[y].second);
  return PartialMonoid(std::move(names), std::move(comp), std::move(units));
}

} // namespace

PartialMonoid segment_monoid(const FinPoset& p, bool strict) {
  return fusion_monoid(p, poset_segments(p, strict));
}

int IntervalAlgebra::seg_index(int lo, int hi) const {
  return find_segment(segments, lo, hi);
}

int IntervalAlgebra::seg_index(const std::string& name) const {
  return fusion.index_of(name);
}

IntervalAlgebra interval_algebra(const FinPoset& p, bool strict) {
  IntervalAlgebra ia;
  ia.poset = p;
  ia.strict = strict;
  ia.segments = poset_segments(p, strict);
  ia.fusion = fusion_monoid(p, ia.segments);
  const int n = static_cast<int>(ia.segments.size());

  auto rm = rel_of_psg(ia.fusion);
  ia.ven.c = rm.rel;
  std::vector<std::array<int, 3>> dv, tv;
  BinRel b(n), e(n), a(n);
  for (const auto& t : ia.ven.c.triples()) {
    dv.push_back({t[2], t[1], t[0]});
    tv.push_back({t[1], t[2], t[0]});
    b.set(t[0], t[1]);
    e.set(t[0], t[2]);
    a.set(t[1], t[2]);
  }
  ia.ven.dv = TernaryRel(ia.fusion.names(), dv);
  ia.ven.tv = TernaryRel(ia.fusion.names(), tv);

  auto d = b.compose(e);
  if (!(d == e.compose(b)))
    throw std::logic_error("b;e and e;b disagree over " +
                           std::to_string(n) + " segments");
  ia.allen = AllenRels{b, e, a, d, b.compose(e.converse()), a.compose(a)};
  return ia;
}

AllenRels allen_relations(const FinPoset& p, bool strict) {
  return interval_algebra(p, strict).allen;
}

VenemaRels venema_relations(const FinPoset& p, bool strict) {
  return interval_algebra(p, strict).ven;
}

const std::vector<std::string>& hs_modality_names() {
  static const std::vector<std::string> names{"B", "E", "A", "Bc", "Ec", "Ac"};
  return names;
}

SigmaResult check_sigma_union(const FinPoset& p) {
  const int n = p.size();
  auto segs = poset_segments(p, false);
  auto sigma = [&](std::pair<int, int> s) {
    std::vector<uint8_t> in(n, 0);
    for (int k = 0; k < n; ++k)
      if (p.leq(s.first, k) && p.leq(k, s.second)) in[k] = 1;
    return in;
  };
  for (const auto& x : segs)
    for (const auto& y : segs) {
      if (x.second != y.first) continue;
      auto sx = sigma(x), sy = sigma(y), sxy = sigma({x.first, y.second});
      for (int k = 0; k < n; ++k)
        if (sxy[k] && !sx[k] && !sy[k])
          return {false, segment_name(p, x) + " * " + segment_name(p, y) +
                             " covers " + p.name(k) +
                             " which neither factor does"};
    }
  return {};
}

nlohmann::json poset_to_json(const FinPoset& p) {
  nlohmann::json leq = nlohmann::json::array();
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b)) leq.push_back({a, b});
  return {{"carrier", p.names()}, {"leq", leq}};
}

FinPoset poset_from_json(const nlohmann::json& j) {
  std::vector<std::string> names = j.at("carrier");
  std::vector<std::pair<int, int>> leq;
  for (const auto& e : j.at("leq")) leq.emplace_back(e.at(0), e.at(1));
  return FinPoset(std::move(names), std::move(leq));
}

} // namespace convalg
