#include "convalg/relstruct.hpp"

#include <algorithm>
#include <stdexcept>

namespace convalg {

TernaryRel::TernaryRel(std::vector<std::string> names,
                       std::vector<std::array<int, 3>> triples)
    : n_(static_cast<int>(names.size())),
      names_(std::move(names)),
      triples_(std::move(triples)) {
  for (const auto& t : triples_)
    for (int c : t)
      if (c < 0 || c >= n_)
        throw std::invalid_argument("ternary relation: index out of range");
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()),
                 triples_.end());
  by1_.resize(n_);
  by2_.resize(n_);
  by3_.resize(n_);
  for (const auto& t : triples_) {
    by1_[t[0]].emplace_back(t[1], t[2]);
    by2_[t[1]].emplace_back(t[0], t[2]);
    by3_[t[2]].emplace_back(t[0], t[1]);
  }
}

int TernaryRel::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool TernaryRel::has(int x, int y, int z) const {
  return std::binary_search(triples_.begin(), triples_.end(),
                            std::array<int, 3>{x, y, z});
}

bool TernaryRel::is_commutative() const {
  for (const auto& t : triples_)
    if (!has(t[0], t[2], t[1])) return false;
  return true;
}

int TernaryRel::max_decompositions() const {
  int m = 0;
  for (const auto& d : by1_) m = std::max(m, static_cast<int>(d.size()));
  return m;
}

namespace {

// bitsets over the carrier, one per (a,b) pair
struct PairSets {
  int words;
  std::vector<uint64_t> bits;
  PairSets(int n) : words((n + 63) / 64) {
    bits.assign(static_cast<size_t>(n) * n * words, 0);
  }
  uint64_t* row(int a, int b, int n) {
    return bits.data() + (static_cast<size_t>(a) * n + b) * words;
  }
  const uint64_t* row(int a, int b, int n) const {
    return bits.data() + (static_cast<size_t>(a) * n + b) * words;
  }
};

bool intersects(const uint64_t* a, const uint64_t* b, int words) {
  for (int w = 0; w < words; ++w)
    if (a[w] & b[w]) return true;
  return false;
}

} // namespace

LawReport check_rel_monoid(const RelMonoid& rm, bool include_commutative_row) {
  LawReport r;
  r.subject = "relational monoid";
  const auto& R = rm.rel;
  const int n = R.size();

  // who[y][z] = {u : R u y z}, dec1[x][w] = {u : R x u w},
  // dec2[x][y] = {v : R x y v}
  PairSets who(n), dec1(n), dec2(n);
  for (const auto& t : R.triples()) {
    who.row(t[1], t[2], n)[t[0] >> 6] |= uint64_t{1} << (t[0] & 63);
    dec1.row(t[0], t[2], n)[t[1] >> 6] |= uint64_t{1} << (t[1] & 63);
    dec2.row(t[0], t[1], n)[t[2] >> 6] |= uint64_t{1} << (t[2] & 63);
  }

  auto& assoc = r.add("assoc");
  for (int x = 0; x < n && !assoc.failed(); ++x)
    for (int y = 0; y < n && !assoc.failed(); ++y)
      for (int z = 0; z < n && !assoc.failed(); ++z)
        for (int w = 0; w < n; ++w) {
          ++assoc.cases;
          const bool l =
              intersects(who.row(y, z, n), dec1.row(x, w, n), who.words);
          const bool rr =
              intersects(who.row(z, w, n), dec2.row(x, y, n), who.words);
          if (l != rr) {
            assoc.status = LawCheck::Status::fail;
            assoc.witness = "(" + R.name(y) + " " + R.name(z) + ") " +
                            R.name(w) + " and " + R.name(y) + " (" +
                            R.name(z) + " " + R.name(w) +
                            ") disagree about producing " + R.name(x);
            break;
          }
        }

  auto& le = r.add("left-unit-exists");
  auto& re = r.add("right-unit-exists");
  for (int y = 0; y < n; ++y) {
    bool hl = false, hr = false;
    for (int e : rm.units) {
      if (R.has(y, e, y)) hl = true;
      if (R.has(y, y, e)) hr = true;
    }
    ++le.cases;
    if (!hl && !le.failed()) {
      le.status = LawCheck::Status::fail;
      le.witness = "no unit splits " + R.name(y) + " on the left";
    }
    ++re.cases;
    if (!hr && !re.failed()) {
      re.status = LawCheck::Status::fail;
      re.witness = "no unit splits " + R.name(y) + " on the right";
    }
  }

  auto& lu = r.add("left-unit-unique");
  auto& ru = r.add("right-unit-unique");
  for (int e : rm.units) {
    for (const auto& [x, z] : R.with_second(e)) {
      ++lu.cases;
      if (x != z && !lu.failed()) {
        lu.status = LawCheck::Status::fail;
        lu.witness = "R " + R.name(x) + " " + R.name(e) + " " + R.name(z);
      }
    }
    for (const auto& [x, y] : R.with_third(e)) {
      ++ru.cases;
      if (x != y && !ru.failed()) {
        ru.status = LawCheck::Status::fail;
        ru.witness = "R " + R.name(x) + " " + R.name(y) + " " + R.name(e);
      }
    }
  }

  auto& lf = r.add("locally-finite");
  lf.cases = static_cast<long>(R.triples().size());
  lf.witness = "max decompositions = " + std::to_string(R.max_decompositions());

  if (include_commutative_row) {
    auto& c = r.add("commutative");
    c.cases = static_cast<long>(R.triples().size());
    if (!R.is_commutative()) {
      c.status = LawCheck::Status::fail;
      for (const auto& t : R.triples())
        if (!R.has(t[0], t[2], t[1])) {
          c.witness = "R " + R.name(t[0]) + " " + R.name(t[1]) + " " +
                      R.name(t[2]) + " has no mirror";
          break;
        }
    }
  }

  return r;
}

RelMonoid rel_of_psg(const PartialMonoid& m) {
  std::vector<std::array<int, 3>> triples;
  for (int y = 0; y < m.size(); ++y)
    for (int z = 0; z < m.size(); ++z)
      if (m.defined(y, z)) triples.push_back({m.compose(y, z), y, z});
  return RelMonoid{TernaryRel(m.names(), std::move(triples)), m.units()};
}

nlohmann::json rel_monoid_to_json(const RelMonoid& rm) {
  nlohmann::json j;
  j["carrier"] = rm.rel.names();
  nlohmann::json triples = nlohmann::json::array();
  for (const auto& t : rm.rel.triples()) triples.push_back({t[0], t[1], t[2]});
  j["triples"] = std::move(triples);
  j["units"] = rm.units;
  return j;
}

RelMonoid rel_monoid_from_json(const nlohmann::json& j) {
  std::vector<std::string> names = j.at("carrier").get<std::vector<std::string>>();
  std::vector<std::array<int, 3>> triples;
  for (const auto& e : j.at("triples"))
    triples.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
  std::vector<int> units;
  if (j.contains("units")) units = j.at("units").get<std::vector<int>>();
  TernaryRel rel(std::move(names), std::move(triples));
  for (int e : units)
    if (e < 0 || e >= rel.size())
      throw std::invalid_argument("relational monoid: unit out of range");
  return RelMonoid{std::move(rel), std::move(units)};
}

TernaryRel rel_union(const TernaryRel& a, const TernaryRel& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("ternary union: carriers differ in size");
  auto triples = a.triples();
  triples.insert(triples.end(), b.triples().begin(), b.triples().end());
  return TernaryRel(a.names(), std::move(triples));
}

BinRel BinRel::identity(int n) {
  BinRel r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

BinRel BinRel::compose(const BinRel& o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("binary relation composition: shape mismatch");
  BinRel r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k)
      if (at(i, k))
        for (int j = 0; j < o.cols_; ++j)
          if (o.at(k, j)) r.set(i, j);
  return r;
}

BinRel BinRel::converse() const {
  BinRel r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j)) r.set(j, i);
  return r;
}

BinRel BinRel::unite(const BinRel& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("binary relation union: shape mismatch");
  BinRel r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) || o.at(i, j)) r.set(i, j);
  return r;
}

int BinRel::count() const {
  int c = 0;
  for (uint8_t v : m_) c += v != 0;
  return c;
}

} // namespace convalg
