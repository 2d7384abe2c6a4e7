#include "convalg/quantale.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace convalg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(QFlag f) {
  switch (f) {
    case QFlag::unital: return "unital";
    case QFlag::distributive: return "distributive";
    case QFlag::boolean_alg: return "boolean";
    case QFlag::abelian: return "abelian";
    case QFlag::weak: return "weak";
  }
  return "?";
}

QFlag qflag_from_string(const std::string& s) {
  if (s == "unital") return QFlag::unital;
  if (s == "distributive") return QFlag::distributive;
  if (s == "boolean") return QFlag::boolean_alg;
  if (s == "abelian") return QFlag::abelian;
  if (s == "weak") return QFlag::weak;
  throw std::invalid_argument("unknown quantale flag: " + s);
}

std::string to_string(QMode m) {
  switch (m) {
    case QMode::full: return "full";
    case QMode::weak: return "weak";
    case QMode::proto: return "proto";
  }
  return "?";
}

QMode qmode_from_string(const std::string& s) {
  if (s == "full") return QMode::full;
  if (s == "weak") return QMode::weak;
  if (s == "proto") return QMode::proto;
  throw std::invalid_argument("unknown law mode: " + s + " (full/weak/proto)");
}

FinQuantale::FinQuantale(FinLattice lat, std::vector<int32_t> comp, int unit,
                         std::set<QFlag> flags)
    : lat_(std::move(lat)), comp_(std::move(comp)), unit_(unit), flags_(std::move(flags)) {
  size_t n = static_cast<size_t>(lat_.size());
  if (comp_.size() != n * n)
    throw std::invalid_argument("composition table has wrong size");
  for (int32_t v : comp_)
    if (v < 0 || v >= lat_.size())
      throw std::invalid_argument("composition table entry out of range");
  if (unit_ >= lat_.size())
    throw std::invalid_argument("unit index out of range");
  if (unit_ >= 0) flags_.insert(QFlag::unital);
  if (flags_.count(QFlag::boolean_alg)) complement_ = lat_.complements();
}

// ---------------------------------------------------------------------------
// Law suite for finite quantales

namespace {

// Enumerates subsets of the carrier as index lists; samples when the carrier
// is too large for 2^n enumeration.
std::vector<std::vector<int>> subset_pool(int n, QuantaleCheckOptions opts,
                                          bool& sampled) {
  std::vector<std::vector<int>> pool;
  if (n <= opts.subset_bound) {
    sampled = false;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(i);
      pool.push_back(std::move(s));
    }
    return pool;
  }
  if (!opts.allow_sampling)
    throw std::invalid_argument(
        "carrier too large for exhaustive subset checks (" + std::to_string(n) +
        " > " + std::to_string(opts.subset_bound) + "); enable sampling mode");
  sampled = true;
  Rng rng(opts.seed);
  pool.push_back({});  // empty family
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  pool.push_back(all);
  for (int k = 0; k < opts.sample_subsets; ++k) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (rng.coin()) s.push_back(i);
    pool.push_back(std::move(s));
  }
  return pool;
}

} // namespace

LawReport check_quantale_laws(const FinQuantale& q, QMode mode,
                              const QuantaleCheckOptions& opts) {
  LawReport r;
  r.subject = "quantale laws [" + to_string(mode) + "]";
  r.merge(q.lattice().check(), "lattice/");
  int n = q.size();

  auto& assoc = r.add("compose-assoc");
  if (mode == QMode::proto) {
    assoc.status = LawCheck::Status::skip;
    assoc.witness = "not required in proto mode";
  } else {
    for (int a = 0; a < n && !assoc.failed(); ++a)
      for (int b = 0; b < n && !assoc.failed(); ++b)
        for (int c = 0; c < n; ++c) {
          assoc.cases++;
          if (q.compose(q.compose(a, b), c) != q.compose(a, q.compose(b, c))) {
            assoc.status = LawCheck::Status::fail;
            assoc.witness = "(" + q.name(a) + "," + q.name(b) + "," + q.name(c) + ")";
            break;
          }
        }
  }

  bool sampled = false;
  auto pool = subset_pool(n, opts, sampled);
  auto& ldist = r.add("left-distributivity");
  auto& rdist = r.add("right-distributivity");
  ldist.sampled = rdist.sampled = sampled;
  bool left_needs_empty = (mode != QMode::weak);
  for (const auto& s : pool) {
    int js = q.lattice().join_all(s);
    for (int x = 0; x < n; ++x) {
      if (!s.empty() || left_needs_empty) {
        ldist.cases++;
        std::vector<int> prods;
        for (int e : s) prods.push_back(q.compose(x, e));
        if (!ldist.failed() && q.compose(x, js) != q.lattice().join_all(prods)) {
          ldist.status = LawCheck::Status::fail;
          ldist.witness = q.name(x) + " * join of " + std::to_string(s.size()) +
                          " elements";
        }
      }
      rdist.cases++;
      std::vector<int> prods;
      for (int e : s) prods.push_back(q.compose(e, x));
      if (!rdist.failed() && q.compose(js, x) != q.lattice().join_all(prods)) {
        rdist.status = LawCheck::Status::fail;
        rdist.witness = "join of " + std::to_string(s.size()) + " elements * " +
                        q.name(x);
      }
    }
  }

  auto& anl = r.add("left-annihilation");  // 0 * x = 0
  for (int x = 0; x < n; ++x) {
    anl.cases++;
    if (q.compose(q.bottom(), x) != q.bottom()) {
      anl.status = LawCheck::Status::fail;
      anl.witness = "0 * " + q.name(x) + " = " + q.name(q.compose(q.bottom(), x));
      break;
    }
  }
  auto& anr = r.add("right-annihilation");  // x * 0 = 0
  if (mode != QMode::full) {
    anr.status = LawCheck::Status::skip;
    anr.witness = "not required in " + to_string(mode) + " mode";
    for (int x = 0; x < n; ++x)
      if (q.compose(x, q.bottom()) != q.bottom()) {
        anr.witness += "; in fact fails here: " + q.name(x) + " * 0 = " +
                       q.name(q.compose(x, q.bottom()));
        break;
      }
  } else {
    for (int x = 0; x < n; ++x) {
      anr.cases++;
      if (q.compose(x, q.bottom()) != q.bottom()) {
        anr.status = LawCheck::Status::fail;
        anr.witness = q.name(x) + " * 0 = " + q.name(q.compose(x, q.bottom()));
        break;
      }
    }
  }

  auto& unit = r.add("unit");
  if (!q.unital()) {
    unit.status = LawCheck::Status::skip;
    unit.witness = "no unit claimed";
  } else {
    for (int x = 0; x < n; ++x) {
      unit.cases += 2;
      if (q.compose(q.unit(), x) != x || q.compose(x, q.unit()) != x) {
        unit.status = LawCheck::Status::fail;
        unit.witness = q.name(x);
        break;
      }
    }
  }

  if (q.has(QFlag::abelian)) {
    auto& ab = r.add("abelian");
    for (int a = 0; a < n && !ab.failed(); ++a)
      for (int b = 0; b < n; ++b) {
        ab.cases++;
        if (q.compose(a, b) != q.compose(b, a)) {
          ab.status = LawCheck::Status::fail;
          ab.witness = q.name(a) + " * " + q.name(b);
          break;
        }
      }
  }
  if (q.has(QFlag::distributive)) {
    auto& d = r.add("lattice-distributive");
    d.cases = static_cast<long long>(n) * n * n;
    if (!q.lattice().is_distributive()) d.status = LawCheck::Status::fail;
  }
  if (q.has(QFlag::boolean_alg)) {
    auto& b = r.add("boolean-complements");
    for (int x = 0; x < n; ++x) {
      b.cases++;
      int c = q.complement(x);
      if (c < 0 || q.meet(x, c) != q.bottom() || q.join(x, c) != q.top()) {
        b.status = LawCheck::Status::fail;
        b.witness = q.name(x);
        break;
      }
    }
  }
  return r;
}

FinQuantale::Value residual_left(const FinQuantale& q, FinQuantale::Value u,
                                 FinQuantale::Value w) {
  int acc = q.bottom();
  for (int v = 0; v < q.size(); ++v)
    if (q.leq(q.compose(u, v), w)) acc = q.join(acc, v);
  return acc;
}

FinQuantale::Value residual_right(const FinQuantale& q, FinQuantale::Value w,
                                  FinQuantale::Value v) {
  int acc = q.bottom();
  for (int u = 0; u < q.size(); ++u)
    if (q.leq(q.compose(u, v), w)) acc = q.join(acc, u);
  return acc;
}

LawReport check_residual_galois(const FinQuantale& q) {
  LawReport r;
  r.subject = "residual adjunction";
  auto& left = r.add("galois-left");   // u*v <= w  <=>  v <= u\w
  auto& right = r.add("galois-right"); // u*v <= w  <=>  u <= w/v
  int n = q.size();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        bool lhs = q.leq(q.compose(u, v), w);
        left.cases++;
        if (!left.failed() && lhs != q.leq(v, residual_left(q, u, w))) {
          left.status = LawCheck::Status::fail;
          left.witness = "(" + q.name(u) + "," + q.name(v) + "," + q.name(w) + ")";
        }
        right.cases++;
        if (!right.failed() && lhs != q.leq(u, residual_right(q, w, v))) {
          right.status = LawCheck::Status::fail;
          right.witness = "(" + q.name(u) + "," + q.name(v) + "," + q.name(w) + ")";
        }
      }
  return r;
}

// ---------------------------------------------------------------------------
// Real quantales

bool RealQuantale::leq(Value a, Value b) const {
  switch (tag_) {
    case Tag::minplus:
    case Tag::unit_min: return a >= b - tol_;
    case Tag::maxplus:
    case Tag::unit_max: return a <= b + tol_;
  }
  return false;
}

RealQuantale::Value RealQuantale::join(Value a, Value b) const {
  switch (tag_) {
    case Tag::minplus:
    case Tag::unit_min: return std::min(a, b);
    case Tag::maxplus:
    case Tag::unit_max: return std::max(a, b);
  }
  return 0;
}

RealQuantale::Value RealQuantale::meet(Value a, Value b) const {
  switch (tag_) {
    case Tag::minplus:
    case Tag::unit_min: return std::max(a, b);
    case Tag::maxplus:
    case Tag::unit_max: return std::min(a, b);
  }
  return 0;
}

RealQuantale::Value RealQuantale::compose(Value a, Value b) const {
  switch (tag_) {
    case Tag::minplus:
    case Tag::maxplus: return a + b;
    case Tag::unit_min:
    case Tag::unit_max: return a * b;
  }
  return 0;
}

RealQuantale::Value RealQuantale::bottom() const {
  switch (tag_) {
    case Tag::minplus: return kInf;
    case Tag::maxplus: return -kInf;
    case Tag::unit_min: return 1.0;
    case Tag::unit_max: return 0.0;
  }
  return 0;
}

RealQuantale::Value RealQuantale::top() const {
  switch (tag_) {
    case Tag::minplus: return 0.0;
    case Tag::maxplus: return kInf;  // one-point completion, see header
    case Tag::unit_min: return 0.0;
    case Tag::unit_max: return 1.0;
  }
  return 0;
}

RealQuantale::Value RealQuantale::unit() const {
  switch (tag_) {
    case Tag::minplus:
    case Tag::maxplus: return 0.0;
    case Tag::unit_min:
    case Tag::unit_max: return 1.0;
  }
  return 0;
}

bool RealQuantale::eq(Value a, Value b) const {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol_;
}

std::set<QFlag> RealQuantale::flags() const {
  switch (tag_) {
    case Tag::minplus:
    case Tag::maxplus:
    case Tag::unit_max:
      return {QFlag::unital, QFlag::distributive, QFlag::abelian};
    case Tag::unit_min:
      // Bottom is the numeric 1, which composition does not absorb, so the
      // empty-family distributivity laws fail: only the weak suite applies.
      return {QFlag::unital, QFlag::distributive, QFlag::abelian, QFlag::weak};
  }
  return {};
}

std::vector<RealQuantale::Value> RealQuantale::default_sample() const {
  switch (tag_) {
    case Tag::minplus: return {0.0, 0.5, 1.0, 2.0, 3.25, kInf};
    case Tag::maxplus: return {-kInf, 0.0, 0.5, 1.0, 2.0, 3.25};
    case Tag::unit_min:
    case Tag::unit_max: return {0.0, 0.25, 0.5, 0.75, 1.0};
  }
  return {};
}

std::string RealQuantale::name(Value v) const {
  std::ostringstream os;
  os << v;
  return os.str();
}

LawReport check_real_quantale_laws(const RealQuantale& q, QMode mode,
                                   const std::vector<double>& sample,
                                   int subset_bound) {
  LawReport r;
  r.subject = "real quantale laws [" + to_string(mode) + "]";
  int n = static_cast<int>(sample.size());
  if (n == 0) throw std::invalid_argument("empty sample");
  if (n > subset_bound)
    throw std::invalid_argument("sample too large for subset enumeration");

  auto& ord = r.add("order-total");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ord.cases++;
      if (!q.leq(sample[i], sample[j]) && !q.leq(sample[j], sample[i])) {
        ord.status = LawCheck::Status::fail;
        ord.witness = q.name(sample[i]) + " vs " + q.name(sample[j]);
      }
    }

  auto& assoc = r.add("compose-assoc");
  if (mode == QMode::proto) {
    assoc.status = LawCheck::Status::skip;
  } else {
    for (double a : sample)
      for (double b : sample)
        for (double c : sample) {
          assoc.cases++;
          if (!assoc.failed() &&
              !q.eq(q.compose(q.compose(a, b), c), q.compose(a, q.compose(b, c)))) {
            assoc.status = LawCheck::Status::fail;
            assoc.witness = "(" + q.name(a) + "," + q.name(b) + "," + q.name(c) + ")";
          }
        }
  }

  // Distributivity over sampled families. Empty families only make sense
  // when the sample's join would be the true bottom, so the empty case is
  // covered by the annihilation rows below instead.
  auto& ldist = r.add("left-distributivity-nonempty");
  auto& rdist = r.add("right-distributivity-nonempty");
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    double js = q.bottom();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) js = q.join(js, sample[i]);
    for (double x : sample) {
      double lacc = q.bottom(), racc = q.bottom();
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) {
          lacc = q.join(lacc, q.compose(x, sample[i]));
          racc = q.join(racc, q.compose(sample[i], x));
        }
      ldist.cases++;
      if (!ldist.failed() && !q.eq(q.compose(x, js), lacc)) {
        ldist.status = LawCheck::Status::fail;
        ldist.witness = q.name(x) + " * join(mask " + std::to_string(mask) + ")";
      }
      rdist.cases++;
      if (!rdist.failed() && !q.eq(q.compose(js, x), racc)) {
        rdist.status = LawCheck::Status::fail;
        rdist.witness = "join(mask " + std::to_string(mask) + ") * " + q.name(x);
      }
    }
  }

  auto& anl = r.add("left-annihilation");
  auto& anr = r.add("right-annihilation");
  if (mode == QMode::full) {
    for (double x : sample) {
      anl.cases++;
      anr.cases++;
      if (!anl.failed() && !q.eq(q.compose(q.bottom(), x), q.bottom())) {
        anl.status = LawCheck::Status::fail;
        anl.witness = "0 * " + q.name(x);
      }
      if (!anr.failed() && !q.eq(q.compose(x, q.bottom()), q.bottom())) {
        anr.status = LawCheck::Status::fail;
        anr.witness = q.name(x) + " * 0";
      }
    }
  } else {
    anl.status = anr.status = LawCheck::Status::skip;
    anl.witness = anr.witness = "not required in " + to_string(mode) + " mode";
  }

  auto& unit = r.add("unit");
  for (double x : sample) {
    unit.cases += 2;
    if (!unit.failed() &&
        (!q.eq(q.compose(q.unit(), x), x) || !q.eq(q.compose(x, q.unit()), x))) {
      unit.status = LawCheck::Status::fail;
      unit.witness = q.name(x);
    }
  }

  auto& ab = r.add("abelian");
  for (double a : sample)
    for (double b : sample) {
      ab.cases++;
      if (!ab.failed() && !q.eq(q.compose(a, b), q.compose(b, a))) {
        ab.status = LawCheck::Status::fail;
        ab.witness = q.name(a) + " * " + q.name(b);
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Builtin catalog

namespace {

FinQuantale make_bool(const std::string& display_one) {
  FinLattice l = FinLattice::chain({"0", display_one});
  // meet composition
  std::vector<int32_t> comp = {0, 0, 0, 1};
  return FinQuantale(l, comp, 1,
                     {QFlag::unital, QFlag::distributive, QFlag::boolean_alg,
                      QFlag::abelian});
}

FinQuantale make_chain3_weak() {
  FinLattice l = FinLattice::chain({"0", "1", "⊤"});
  // Left argument decides: 0*u = 0, ⊤*u = ⊤, 1*u = u.
  std::vector<int32_t> comp = {
      0, 0, 0,  // 0 * {0,1,⊤}
      0, 1, 2,  // 1 * {0,1,⊤}
      2, 2, 2,  // ⊤ * {0,1,⊤}
  };
  return FinQuantale(l, comp, 1, {QFlag::unital, QFlag::distributive, QFlag::weak});
}

FinQuantale make_meet_quantale(FinLattice l, std::set<QFlag> flags) {
  int n = l.size();
  std::vector<int32_t> comp(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) comp[a * n + b] = l.meet(a, b);
  int unit = l.top();
  flags.insert(QFlag::unital);
  return FinQuantale(std::move(l), std::move(comp), unit, std::move(flags));
}

FinQuantale make_diamond4() {
  FinLattice l = FinLattice::from_leq({"0", "a", "b", "1"},
                                      {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  return make_meet_quantale(std::move(l), {QFlag::distributive, QFlag::boolean_alg,
                                           QFlag::abelian});
}

FinQuantale make_chain4() {
  FinLattice l = FinLattice::chain({"0", "a", "b", "1"});
  return make_meet_quantale(std::move(l), {QFlag::distributive, QFlag::abelian});
}

} // namespace

FinQuantale tropical_chain(int m) {
  if (m < 0) throw std::invalid_argument("tropical_chain: negative bound");
  // Index i < inf_idx carries numeric value i; the last index is inf.
  int n = m + 2, inf = m + 1;
  std::vector<std::string> names(n);
  for (int i = 0; i <= m; ++i) names[i] = std::to_string(i);
  names[inf] = "inf";
  // Reversed numeric order: inf <= m <= ... <= 1 <= 0.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= i; ++j) pairs.push_back({i, j});
  for (int i = 0; i < n; ++i) pairs.push_back({inf, i});
  FinLattice l = FinLattice::from_leq(std::move(names), pairs);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == inf || b == inf) comp[a * n + b] = inf;
      else comp[a * n + b] = (a + b > m) ? inf : a + b;
    }
  return FinQuantale(std::move(l), std::move(comp), 0,
                     {QFlag::unital, QFlag::distributive, QFlag::abelian});
}

BuiltinQuantale builtin_quantale(const std::string& name) {
  BuiltinQuantale b;
  b.name = name;
  if (name == "bool") {
    b.fin = make_bool("1");
  } else if (name == "chain2-top-unit") {
    // Two-element chain whose unit is the top; composition is forced (meet).
    b.fin = make_bool("1");
  } else if (name == "chain3-weak") {
    b.fin = make_chain3_weak();
    b.declared_mode = QMode::weak;
  } else if (name == "diamond4") {
    b.fin = make_diamond4();
  } else if (name == "chain4") {
    b.fin = make_chain4();
  } else if (name == "minplus") {
    b.real = RealQuantale(RealQuantale::Tag::minplus);
  } else if (name == "maxplus") {
    b.real = RealQuantale(RealQuantale::Tag::maxplus);
  } else if (name == "unit-interval-min") {
    b.real = RealQuantale(RealQuantale::Tag::unit_min);
    b.declared_mode = QMode::weak;
  } else if (name == "unit-interval-max") {
    b.real = RealQuantale(RealQuantale::Tag::unit_max);
  } else {
    std::string valid;
    for (const auto& v : builtin_quantale_names()) valid += (valid.empty() ? "" : ", ") + v;
    throw std::invalid_argument("unknown quantale '" + name + "'; valid names: " + valid);
  }
  return b;
}

std::vector<std::string> builtin_quantale_names() {
  return {"bool",          "minplus",           "maxplus",
          "unit-interval-min", "unit-interval-max", "chain3-weak",
          "chain2-top-unit",   "diamond4",          "chain4"};
}

nlohmann::json fin_quantale_to_json(const FinQuantale& q) {
  nlohmann::json j;
  j["carrier"] = q.lattice().names();
  nlohmann::json leq = nlohmann::json::array();
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b)
      if (q.leq(a, b)) leq.push_back({a, b});
  j["leq"] = leq;
  nlohmann::json comp = nlohmann::json::array();
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b) comp.push_back({a, b, q.compose(a, b)});
  j["compose"] = comp;
  if (q.unital()) j["unit"] = q.unit();
  nlohmann::json flags = nlohmann::json::array();
  for (QFlag f : q.flags()) flags.push_back(to_string(f));
  j["flags"] = flags;
  return j;
}

FinQuantale fin_quantale_from_json(const nlohmann::json& j) {
  std::vector<std::string> names = j.at("carrier").get<std::vector<std::string>>();
  int n = static_cast<int>(names.size());
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j.at("leq")) pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  FinLattice l = FinLattice::from_leq(names, pairs);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n, -1);
  for (const auto& t : j.at("compose")) {
    int a = t.at(0).get<int>(), b = t.at(1).get<int>(), c = t.at(2).get<int>();
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw std::invalid_argument("compose triple out of range");
    comp[a * n + b] = c;
  }
  for (int32_t v : comp)
    if (v < 0) throw std::invalid_argument("composition table not total");
  int unit = j.contains("unit") ? j.at("unit").get<int>() : -1;
  std::set<QFlag> flags;
  if (j.contains("flags"))
    for (const auto& f : j.at("flags")) flags.insert(qflag_from_string(f.get<std::string>()));
  return FinQuantale(std::move(l), std::move(comp), unit, std::move(flags));
}

// ---------------------------------------------------------------------------
// Quantale modules and the semidirect pair quantale

QuantaleModule self_module(const FinQuantale& q) {
  QuantaleModule m;
  m.q = q;
  m.l = q.lattice();
  int n = q.size();
  m.act.resize(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int x = 0; x < n; ++x) m.act[u * n + x] = q.compose(u, x);
  return m;
}

LawReport check_module_laws(const QuantaleModule& m) {
  LawReport r;
  r.subject = "quantale module laws";
  int nq = m.q.size(), nl = m.l.size();

  auto& compat = r.add("action-compose");  // (u*v)∘x = u∘(v∘x)
  for (int u = 0; u < nq && !compat.failed(); ++u)
    for (int v = 0; v < nq && !compat.failed(); ++v)
      for (int x = 0; x < nl; ++x) {
        compat.cases++;
        if (m.apply(m.q.compose(u, v), x) != m.apply(u, m.apply(v, x))) {
          compat.status = LawCheck::Status::fail;
          compat.witness = "(" + m.q.name(u) + "," + m.q.name(v) + "," + m.l.name(x) + ")";
          break;
        }
      }

  // Join distributivity in both arguments, all subsets (carriers are small).
  auto& dl = r.add("action-join-left");  // (⊔U)∘x = ⊔ u∘x
  for (uint32_t mask = 0; mask < (1u << nq); ++mask)
    for (int x = 0; x < nl; ++x) {
      int ju = m.q.bottom(), acc = m.l.bottom();
      for (int u = 0; u < nq; ++u)
        if (mask & (1u << u)) {
          ju = m.q.join(ju, u);
          acc = m.l.join(acc, m.apply(u, x));
        }
      dl.cases++;
      if (!dl.failed() && m.apply(ju, x) != acc) {
        dl.status = LawCheck::Status::fail;
        dl.witness = "mask " + std::to_string(mask) + ", x = " + m.l.name(x);
      }
    }
  auto& dr = r.add("action-join-right");  // u∘(⊔X) = ⊔ u∘x
  for (int u = 0; u < nq; ++u)
    for (uint32_t mask = 0; mask < (1u << nl); ++mask) {
      int jx = m.l.bottom(), acc = m.l.bottom();
      for (int x = 0; x < nl; ++x)
        if (mask & (1u << x)) {
          jx = m.l.join(jx, x);
          acc = m.l.join(acc, m.apply(u, x));
        }
      dr.cases++;
      if (!dr.failed() && m.apply(u, jx) != acc) {
        dr.status = LawCheck::Status::fail;
        dr.witness = m.q.name(u) + ", mask " + std::to_string(mask);
      }
    }

  auto& un = r.add("action-unit");  // 1∘x = x
  if (!m.q.unital()) {
    un.status = LawCheck::Status::skip;
  } else {
    for (int x = 0; x < nl; ++x) {
      un.cases++;
      if (m.apply(m.q.unit(), x) != x) {
        un.status = LawCheck::Status::fail;
        un.witness = m.l.name(x);
        break;
      }
    }
  }
  return r;
}

FinQuantale sd_quantale(const QuantaleModule& m) {
  LawReport laws = check_module_laws(m);
  if (!laws.ok()) {
    for (const auto& c : laws.checks)
      if (c.failed())
        throw std::invalid_argument("module law violation: " + c.name +
                                    " at " + c.witness);
  }
  int nq = m.q.size(), nl = m.l.size();
  int n = nq * nl;
  auto pair_idx = [nl](int u, int x) { return u * nl + x; };
  std::vector<std::string> names(n);
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < nq; ++u)
    for (int x = 0; x < nl; ++x) {
      names[pair_idx(u, x)] = "(" + m.q.name(u) + "," + m.l.name(x) + ")";
      for (int v = 0; v < nq; ++v)
        for (int y = 0; y < nl; ++y)
          if (m.q.leq(u, v) && m.l.leq(x, y))
            pairs.push_back({pair_idx(u, x), pair_idx(v, y)});
    }
  FinLattice lat = FinLattice::from_leq(std::move(names), pairs);
  std::vector<int32_t> comp(static_cast<size_t>(n) * n);
  for (int u = 0; u < nq; ++u)
    for (int x = 0; x < nl; ++x)
      for (int v = 0; v < nq; ++v)
        for (int y = 0; y < nl; ++y)
          comp[pair_idx(u, x) * n + pair_idx(v, y)] =
              pair_idx(m.q.compose(u, v), m.l.join(x, m.apply(u, y)));
  int unit = m.q.unital() ? pair_idx(m.q.unit(), m.l.bottom()) : -1;
  std::set<QFlag> flags = {QFlag::weak};
  if (unit >= 0) flags.insert(QFlag::unital);
  return FinQuantale(std::move(lat), std::move(comp), unit, std::move(flags));
}

} // namespace convalg
