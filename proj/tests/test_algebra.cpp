#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "convalg/lattice.hpp"
#include "convalg/quantale.hpp"

using namespace convalg;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

int idx_of(const FinQuantale& q, const std::string& name) {
  for (int i = 0; i < q.size(); ++i)
    if (q.name(i) == name) return i;
  REQUIRE(false);
  return -1;
}
} // namespace

TEST_CASE("chain and powerset lattices") {
  FinLattice c = FinLattice::chain({"a", "b", "c"});
  CHECK(c.bottom() == 0);
  CHECK(c.top() == 2);
  CHECK(c.join(0, 2) == 2);
  CHECK(c.meet(1, 2) == 1);
  CHECK(c.check().ok());
  CHECK(c.is_distributive());

  FinLattice p = FinLattice::powerset(3);
  CHECK(p.size() == 8);
  CHECK(p.join(0b001, 0b100) == 0b101);
  CHECK(p.meet(0b011, 0b110) == 0b010);
  CHECK(p.check().ok());
  CHECK(p.is_distributive());
  auto comp = p.complements();
  for (int s = 0; s < 8; ++s) CHECK(comp[s] == (~s & 0b111));
}

TEST_CASE("posets that are not lattices are rejected") {
  // Two maximal elements: no top, no join.
  CHECK_THROWS(FinLattice::from_leq({"x", "y"}, {}));
  // Cycle breaks antisymmetry.
  CHECK_THROWS(FinLattice::from_leq({"x", "y"}, {{0, 1}, {1, 0}}));
}

TEST_CASE("builtin finite quantales pass their declared law suites") {
  for (const std::string name :
       {"bool", "chain2-top-unit", "chain3-weak", "diamond4", "chain4"}) {
    auto b = builtin_quantale(name);
    REQUIRE(b.fin.has_value());
    auto report = check_quantale_laws(*b.fin, b.declared_mode);
    INFO(name, ":\n", report.pretty());
    CHECK(report.ok());
  }
}

TEST_CASE("chain3-weak is weak but not a full quantale") {
  auto q = *builtin_quantale("chain3-weak").fin;
  int topi = idx_of(q, "⊤"), zero = idx_of(q, "0"), one = idx_of(q, "1");
  CHECK(q.compose(topi, zero) == topi);  // no right annihilation
  CHECK(q.compose(zero, topi) == zero);
  CHECK(q.compose(one, topi) == topi);
  CHECK(q.unit() == one);

  auto full = check_quantale_laws(q, QMode::full);
  CHECK(!full.ok());
  CHECK(full.find("right-annihilation")->failed());
  CHECK(full.find("left-distributivity")->failed());
  CHECK(full.find("compose-assoc")->status == LawCheck::Status::pass);

  auto weak = check_quantale_laws(q, QMode::weak);
  CHECK(weak.ok());
  // The skipped row still records where right annihilation breaks.
  CHECK(weak.find("right-annihilation")->status == LawCheck::Status::skip);
  CHECK(weak.find("right-annihilation")->witness.find("⊤") != std::string::npos);
}

TEST_CASE("diamond4 is boolean, chain4 is distributive but not boolean") {
  auto d = *builtin_quantale("diamond4").fin;
  CHECK(d.has(QFlag::boolean_alg));
  CHECK(d.complement(idx_of(d, "a")) == idx_of(d, "b"));
  CHECK(d.compose(idx_of(d, "a"), idx_of(d, "b")) == d.bottom());
  CHECK(d.unit() == d.top());

  auto c = *builtin_quantale("chain4").fin;
  CHECK(!c.has(QFlag::boolean_alg));
  auto comps = c.lattice().complements();
  CHECK(comps[idx_of(c, "a")] == -1);  // middle of a chain has no complement
}

TEST_CASE("unknown builtin names list the valid ones") {
  try {
    builtin_quantale("nope");
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("nope") != std::string::npos);
    CHECK(msg.find("minplus") != std::string::npos);
    CHECK(msg.find("chain3-weak") != std::string::npos);
  }
}

TEST_CASE("tropical chain: saturating addition, reversed order") {
  FinQuantale t = tropical_chain(2);  // {0,1,2,inf}
  int inf = idx_of(t, "inf");
  CHECK(t.bottom() == inf);
  CHECK(t.top() == 0);
  CHECK(t.unit() == 0);
  CHECK(t.compose(1, 1) == 2);
  CHECK(t.compose(1, 2) == inf);  // saturates
  CHECK(t.compose(inf, 0) == inf);
  CHECK(t.join(1, 2) == 1);  // join is numeric min
  CHECK(t.meet(1, 2) == 2);
  CHECK(check_quantale_laws(t, QMode::full).ok());
}

TEST_CASE("element residuals") {
  auto q = *builtin_quantale("bool").fin;
  CHECK(residual_left(q, 1, 0) == 0);
  CHECK(residual_left(q, 0, 0) == 1);
  CHECK(residual_left(q, 1, 1) == 1);
  CHECK(residual_right(q, 0, 1) == 0);
  CHECK(residual_right(q, 1, 0) == 1);

  // Brute-force oracle over a tropical chain: largest v (reversed order:
  // numerically least v) with 1 + v >= 2, i.e. v = 1.
  FinQuantale t = tropical_chain(2);
  CHECK(t.name(residual_left(t, 1, 2)) == "1");
  CHECK(t.name(residual_right(t, 2, 1)) == "1");
}

TEST_CASE("residual adjunction holds in every full finite builtin") {
  for (const std::string name : {"bool", "chain2-top-unit", "diamond4", "chain4"}) {
    auto q = *builtin_quantale(name).fin;
    auto r = check_residual_galois(q);
    INFO(name, ":\n", r.pretty());
    CHECK(r.ok());
  }
  CHECK(check_residual_galois(tropical_chain(3)).ok());
  // ... and genuinely fails for the weak chain (residuals need full
  // distributivity to be adjoints).
  CHECK(!check_residual_galois(*builtin_quantale("chain3-weak").fin).ok());
}

TEST_CASE("subset checks demand sampling on large carriers") {
  FinQuantale big = tropical_chain(6);  // 8 elements > default bound 6
  CHECK_THROWS(check_quantale_laws(big, QMode::full));
  QuantaleCheckOptions opts;
  opts.allow_sampling = true;
  auto r = check_quantale_laws(big, QMode::full, opts);
  CHECK(r.ok());
  CHECK(r.find("left-distributivity")->sampled);
}

TEST_CASE("real quantales pass their declared suites on default samples") {
  for (const std::string name : {"minplus", "maxplus", "unit-interval-max"}) {
    auto b = builtin_quantale(name);
    REQUIRE(b.real.has_value());
    CHECK(b.declared_mode == QMode::full);
    auto r = check_real_quantale_laws(*b.real, QMode::full, b.real->default_sample());
    INFO(name, ":\n", r.pretty());
    CHECK(r.ok());
  }
  auto uim = builtin_quantale("unit-interval-min");
  CHECK(uim.declared_mode == QMode::weak);
  auto weak = check_real_quantale_laws(*uim.real, QMode::weak, uim.real->default_sample());
  CHECK(weak.ok());
  // Bottom of the reversed unit interval is the numeric 1 = the unit, which
  // nothing annihilates: the full suite must fail.
  auto full = check_real_quantale_laws(*uim.real, QMode::full, uim.real->default_sample());
  CHECK(!full.ok());
  CHECK(full.find("right-annihilation")->failed());
}

TEST_CASE("minplus ops") {
  RealQuantale mp(RealQuantale::Tag::minplus);
  CHECK(mp.bottom() == kInf);
  CHECK(mp.top() == 0.0);
  CHECK(mp.unit() == 0.0);
  CHECK(mp.join(1.5, 2.0) == 1.5);
  CHECK(mp.leq(kInf, 3.0));
  CHECK(mp.compose(2.0, kInf) == kInf);
  RealQuantale xp(RealQuantale::Tag::maxplus);
  CHECK(xp.bottom() == -kInf);
  CHECK(xp.join(1.5, 2.0) == 2.0);
  CHECK(xp.compose(2.0, -kInf) == -kInf);
}

TEST_CASE("quantale modules and the semidirect pair quantale") {
  auto b2 = *builtin_quantale("chain2-top-unit").fin;
  QuantaleModule m = self_module(b2);
  CHECK(check_module_laws(m).ok());

  FinQuantale sd = sd_quantale(m);
  CHECK(sd.size() == 4);
  CHECK(sd.has(QFlag::weak));
  CHECK(sd.unital());
  CHECK(sd.name(sd.unit()) == "(1,0)");

  int p01 = idx_of(sd, "(0,1)"), p00 = idx_of(sd, "(0,0)");
  CHECK(sd.bottom() == p00);
  // (0,⊤) ⋉ ⊔∅ = (0,⊤) ⋉ (0,0) = (0,1) ≠ (0,0): right annihilation fails.
  CHECK(sd.compose(p01, p00) == p01);
  auto weak = check_quantale_laws(sd, QMode::weak);
  INFO(weak.pretty());
  CHECK(weak.ok());
  auto full = check_quantale_laws(sd, QMode::full);
  CHECK(!full.ok());
  CHECK(full.find("right-annihilation")->failed());
  CHECK(full.find("right-annihilation")->witness.find("(0,1)") != std::string::npos);

  // bool acting on itself: (1,1) ⋉ (1,0) = (1, 1 ⊔ 1∘0) = (1,1).
  auto sb = sd_quantale(self_module(*builtin_quantale("bool").fin));
  int p11 = idx_of(sb, "(1,1)"), p10 = idx_of(sb, "(1,0)");
  CHECK(sb.compose(p11, p10) == p11);
}

TEST_CASE("module law violations are rejected with a witness") {
  auto b = *builtin_quantale("bool").fin;
  QuantaleModule m = self_module(b);
  m.act[1 * 2 + 0] = 1;  // corrupt: 1∘0 = 1 breaks join distributivity in x
  CHECK(!check_module_laws(m).ok());
  CHECK_THROWS(sd_quantale(m));
}

TEST_CASE("law reports round-trip through JSON") {
  auto q = *builtin_quantale("chain3-weak").fin;
  auto r = check_quantale_laws(q, QMode::full);
  auto j = r.to_json();
  CHECK(j.at("passed") == false);
  LawReport back = LawReport::from_json(j);
  REQUIRE(back.checks.size() == r.checks.size());
  for (size_t i = 0; i < r.checks.size(); ++i) {
    CHECK(back.checks[i].name == r.checks[i].name);
    CHECK(back.checks[i].status == r.checks[i].status);
    CHECK(back.checks[i].witness == r.checks[i].witness);
    CHECK(back.checks[i].cases == r.checks[i].cases);
    CHECK(back.checks[i].sampled == r.checks[i].sampled);
  }
  CHECK(back.ok() == r.ok());
}

TEST_CASE("finite quantales round-trip through JSON") {
  for (const std::string name : {"bool", "chain3-weak", "diamond4", "chain4"}) {
    auto q = *builtin_quantale(name).fin;
    FinQuantale back = fin_quantale_from_json(fin_quantale_to_json(q));
    REQUIRE(back.size() == q.size());
    for (int a = 0; a < q.size(); ++a) {
      CHECK(back.name(a) == q.name(a));
      for (int b = 0; b < q.size(); ++b) {
        CHECK(back.leq(a, b) == q.leq(a, b));
        CHECK(back.compose(a, b) == q.compose(a, b));
      }
    }
    CHECK(back.unital() == q.unital());
    CHECK(back.flags() == q.flags());
  }
}

TEST_CASE("malformed quantale JSON is rejected") {
  nlohmann::json j = {{"carrier", {"0", "1"}},
                      {"leq", {{0, 1}}},
                      {"compose", {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}}}};
  CHECK_THROWS(fin_quantale_from_json(j));  // missing (1,1): not total
}
