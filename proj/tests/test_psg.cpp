#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convalg/psg.hpp"

using namespace convalg;

namespace {

const LawCheck* row(const LawReport& r, const std::string& name) {
  auto* c = r.find(name);
  REQUIRE(c != nullptr);
  return c;
}

PartialMonoid z2() {
  // {1,a} with a*a = 1
  return PartialMonoid({"1", "a"}, {0, 1, 1, 0}, {0});
}

} // namespace

TEST_CASE("pair fusion monoid") {
  auto m = pairs_monoid(3);
  CHECK(m.size() == 9);
  const int ab = m.index_of("(0,1)"), bc = m.index_of("(1,2)");
  CHECK(m.defined(ab, bc));
  CHECK(m.name(m.compose(ab, bc)) == "(0,2)");
  CHECK_FALSE(m.defined(ab, m.index_of("(0,2)")));
  CHECK(m.units().size() == 3);
  auto r = check_psg_laws(m);
  CHECK(psg_strict_ok(r));
}

TEST_CASE("product and tagged product preserve strictness") {
  auto p = product_monoid(pairs_monoid(2), boundary_monoid());
  CHECK(psg_strict_ok(check_psg_laws(p)));

  auto t = monoid_set_product(pairs_monoid(2), {"x", "y"});
  CHECK(psg_strict_ok(check_psg_laws(t)));
  const int ax = t.index_of("((0,1),x)");
  const int by = t.index_of("((1,0),y)");
  const int bx = t.index_of("((1,0),x)");
  REQUIRE(ax >= 0);
  CHECK_FALSE(t.defined(ax, by));  // tags differ
  CHECK(t.defined(ax, bx));
  CHECK(t.name(t.compose(ax, bx)) == "((0,0),x)");
}

TEST_CASE("truncated free monoid") {
  auto m = free_monoid_trunc({"a", "b"}, 2);
  CHECK(m.size() == 7);
  const int a = m.index_of("a"), b = m.index_of("b"), ab = m.index_of("ab");
  CHECK(m.compose(a, b) == ab);
  CHECK_FALSE(m.defined(ab, a));
  CHECK(m.units() == std::vector<int>{m.index_of("ε")});
  CHECK(psg_strict_ok(check_psg_laws(m)));
}

TEST_CASE("boundary types compose by matching endpoints") {
  auto m = boundary_monoid();
  const int co = m.index_of("(c,o)"), cc = m.index_of("(c,c)"),
            oc = m.index_of("(o,c)");
  CHECK(m.defined(co, cc));
  CHECK(m.compose(co, cc) == cc);
  CHECK_FALSE(m.defined(oc, cc));  // c meets c
  CHECK(m.is_unit(oc));
  CHECK(m.is_unit(co));
  CHECK_FALSE(m.is_unit(cc));
  CHECK(psg_strict_ok(check_psg_laws(m)));
}

TEST_CASE("one-element monoid and a total group are strict") {
  CHECK(psg_strict_ok(check_psg_laws(one_element_monoid())));
  auto m = z2();
  CHECK(m.compose(1, 1) == 0);
  CHECK(psg_strict_ok(check_psg_laws(m)));
}

TEST_CASE("adjoined zero keeps equality but breaks the definedness law") {
  auto m = adjoin_annihilator(pairs_monoid(2));
  const int zero = m.index_of("0");
  REQUIRE(zero >= 0);
  for (int x = 0; x < m.size(); ++x) {
    CHECK(m.compose(zero, x) == zero);
    CHECK(m.compose(x, zero) == zero);
  }
  auto r = check_psg_laws(m);
  CHECK(row(r, "assoc-defined-iff")->failed());
  CHECK_FALSE(row(r, "assoc-equal")->failed());
  CHECK_FALSE(psg_strict_ok(r));
  CHECK(psg_weak_ok(r));
}

TEST_CASE("a unitless structure is reported as such") {
  // single element whose square is undefined
  PartialMonoid m({"a"}, {-1}, {});
  auto r = check_psg_laws(m);
  CHECK_FALSE(row(r, "unitless")->failed());

  // claiming no units while one exists must be flagged
  PartialMonoid lie({"e"}, {0}, {});
  CHECK(row(check_psg_laws(lie), "unitless")->failed());
}

TEST_CASE("restriction checks closure") {
  auto m = pairs_monoid(2);
  std::vector<uint8_t> drop_diag(4, 1);
  drop_diag[m.index_of("(0,0)")] = 0;
  drop_diag[m.index_of("(1,1)")] = 0;
  CHECK_THROWS_WITH_AS(restrict_submonoid(m, drop_diag),
                       doctest::Contains("not closed"), std::invalid_argument);

  std::vector<uint8_t> upper(4, 0);
  upper[m.index_of("(0,0)")] = 1;
  upper[m.index_of("(0,1)")] = 1;
  upper[m.index_of("(1,1)")] = 1;
  auto sub = restrict_submonoid(m, upper);
  CHECK(sub.size() == 3);
  CHECK(psg_strict_ok(check_psg_laws(sub)));
}

TEST_CASE("segment action satisfies the guarded laws only") {
  auto fia = fin_inf_segment_action(3);
  auto r = check_action_laws(fia.action);

  CHECK_FALSE(row(r, "action-assoc-equal")->failed());
  CHECK_FALSE(row(r, "action-merge-equal")->failed());
  CHECK_FALSE(row(r, "acting-unit-exists")->failed());
  CHECK_FALSE(row(r, "acting-unit-trivial")->failed());
  CHECK_FALSE(row(r, "acted-unit-absorbs")->failed());

  // the adjoined zero and the one-point fusions break the strict forms
  CHECK(row(r, "action-assoc-defined-iff")->failed());
  CHECK(row(r, "action-merge-defined-iff")->failed());
  CHECK(row(r, "acting-unit-total")->failed());

  const auto& a = fia.action;
  const int s01 = a.s.index_of("[0,1]");
  const int i1 = a.t.index_of("[1,inf]"), i2 = a.t.index_of("[2,inf]");
  REQUIRE(s01 >= 0);
  CHECK(a.apply(s01, i1) == a.t.index_of("[0,inf]"));
  CHECK_FALSE(a.act_defined(s01, i2));
  CHECK(a.apply(fia.s_zero, i2) == fia.t_unit);
  CHECK(a.apply(s01, fia.t_unit) == fia.t_unit);
}

TEST_CASE("semidirect product identities") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    auto fia = fin_inf_segment_action(n);
    auto sd = sd_monoid(fia.action);
    const auto& S = fia.action.s;
    const auto& T = fia.action.t;
    const int nt = T.size();
    auto pid = [nt](int s, int t) { return s * nt + t; };

    for (int s1 = 0; s1 < S.size(); ++s1)
      for (int s2 = 0; s2 < S.size(); ++s2) {
        // finite x finite stays finite and mirrors S
        const int l = pid(s1, fia.t_unit), rr = pid(s2, fia.t_unit);
        CHECK(sd.defined(l, rr) == S.defined(s1, s2));
        if (S.defined(s1, s2))
          CHECK(sd.compose(l, rr) == pid(S.compose(s1, s2), fia.t_unit));
      }

    for (int t1 = 0; t1 < nt; ++t1) {
      for (int t2 = 0; t2 < nt; ++t2) {
        // infinite x infinite: the left element absorbs, always defined
        const int l = pid(fia.s_zero, t1), rr = pid(fia.s_zero, t2);
        CHECK(sd.defined(l, rr));
        CHECK(sd.compose(l, rr) == pid(fia.s_zero, t1));
      }
      for (int s = 0; s < S.size(); ++s) {
        // infinite x finite: the finite tail is discarded
        const int l = pid(fia.s_zero, t1), rr = pid(s, fia.t_unit);
        CHECK(sd.defined(l, rr));
        CHECK(sd.compose(l, rr) == pid(fia.s_zero, t1));
        // finite x infinite: fusion through the action when it matches
        const int fl = pid(s, fia.t_unit), fr = pid(fia.s_zero, t1);
        CHECK(sd.defined(fl, fr) == fia.action.act_defined(s, t1));
        if (fia.action.act_defined(s, t1))
          CHECK(sd.compose(fl, fr) ==
                pid(fia.s_zero, fia.action.apply(s, t1)));
      }
    }
  }
}

TEST_CASE("full semidirect carrier has junk pairs; the pure part does not") {
  auto fia = fin_inf_segment_action(2);
  auto sd = sd_monoid(fia.action);

  auto full = check_psg_laws(sd);
  CHECK(row(full, "left-unit-exists")->failed());
  CHECK_FALSE(row(full, "right-unit-exists")->failed());
  CHECK(row(full, "assoc-defined-iff")->failed());
  CHECK_FALSE(row(full, "assoc-equal")->failed());

  auto pure = restrict_submonoid(sd, pure_pair_mask(fia));
  auto r = check_psg_laws(pure);
  CHECK(psg_weak_ok(r));
  CHECK(row(r, "assoc-defined-iff")->failed());  // left absorption is not strict
  CHECK_FALSE(row(r, "left-unit-exists")->failed());
  CHECK_FALSE(row(r, "right-unit-exists")->failed());
}

TEST_CASE("semidirect construction rejects a broken action") {
  auto fia = fin_inf_segment_action(1);
  auto bad = fia.action;
  // make the unit [1,1] send [1,inf] to [0,inf]
  const int e = bad.s.index_of("[1,1]");
  const int t = bad.t.index_of("[1,inf]");
  bad.act[e * bad.t.size() + t] = bad.t.index_of("[0,inf]");
  CHECK_THROWS_WITH_AS(sd_monoid(bad), doctest::Contains("acting-unit-trivial"),
                       std::invalid_argument);
}

TEST_CASE("partial monoid json round trip") {
  for (const auto& m : {boundary_monoid(), adjoin_annihilator(z2()),
                        pairs_monoid(2)}) {
    auto j = psg_to_json(m);
    auto back = psg_from_json(j);
    REQUIRE(back.size() == m.size());
    CHECK(back.units() == m.units());
    for (int a = 0; a < m.size(); ++a)
      for (int b = 0; b < m.size(); ++b) {
        CHECK(back.defined(a, b) == m.defined(a, b));
        if (m.defined(a, b)) CHECK(back.compose(a, b) == m.compose(a, b));
      }
  }

  nlohmann::json bad = {{"carrier", {"a"}}, {"compose", {{0, 0, 5}}}};
  CHECK_THROWS_AS(psg_from_json(bad), std::invalid_argument);
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(PartialMonoid({"a"}, {0, 0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PartialMonoid({"a"}, {3}, {}), std::invalid_argument);
  // definedness predicate must match the table
  CHECK_THROWS_AS(PartialMonoid({"a"}, {-1}, {}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(PartialMonoid({"a"}, {0}, {4}), std::invalid_argument);
}
