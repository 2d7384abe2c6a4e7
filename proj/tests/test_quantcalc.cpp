#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/quantcalc.hpp"
#include "convalg/rng.hpp"

using namespace convalg;
using nlohmann::json;

namespace {

// true on [0,1), false on [1,2)
PcSignal step_down() { return PcSignal({0.0, 1.0, 2.0}, {1, 0}); }
// false on [0,1), true on [1,2)
PcSignal step_up() { return PcSignal({0.0, 1.0, 2.0}, {0, 1}); }

} // namespace

TEST_CASE("signal construction and evaluation") {
  CHECK_THROWS_AS(PcSignal({0.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PcSignal({0.0, 1.0}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PcSignal({0.0, 0.0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(PcSignal({1.0, 0.0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(
      PcSignal({0.0, std::numeric_limits<double>::infinity()}, {1}),
      std::invalid_argument);

  const PcSignal c = PcSignal::constant(0.0, 3.0, true);
  CHECK(c.domain_lo() == 0.0);
  CHECK(c.domain_hi() == 3.0);
  CHECK(c.value_at(0.0));
  CHECK(c.value_at(3.0));

  const PcSignal b = step_down();
  CHECK(b.value_at(0.0));
  CHECK(b.value_at(0.999));
  CHECK_FALSE(b.value_at(1.0));  // pieces are right-continuous at breakpoints
  CHECK_FALSE(b.value_at(1.5));
  CHECK_FALSE(b.value_at(2.0));  // the right domain edge takes the last piece
  CHECK(step_up().value_at(2.0));
  CHECK_THROWS_AS(b.value_at(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(b.value_at(2.1), std::invalid_argument);

  CHECK(rinterval_str({0.5, 2.0}) == "[0.5,2]");
}

TEST_CASE("duration matches hand-computed values") {
  const PcSignal b = step_down();
  CHECK(duration(b, {0.0, 2.0}) == doctest::Approx(1.0));
  CHECK(duration(b, {0.0, 0.5}) == doctest::Approx(0.5));
  CHECK(duration(b, {0.5, 1.5}) == doctest::Approx(0.5));
  CHECK(duration(b, {1.0, 2.0}) == 0.0);
  CHECK(duration(b, {1.0, 1.0}) == 0.0);  // points contribute nothing
  CHECK(duration(b, {0.5, 0.5}) == 0.0);

  const PcSignal wide = PcSignal::constant(0.0, 3.0, true);
  CHECK(duration(wide, {0.5, 2.5}) == doctest::Approx(2.0));
  CHECK(duration(PcSignal::constant(0.0, 3.0, false), {0.5, 2.5}) == 0.0);

  CHECK_THROWS_AS(duration(b, {-0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(duration(b, {0.0, 2.5}), std::invalid_argument);
  CHECK_THROWS_AS(duration(b, {1.5, 0.5}), std::invalid_argument);

  // additivity over any split, and monotonicity in the signal values
  Rng rng(kDefaultSeed);
  for (int it = 0; it < 50; ++it) {
    const PcSignal s = random_signal(0.0, 3.0, 4, rng);
    std::vector<uint8_t> more = s.values();
    for (auto& v : more)
      if (rng.coin()) v = 1;
    const PcSignal s_or(s.breakpoints(), more);
    const auto xs = random_intervals(0.0, 3.0, 4, rng);
    for (RInterval x : xs) {
      const double k = x.lo + (x.hi - x.lo) * rng.real();
      CHECK(duration(s, x) ==
            doctest::Approx(duration(s, {x.lo, k}) + duration(s, {k, x.hi}))
                .epsilon(1e-9));
      CHECK(duration(s, x) <= duration(s_or, x) + 1e-12);
    }
  }
}

TEST_CASE("min-plus convolution agrees with the dense-grid reference") {
  const PcSignal b = step_down();  // true before 1
  const PcSignal c = step_up();    // true after 1

  // split objective is k |-> min(k,1) + min(1, 2-k): valley 1 at the edges,
  // peak 2 at k = 1; the grid reference fixes both values first
  const double lo_ref = duration_conv_grid(b, c, {0.0, 2.0}, false, 1e-3);
  const double hi_ref = duration_conv_grid(b, c, {0.0, 2.0}, true, 1e-3);
  CHECK(lo_ref == doctest::Approx(1.0));
  CHECK(hi_ref == doctest::Approx(2.0));
  CHECK(duration_conv_min(b, c, {0.0, 2.0}) == doctest::Approx(lo_ref));
  CHECK(duration_conv_max(b, c, {0.0, 2.0}) == doctest::Approx(hi_ref));

  // all-true factors: every split of [0,2] sums to the full length
  const PcSignal t = PcSignal::constant(0.0, 2.0, true);
  CHECK(duration_conv_min(t, t, {0.0, 2.0}) == doctest::Approx(2.0));
  CHECK(duration_conv_max(t, t, {0.0, 2.0}) == doctest::Approx(2.0));

  // point interval: only split is the point itself
  CHECK(duration_conv_min(b, c, {1.5, 1.5}) == 0.0);
  CHECK(duration_conv_max(b, c, {1.5, 1.5}) == 0.0);

  CHECK_THROWS_AS(duration_conv_grid(b, c, {0.0, 1.0}, false, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(duration_conv_min(b, PcSignal::constant(0.0, 1.0, true),
                                    {0.0, 2.0}),
                  std::invalid_argument);

  Rng rng(kDefaultSeed + 1);
  for (int it = 0; it < 30; ++it) {
    const PcSignal f = random_signal(0.0, 3.0, 2 + it % 4, rng);
    const PcSignal g = random_signal(0.0, 3.0, 2 + (it + 1) % 4, rng);
    for (RInterval x : random_intervals(0.0, 3.0, 2, rng)) {
      CHECK(duration_conv_min(f, g, x) ==
            doctest::Approx(duration_conv_grid(f, g, x, false, 1e-3))
                .epsilon(1e-6));
      CHECK(duration_conv_max(f, g, x) ==
            doctest::Approx(duration_conv_grid(f, g, x, true, 1e-3))
                .epsilon(1e-6));
    }
  }
}

TEST_CASE("mean value pins") {
  const PcSignal b = step_down();
  CHECK(mean_value(b, {0.0, 2.0}) == doctest::Approx(0.5));
  CHECK(mean_value(b, {0.0, 1.0}) == doctest::Approx(1.0));
  CHECK(mean_value(b, {1.0, 2.0}) == doctest::Approx(0.0));
  CHECK(mean_value(b, {0.5, 1.5}) == doctest::Approx(0.5));
  // point intervals take the signal value, not a 0/0 ratio
  CHECK(mean_value(b, {0.5, 0.5}) == 1.0);
  CHECK(mean_value(b, {1.5, 1.5}) == 0.0);
  CHECK(mean_value(b, {1.0, 1.0}) == 0.0);  // right-continuous at the break
  CHECK(mean_value(b, {2.0, 2.0}) == 0.0);  // right edge takes last piece
  CHECK(mean_value(PcSignal::constant(0.0, 5.0, true), {2.0, 4.0}) == 1.0);

  Rng rng(kDefaultSeed + 2);
  for (int it = 0; it < 40; ++it) {
    const PcSignal s = random_signal(0.0, 3.0, 3, rng);
    for (RInterval x : random_intervals(0.0, 3.0, 3, rng)) {
      const double m = mean_value(s, x);
      CHECK(m >= 0.0);
      CHECK(m <= 1.0);
    }
  }
}

TEST_CASE("mean convolution containment and grid refinement") {
  const PcSignal b = step_down();
  const PcSignal c = step_up();

  // product objective is 1 * 1 exactly at the crossover split k = 1 and
  // decays toward 0.5 at either endpoint
  CHECK(mean_conv(b, c, {0.0, 2.0}, ConvMode::max) == doctest::Approx(1.0));
  CHECK(mean_conv(b, c, {0.0, 2.0}, ConvMode::min) == doctest::Approx(0.5));
  // point interval: single split, product of the two point values
  CHECK(mean_conv(b, c, {0.5, 0.5}, ConvMode::max) == 0.0);
  CHECK(mean_conv(b, b, {0.5, 0.5}, ConvMode::max) == 1.0);
  CHECK_THROWS_AS(mean_conv(b, c, {0.0, 1.0}, ConvMode::min, -1.0),
                  std::invalid_argument);

  Rng rng(kDefaultSeed + 3);
  for (int it = 0; it < 50; ++it) {
    const PcSignal f = random_signal(0.0, 3.0, 3, rng);
    const PcSignal g = random_signal(0.0, 3.0, 3, rng);
    const auto xs = random_intervals(0.0, 3.0, 1, rng);
    const ConvMode mode = it % 2 ? ConvMode::max : ConvMode::min;
    const double coarse = mean_conv(f, g, xs[0], mode, 1e-3);
    const double fine = mean_conv(f, g, xs[0], mode, 1e-4);
    CHECK(coarse >= 0.0);
    CHECK(coarse <= 1.0);
    // refining the grid must not move the extremum noticeably
    CHECK(std::abs(coarse - fine) <= 1e-3);
  }
}

TEST_CASE("signal JSON round trip") {
  const PcSignal b = PcSignal({0.0, 0.5, 2.0, 3.0}, {1, 0, 1});
  const json j = signal_to_json(b);
  const PcSignal b2 = signal_from_json(j);
  CHECK(b2.breakpoints() == b.breakpoints());
  CHECK(b2.values() == b.values());
  CHECK(j["values"][0].is_boolean());

  for (const char* bad : {
           "[1,2]",
           "{\"breakpoints\":[0,1]}",
           "{\"values\":[true]}",
           "{\"breakpoints\":\"x\",\"values\":[true]}",
           "{\"breakpoints\":[0,\"a\"],\"values\":[true]}",
           "{\"breakpoints\":[0,1],\"values\":[1]}",
           "{\"breakpoints\":[0],\"values\":[]}",
           "{\"breakpoints\":[1,0],\"values\":[true]}",
       }) {
    CHECK_THROWS_AS(signal_from_json(json::parse(bad)), std::invalid_argument);
  }
}

TEST_CASE("duration law suite passes on random instances") {
  Rng rng(kDefaultSeed + 4);
  std::vector<PcSignal> sigs;
  for (int i = 0; i < 4; ++i)
    sigs.push_back(random_signal(0.0, 4.0, 3 + i % 3, rng));
  auto xs = random_intervals(0.5, 3.5, 6, rng);
  xs.push_back({0.0, 4.0});
  xs.push_back({2.0, 2.0});

  const LawReport r = check_duration_quantale(sigs, xs);
  CHECK(r.ok());
  for (const char* name : {"minplus:compose-assoc", "duration-additivity",
                           "conv-min-assoc", "conv-min-assoc-grid",
                           "conv-min-grid-agreement", "conv-max-grid-agreement",
                           "minplus-unit"}) {
    const LawCheck* c = r.find(name);
    REQUIRE_MESSAGE(c != nullptr, name);
    CHECK(c->status == LawCheck::Status::pass);
    CHECK(c->cases > 0);
  }

  CHECK_THROWS_AS(check_duration_quantale({}, xs), std::invalid_argument);
  CHECK_THROWS_AS(check_duration_quantale(sigs, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_duration_quantale(sigs, {{0.0, 9.0}}),
                  std::invalid_argument);
}

TEST_CASE("random generators produce well-formed instances") {
  Rng rng(kDefaultSeed + 5);
  for (int it = 0; it < 20; ++it) {
    const int pieces = 1 + static_cast<int>(rng.below(5));
    const PcSignal s = random_signal(-1.0, 2.0, pieces, rng);
    CHECK(static_cast<int>(s.values().size()) == pieces);
    CHECK(s.domain_lo() == -1.0);
    CHECK(s.domain_hi() == 2.0);
  }
  CHECK_THROWS_AS(random_signal(1.0, 0.0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_signal(0.0, 1.0, 0, rng), std::invalid_argument);

  const auto xs = random_intervals(0.0, 1.0, 10, rng);
  REQUIRE(xs.size() == 10);
  bool saw_point = false;
  for (RInterval x : xs) {
    CHECK(x.lo <= x.hi);
    CHECK(x.lo >= 0.0);
    CHECK(x.hi <= 1.0);
    saw_point = saw_point || x.lo == x.hi;
  }
  CHECK(saw_point);
}
