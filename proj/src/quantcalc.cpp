#include "convalg/quantcalc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "convalg/quantale.hpp"

namespace convalg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void require_inside(const PcSignal& b, RInterval x, const char* what) {
  if (!(x.lo <= x.hi))
    throw std::invalid_argument(std::string(what) + ": interval " +
                                rinterval_str(x) + " has lo > hi");
  if (x.lo < b.domain_lo() || x.hi > b.domain_hi())
    throw std::invalid_argument(std::string(what) + ": interval " +
                                rinterval_str(x) + " outside signal domain [" +
                                num(b.domain_lo()) + "," + num(b.domain_hi()) +
                                "]");
}

// endpoints of x plus every signal breakpoint strictly inside it, sorted
std::vector<double> split_candidates(
    std::initializer_list<const PcSignal*> signals, RInterval x) {
  std::vector<double> ks{x.lo, x.hi};
  for (const PcSignal* s : signals)
    for (double t : s->breakpoints())
      if (t > x.lo && t < x.hi) ks.push_back(t);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

void merge_grid(std::vector<double>& ks, RInterval x, double step) {
  for (double k = x.lo + step; k < x.hi; k += step) ks.push_back(k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
}

double extremum_over_splits(const std::vector<double>& ks, bool maximize,
                            double (*objective)(double, const void*),
                            const void* env) {
  double best = maximize ? -kInf : kInf;
  for (double k : ks) {
    const double v = objective(k, env);
    best = maximize ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

struct PairEnv {
  const PcSignal* b;
  const PcSignal* c;
  RInterval x;
};

double duration_split_objective(double k, const void* env) {
  const auto& e = *static_cast<const PairEnv*>(env);
  return duration(*e.b, {e.x.lo, k}) + duration(*e.c, {k, e.x.hi});
}

double duration_conv_impl(const PcSignal& b, const PcSignal& c, RInterval x,
                          bool maximize, const char* what) {
  require_inside(b, x, what);
  require_inside(c, x, what);
  PairEnv env{&b, &c, x};
  return extremum_over_splits(split_candidates({&b, &c}, x), maximize,
                              duration_split_objective, &env);
}

} // namespace

std::string rinterval_str(RInterval x) {
  return "[" + num(x.lo) + "," + num(x.hi) + "]";
}

PcSignal::PcSignal(std::vector<double> breakpoints, std::vector<uint8_t> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2)
    throw std::invalid_argument("signal needs at least one piece");
  if (values_.size() + 1 != breakpoints_.size())
    throw std::invalid_argument("signal needs one value per piece");
  for (size_t k = 0; k + 1 < breakpoints_.size(); ++k)
    if (!(breakpoints_[k] < breakpoints_[k + 1]))
      throw std::invalid_argument("breakpoints must increase strictly");
  for (double t : breakpoints_)
    if (!std::isfinite(t))
      throw std::invalid_argument("breakpoints must be finite");
}

PcSignal PcSignal::constant(double lo, double hi, bool value) {
  return PcSignal({lo, hi}, {static_cast<uint8_t>(value)});
}

bool PcSignal::value_at(double t) const {
  if (t < domain_lo() || t > domain_hi())
    throw std::invalid_argument("value_at: " + num(t) +
                                " outside signal domain");
  if (t == domain_hi()) return values_.back() != 0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<size_t>(it - breakpoints_.begin()) - 1] != 0;
}

double duration(const PcSignal& b, RInterval x) {
  require_inside(b, x, "duration");
  double total = 0.0;
  const auto& ts = b.breakpoints();
  for (size_t k = 0; k < b.values().size(); ++k) {
    if (!b.values()[k]) continue;
    const double lo = std::max(x.lo, ts[k]);
    const double hi = std::min(x.hi, ts[k + 1]);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

double duration_conv_min(const PcSignal& b, const PcSignal& c, RInterval x) {
  return duration_conv_impl(b, c, x, false, "duration_conv_min");
}

double duration_conv_max(const PcSignal& b, const PcSignal& c, RInterval x) {
  return duration_conv_impl(b, c, x, true, "duration_conv_max");
}

double duration_conv_grid(const PcSignal& b, const PcSignal& c, RInterval x,
                          bool maximize, double step) {
  if (!(step > 0))
    throw std::invalid_argument("duration_conv_grid: step must be positive");
  require_inside(b, x, "duration_conv_grid");
  require_inside(c, x, "duration_conv_grid");
  auto ks = split_candidates({&b, &c}, x);
  merge_grid(ks, x, step);
  PairEnv env{&b, &c, x};
  return extremum_over_splits(ks, maximize, duration_split_objective, &env);
}

double mean_value(const PcSignal& b, RInterval x) {
  require_inside(b, x, "mean_value");
  // summing piece overlaps can overshoot the interval length by an ulp
  if (x.hi > x.lo) return std::min(1.0, duration(b, x) / (x.hi - x.lo));
  return b.value_at(x.lo) ? 1.0 : 0.0;
}

double mean_conv(const PcSignal& b, const PcSignal& c, RInterval x,
                 ConvMode mode, double grid) {
  if (!(grid > 0))
    throw std::invalid_argument("mean_conv: grid step must be positive");
  require_inside(b, x, "mean_conv");
  require_inside(c, x, "mean_conv");
  auto ks = split_candidates({&b, &c}, x);
  merge_grid(ks, x, grid);
  double best = mode == ConvMode::max ? -kInf : kInf;
  for (double k : ks) {
    const double v = mean_value(b, {x.lo, k}) * mean_value(c, {k, x.hi});
    best = mode == ConvMode::max ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

namespace {

// ((b * c) * d)(x) and (b * (c * d))(x) for the min-plus duration
// convolution, with the outer split running over the given candidates
double nested_left(const PcSignal& b, const PcSignal& c, const PcSignal& d,
                   RInterval x, const std::vector<double>& ks) {
  double best = kInf;
  for (double k : ks)
    best = std::min(best, duration_conv_min(b, c, {x.lo, k}) +
                              duration(d, {k, x.hi}));
  return best;
}

double nested_right(const PcSignal& b, const PcSignal& c, const PcSignal& d,
                    RInterval x, const std::vector<double>& ks) {
  double best = kInf;
  for (double k : ks)
    best = std::min(best, duration(b, {x.lo, k}) +
                              duration_conv_min(c, d, {k, x.hi}));
  return best;
}

} // namespace

LawReport check_duration_quantale(const std::vector<PcSignal>& signals,
                                  const std::vector<RInterval>& intervals) {
  if (signals.empty() || intervals.empty())
    throw std::invalid_argument(
        "check_duration_quantale needs signals and intervals");
  for (const auto& b : signals)
    for (RInterval x : intervals) require_inside(b, x, "check_duration_quantale");

  LawReport r;
  r.subject = "duration quantale (" + std::to_string(signals.size()) +
              " signals, " + std::to_string(intervals.size()) + " intervals)";
  const int ns = static_cast<int>(signals.size());

  // element laws of the target algebra, on actually occurring durations
  {
    std::vector<double> sample{0.0, kInf};
    for (const auto& b : signals)
      for (RInterval x : intervals) {
        if (sample.size() >= 10) break;
        const double v = duration(b, x);
        if (std::none_of(sample.begin(), sample.end(),
                         [v](double s) { return std::abs(s - v) < 1e-12; }))
          sample.push_back(v);
      }
    RealQuantale mp(RealQuantale::Tag::minplus);
    r.merge(check_real_quantale_laws(mp, QMode::full, sample), "minplus:");
  }

  auto& add = r.add("duration-additivity");
  for (int i = 0; i < ns; ++i)
    for (RInterval x : intervals)
      for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double k = x.lo + (x.hi - x.lo) * u;
        const double whole = duration(signals[i], x);
        const double split =
            duration(signals[i], {x.lo, k}) + duration(signals[i], {k, x.hi});
        ++add.cases;
        if (!add.failed() && std::abs(whole - split) > 1e-9) {
          add.status = LawCheck::Status::fail;
          add.witness = "signal " + std::to_string(i) + " on " +
                        rinterval_str(x) + " split at " + num(k) + ": " +
                        num(whole) + " vs " + num(split);
        }
      }

  // associativity of the min-plus convolution: both nestings over the exact
  // candidate set must agree
  auto& assoc = r.add("conv-min-assoc");
  const int triples = std::min(27, ns * ns * ns);
  for (int t = 0; t < triples; ++t) {
    const PcSignal& b = signals[t % ns];
    const PcSignal& c = signals[(t / ns) % ns];
    const PcSignal& d = signals[(t / ns / ns) % ns];
    for (RInterval x : intervals) {
      const auto ks = split_candidates({&b, &c, &d}, x);
      const double lhs = nested_left(b, c, d, x, ks);
      const double rhs = nested_right(b, c, d, x, ks);
      ++assoc.cases;
      if (!assoc.failed() && std::abs(lhs - rhs) > 1e-6) {
        assoc.status = LawCheck::Status::fail;
        assoc.witness = "triple " + std::to_string(t) + " on " +
                        rinterval_str(x) + ": " + num(lhs) + " vs " + num(rhs);
      }
    }
  }

  // the same nestings with the outer split on a dense grid: the candidate
  // search must not have missed a better split (a few cases, they are slow)
  auto& agrid = r.add("conv-min-assoc-grid");
  for (int t = 0; t < std::min(2, triples); ++t) {
    const PcSignal& b = signals[t % ns];
    const PcSignal& c = signals[(t + 1) % ns];
    const PcSignal& d = signals[(t + 2) % ns];
    for (size_t xi = 0; xi < intervals.size() && xi < 3; ++xi) {
      const RInterval x = intervals[xi];
      auto exact = split_candidates({&b, &c, &d}, x);
      auto dense = exact;
      merge_grid(dense, x, 1e-3);
      ++agrid.cases;
      if (!agrid.failed() &&
          (std::abs(nested_left(b, c, d, x, exact) -
                    nested_left(b, c, d, x, dense)) > 1e-6 ||
           std::abs(nested_right(b, c, d, x, exact) -
                    nested_right(b, c, d, x, dense)) > 1e-6)) {
        agrid.status = LawCheck::Status::fail;
        agrid.witness = "triple " + std::to_string(t) + " on " + rinterval_str(x);
      }
    }
  }

  // breakpoint candidates against the dense grid for single convolutions
  auto& gmin = r.add("conv-min-grid-agreement");
  auto& gmax = r.add("conv-max-grid-agreement");
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j)
      for (RInterval x : intervals) {
        const auto grid_step = 1e-3;
        ++gmin.cases;
        if (!gmin.failed() &&
            std::abs(duration_conv_min(signals[i], signals[j], x) -
                     duration_conv_grid(signals[i], signals[j], x, false,
                                        grid_step)) > 1e-6) {
          gmin.status = LawCheck::Status::fail;
          gmin.witness = "signals " + std::to_string(i) + "," +
                         std::to_string(j) + " on " + rinterval_str(x);
        }
        ++gmax.cases;
        if (!gmax.failed() &&
            std::abs(duration_conv_max(signals[i], signals[j], x) -
                     duration_conv_grid(signals[i], signals[j], x, true,
                                        grid_step)) > 1e-6) {
          gmax.status = LawCheck::Status::fail;
          gmax.witness = "signals " + std::to_string(i) + "," +
                         std::to_string(j) + " on " + rinterval_str(x);
        }
      }

  // the point-interval delta (0 at points, inf elsewhere) is the unit
  auto& unit = r.add("minplus-unit");
  for (int i = 0; i < ns; ++i)
    for (RInterval x : intervals) {
      const PcSignal& b = signals[i];
      const double want = duration(b, x);
      double right = kInf, left = kInf;
      for (double k : split_candidates({&b}, x)) {
        right = std::min(right,
                         duration(b, {x.lo, k}) + (k == x.hi ? 0.0 : kInf));
        left = std::min(left,
                        (k == x.lo ? 0.0 : kInf) + duration(b, {k, x.hi}));
      }
      ++unit.cases;
      if (!unit.failed() &&
          (std::abs(right - want) > 1e-9 || std::abs(left - want) > 1e-9)) {
        unit.status = LawCheck::Status::fail;
        unit.witness = "signal " + std::to_string(i) + " on " +
                       rinterval_str(x) + ": " + num(left) + " / " +
                       num(right) + " vs " + num(want);
      }
    }

  return r;
}

PcSignal random_signal(double lo, double hi, int pieces, Rng& rng) {
  if (!(lo < hi) || pieces < 1)
    throw std::invalid_argument("random_signal needs lo < hi and pieces >= 1");
  std::set<double> cuts;
  while (static_cast<int>(cuts.size()) < pieces - 1) {
    const double t = rng.real_in(lo, hi);
    if (t > lo && t < hi) cuts.insert(t);
  }
  std::vector<double> bps{lo};
  bps.insert(bps.end(), cuts.begin(), cuts.end());
  bps.push_back(hi);
  std::vector<uint8_t> vals(pieces);
  for (auto& v : vals) v = rng.coin() ? 1 : 0;
  return PcSignal(std::move(bps), std::move(vals));
}

std::vector<RInterval> random_intervals(double lo, double hi, int n, Rng& rng) {
  std::vector<RInterval> out;
  for (int i = 0; i < n; ++i) {
    if (i % 5 == 4) {  // keep point intervals in every suite
      const double t = rng.real_in(lo, hi);
      out.push_back({t, t});
    } else {
      const double a = rng.real_in(lo, hi), b = rng.real_in(lo, hi);
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  return out;
}

nlohmann::json signal_to_json(const PcSignal& b) {
  nlohmann::json j;
  j["breakpoints"] = b.breakpoints();
  nlohmann::json vals = nlohmann::json::array();
  for (uint8_t v : b.values()) vals.push_back(v != 0);
  j["values"] = std::move(vals);
  return j;
}

PcSignal signal_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values") ||
      !j["breakpoints"].is_array() || !j["values"].is_array())
    throw std::invalid_argument(
        "signal: expected {\"breakpoints\": [...], \"values\": [...]}");
  std::vector<double> bps;
  for (const auto& t : j["breakpoints"]) {
    if (!t.is_number())
      throw std::invalid_argument("signal: breakpoints must be numbers");
    bps.push_back(t.get<double>());
  }
  std::vector<uint8_t> vals;
  for (const auto& v : j["values"]) {
    if (!v.is_boolean())
      throw std::invalid_argument("signal: values must be booleans");
    vals.push_back(v.get<bool>() ? 1 : 0);
  }
  return PcSignal(std::move(bps), std::move(vals));
}

} // namespace convalg
