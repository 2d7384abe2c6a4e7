#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/law_report.hpp"
#include "convalg/rng.hpp"

namespace convalg {

// Closed real interval [lo,hi]. Validated (lo <= hi, within the signal
// domain) by the operations that consume it.
struct RInterval {
  double lo = 0.0;
  double hi = 0.0;
};

std::string rinterval_str(RInterval x);

// Piecewise-constant boolean signal: value k holds on the half-open piece
// [breakpoints[k], breakpoints[k+1}); the domain is [front, back]. Adjacent
// pieces may repeat a value; breakpoints must increase strictly.
class PcSignal {
public:
  PcSignal(std::vector<double> breakpoints, std::vector<uint8_t> values);

  static PcSignal constant(double lo, double hi, bool value);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<uint8_t>& values() const { return values_; }
  double domain_lo() const { return breakpoints_.front(); }
  double domain_hi() const { return breakpoints_.back(); }

  // Right-continuous lookup; the right domain edge takes the last piece.
  // Throws outside the domain.
  bool value_at(double t) const;

private:
  std::vector<double> breakpoints_;
  std::vector<uint8_t> values_;
};

// Length of the part of x on which b is true. Exact for piecewise-constant
// signals; zero on point intervals.
double duration(const PcSignal& b, RInterval x);

// min / max over split points k of duration(b,[lo,k]) + duration(c,[k,hi]).
// The objective is piecewise linear in k with kinks only at signal
// breakpoints, so the search runs exactly over {lo, hi} and the breakpoints
// inside x.
double duration_conv_min(const PcSignal& b, const PcSignal& c, RInterval x);
double duration_conv_max(const PcSignal& b, const PcSignal& c, RInterval x);

// Brute-force reference for the two functions above: scans a uniform grid of
// the given step merged with the breakpoints. step must be > 0.
double duration_conv_grid(const PcSignal& b, const PcSignal& c, RInterval x,
                          bool maximize, double step);

// duration(b,x) / |x| for proper intervals; the signal value at lo for point
// intervals. Always lands in [0,1].
double mean_value(const PcSignal& b, RInterval x);

enum class ConvMode { min, max };

// Extremum over split points of mean_value(b,[lo,k]) * mean_value(c,[k,hi]).
// The objective is a ratio of integrals, not piecewise linear, so the split
// search is a grid approximation: candidates are the endpoints, the
// breakpoints inside x and a uniform grid of the given step.
double mean_conv(const PcSignal& b, const PcSignal& c, RInterval x,
                 ConvMode mode, double grid = 1e-3);

// Law suite over the given signals and intervals (each interval must lie in
// every signal's domain): min-plus element laws on the sampled duration
// values, additivity of duration over splits, associativity of the min-plus
// convolution cross-checked against the grid reference, grid agreement for
// both convolutions, and the point-interval delta as convolution unit.
LawReport check_duration_quantale(const std::vector<PcSignal>& signals,
                                  const std::vector<RInterval>& intervals);

// Helpers for randomized suites: a signal with `pieces` random pieces over
// [lo,hi], and n intervals with endpoints drawn uniformly from [lo,hi].
PcSignal random_signal(double lo, double hi, int pieces, Rng& rng);
std::vector<RInterval> random_intervals(double lo, double hi, int n, Rng& rng);

// {"breakpoints": [t0,...], "values": [bool,...]}
nlohmann::json signal_to_json(const PcSignal& b);
PcSignal signal_from_json(const nlohmann::json& j);

} // namespace convalg
