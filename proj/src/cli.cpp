#include "convalg/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "convalg/conv.hpp"
#include "convalg/interval.hpp"
#include "convalg/itl.hpp"
#include "convalg/psg.hpp"
#include "convalg/quantale.hpp"
#include "convalg/quantcalc.hpp"
#include "convalg/relstruct.hpp"
#include "convalg/rng.hpp"

namespace convalg {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// Built-in relational monoids addressable by name, so the common structures
// need no input files. File paths take precedence over these names.
RelMonoid builtin_rel_monoid(const std::string& name) {
  auto chain = [](const std::string& s) {
    return rel_of_psg(segment_monoid(chain_poset(s.back() - '0')));
  };
  if (name.rfind("fusion-chain", 0) == 0 && name.size() == 13)
    return chain(name);
  if (name.rfind("fusion-chain", 0) == 0 && name.size() == 20 &&
      name.substr(13) == "-strict") {
    PartialMonoid m = segment_monoid(chain_poset(name[12] - '0'), true);
    return rel_of_psg(m);
  }
  if (name == "pairs2") return rel_of_psg(pairs_monoid(2));
  if (name == "pairs3") return rel_of_psg(pairs_monoid(3));
  if (name == "words1") return rel_of_psg(free_monoid_trunc({"a", "b"}, 1));
  if (name == "words2") return rel_of_psg(free_monoid_trunc({"a", "b"}, 2));
  if (name == "one") return rel_of_psg(one_element_monoid());
  if (name == "assoc-counter") {
    // two elements, two triples; convolution over it is not associative
    TernaryRel r({"a", "b"}, {{0, 1, 1}, {1, 1, 0}});
    return RelMonoid{std::move(r), {}};
  }
  throw std::invalid_argument(
      "unknown relational structure '" + name +
      "' (not a readable file; built-ins: fusion-chain2..6[-strict], "
      "pairs2, pairs3, words1, words2, one, assoc-counter)");
}

RelMonoid resolve_rel(const std::string& spec) {
  if (std::filesystem::exists(spec))
    return rel_monoid_from_json(load_json_file(spec));
  return builtin_rel_monoid(spec);
}

struct GlobalOpts {
  bool as_json = false;
  uint64_t seed = kDefaultSeed;
  int samples = 500;
  int horizon = 2;
  double grid = 1e-3;
};

int emit_report(const LawReport& r, const GlobalOpts& g, std::ostream& out) {
  if (g.as_json)
    out << r.to_json().dump(2) << "\n";
  else
    out << r.pretty();
  return r.ok() ? 0 : 1;
}

// ---------------------------------------------------------------- check-laws

struct CheckLawsArgs {
  std::string rel, psg_path, quantale, mode;
  int itl_horizon = -1;
  bool itl_infinite = false;
  bool duration_suite = false;
  bool embedding = false;
};

int cmd_check_laws(const CheckLawsArgs& a, const GlobalOpts& g,
                   std::ostream& out) {
  if (a.itl_horizon >= 0)
    return emit_report(check_itl_algebra(a.itl_horizon, a.itl_infinite), g, out);

  if (a.duration_suite) {
    Rng rng(g.seed);
    std::vector<PcSignal> sigs;
    for (int i = 0; i < 4; ++i)
      sigs.push_back(random_signal(0.0, 4.0, 3 + i % 3, rng));
    auto xs = random_intervals(0.25, 3.75, 6, rng);
    xs.push_back({0.0, 4.0});
    xs.push_back({2.0, 2.0});
    return emit_report(check_duration_quantale(sigs, xs), g, out);
  }

  if (!a.psg_path.empty()) {
    PartialMonoid m = psg_from_json(load_json_file(a.psg_path));
    return emit_report(check_psg_laws(m), g, out);
  }

  if (!a.rel.empty()) {
    RelMonoid rm = resolve_rel(a.rel);
    // with no codomain, mode or embedding request, check the relation itself
    if (a.quantale.empty() && a.mode.empty() && !a.embedding)
      return emit_report(check_rel_monoid(rm), g, out);
    BuiltinQuantale bq =
        builtin_quantale(a.quantale.empty() ? "bool" : a.quantale);
    if (!bq.fin)
      throw std::invalid_argument("lifting checks need a finite quantale; '" +
                                  a.quantale + "' is real-valued");
    if (a.embedding) return emit_report(check_embedding(rm, *bq.fin), g, out);
    LiftOptions opts;
    opts.samples = g.samples;
    opts.seed = g.seed;
    const LiftMode mode =
        lift_mode_from_string(a.mode.empty() ? "quantale" : a.mode);
    return emit_report(check_lifting(rm, *bq.fin, mode, opts), g, out);
  }

  if (!a.quantale.empty()) {
    BuiltinQuantale bq = builtin_quantale(a.quantale);
    const QMode mode = a.mode.empty() ? bq.declared_mode
                                      : qmode_from_string(a.mode);
    if (bq.fin) return emit_report(check_quantale_laws(*bq.fin, mode), g, out);
    return emit_report(
        check_real_quantale_laws(*bq.real, mode, bq.real->default_sample()), g,
        out);
  }

  throw std::invalid_argument(
      "check-laws needs one of --rel, --psg, --quantale, --itl, --duration");
}

// ---------------------------------------------------------------------- eval

struct EvalArgs {
  std::string formula, trace_path;
  int lo = -1, hi = -1;
  bool tail = false;
};

int cmd_eval(const EvalArgs& a, const GlobalOpts& g, std::ostream& out) {
  const Fml f = parse_formula(a.formula);
  const StreamModel m = trace_from_json(load_json_file(a.trace_path));

  std::vector<Iv> ivs;
  if (a.lo >= 0 || a.hi >= 0 || a.tail) {
    if (a.lo < 0)
      throw std::invalid_argument("eval: --hi/--tail need --lo as well");
    if (a.tail && a.hi >= 0)
      throw std::invalid_argument("eval: --tail and --hi are exclusive");
    if (!a.tail && a.hi < 0)
      throw std::invalid_argument("eval: --lo needs --hi or --tail");
    ivs.push_back({a.lo, a.tail ? Iv::kInfinite : a.hi});
  } else {
    for (int i = 0; i <= m.horizon; ++i)
      for (int j = i; j <= m.horizon; ++j) ivs.push_back({i, j});
    if (m.infinite_enabled)
      for (int i = 0; i <= m.horizon; ++i) ivs.push_back({i, Iv::kInfinite});
  }

  json results = json::array();
  bool any_approx = false;
  for (Iv iv : ivs) {
    const EvalResult res = eval_full(f, m, iv);
    any_approx = any_approx || res.approximate;
    if (g.as_json) {
      results.push_back({{"lo", iv.lo},
                         {"hi", iv.hi},
                         {"infinite", iv.infinite()},
                         {"value", res.value},
                         {"approximate", res.approximate}});
    } else {
      out << iv_str(iv) << "  " << (res.value ? "true" : "false")
          << (res.approximate ? "  (approximate)" : "") << "\n";
    }
  }
  if (g.as_json) {
    json j{{"formula", formula_str(f)},
           {"results", std::move(results)},
           {"approximate", any_approx}};
    out << j.dump(2) << "\n";
  }
  return 0;
}

// --------------------------------------------------------------------- repro

struct ReproResult {
  bool ok = false;
  std::string detail;
};

// Two-element carrier with R = {(a,b,b),(b,b,a)} and f = [a -> 0, b -> 1]:
// the two association orders of f*f*f differ at b.
ReproResult repro_assoc_rel() {
  TernaryRel r({"a", "b"}, {{0, 1, 1}, {1, 1, 0}});
  const FinQuantale qb = *builtin_quantale("bool").fin;
  const FnF f{0, 1};
  const FnF ff = convolve(r, qb, f, f);
  const int32_t left = convolve(r, qb, ff, f)[1];
  const int32_t right = convolve(r, qb, f, ff)[1];
  return {left == 0 && right == 1,
          "((f*f)*f) b = " + std::to_string(left) +
              ", (f*(f*f)) b = " + std::to_string(right)};
}

// Binary trees with up to three leaves, split into immediate subtrees.
// f*(f*f) holds of the right-leaning tree, (f*f)*f does not.
ReproResult repro_tree_assoc() {
  TernaryRel r({"a", "(a,a)", "(a,(a,a))", "((a,a),a)"},
               {{1, 0, 0}, {2, 0, 1}, {3, 1, 0}});
  const FinQuantale qb = *builtin_quantale("bool").fin;
  const FnF f{1, 0, 0, 0};
  const FnF ff = convolve(r, qb, f, f);
  const int32_t left = convolve(r, qb, ff, f)[2];
  const int32_t right = convolve(r, qb, f, ff)[2];
  return {right == 1 && left == 0,
          "(f*(f*f)) (a,(a,a)) = " + std::to_string(right) +
              ", ((f*f)*f) (a,(a,a)) = " + std::to_string(left)};
}

// Strict segments of the chain 0..3 fuse without point segments, so no
// boolean table can act as a convolution unit on either side.
ReproResult repro_no_unit_strict() {
  const RelMonoid rm = rel_of_psg(segment_monoid(chain_poset(3), true));
  const FinQuantale qb = *builtin_quantale("bool").fin;
  const int n = rm.rel.size();
  const uint32_t tables = 1u << n;
  auto decode = [n](uint32_t code) {
    FnF f(n);
    for (int i = 0; i < n; ++i) f[i] = (code >> i) & 1;
    return f;
  };
  int units_found = 0;
  for (uint32_t gc = 0; gc < tables; ++gc) {
    const FnF g = decode(gc);
    bool is_unit = true;
    for (uint32_t fc = 0; fc < tables && is_unit; ++fc) {
      const FnF f = decode(fc);
      is_unit = fn_eq(qb, convolve(rm.rel, qb, f, g), f) &&
                fn_eq(qb, convolve(rm.rel, qb, g, f), f);
    }
    units_found += is_unit;
  }
  return {units_found == 0,
          std::to_string(tables) + " candidate tables over " +
              std::to_string(n) + " strict segments, " +
              std::to_string(units_found) + " act as a unit"};
}

// Partial semigroup {a,b} with only a*a = b, lifted over the three-element
// weak quantale: with f constantly top, the nestings differ at b.
ReproResult repro_weak_assoc() {
  PartialMonoid ab({"a", "b"}, {1, -1, -1, -1}, {});
  const RelMonoid rm = rel_of_psg(ab);
  const FinQuantale q = *builtin_quantale("chain3-weak").fin;
  const FnF f(2, q.top());
  const FnF ff = convolve(rm.rel, q, f, f);
  const int32_t right = convolve(rm.rel, q, f, ff)[1];
  const int32_t left = convolve(rm.rel, q, ff, f)[1];
  return {right == q.top() && left == q.bottom(),
          "(f*(f*f)) b = " + q.name(right) + ", ((f*f)*f) b = " + q.name(left)};
}

// Two-element group over the same weak quantale: convolving with the unit
// table from the right overshoots f at the group unit.
ReproResult repro_weak_right_unit() {
  PartialMonoid z2({"1", "a"}, {0, 1, 1, 0}, {0});
  const RelMonoid rm = rel_of_psg(z2);
  const FinQuantale q = *builtin_quantale("chain3-weak").fin;
  FnF f(2);
  f[0] = q.unit();
  f[1] = q.top();
  const int32_t got = convolve(rm.rel, q, f, delta_unit(rm, q))[0];
  return {got == q.top() && f[0] == q.unit() && got != f[0],
          "(f*id) 1 = " + q.name(got) + ", f 1 = " + q.name(f[0])};
}

// In the semidirect pair quantale over the booleans, composing with the
// empty join's value (0,0) does not annihilate: (0,1) |x (0,0) = (0,1).
ReproResult repro_sd_left_distrib() {
  const FinQuantale sdq = sd_quantale(self_module(*builtin_quantale("bool").fin));
  const int32_t a = 1;  // the pair (0,1)
  const int32_t got = sdq.compose(a, sdq.bottom());
  return {got == a && got != sdq.bottom(),
          "(0,1) composed with bottom = " + sdq.name(got) + ", not " +
              sdq.name(sdq.bottom())};
}

// Over the pure pairs of the finite/infinite segment product, a table that
// holds on a tail survives convolution with the all-bottom table.
ReproResult repro_inf_right_annihilation() {
  const auto fia = fin_inf_segment_action(2);
  const PartialMonoid pure =
      restrict_submonoid(sd_monoid(fia.action), pure_pair_mask(fia));
  const RelMonoid rm = rel_of_psg(pure);
  const FinQuantale sdq =
      sd_quantale(self_module(*builtin_quantale("bool").fin));
  const int nf = fia.action.s.size() - 1;  // finite segments; zero is last
  FnF f(pure.size(), 0);
  for (int i = nf + 1; i < static_cast<int>(pure.size()); ++i) f[i] = 1;
  const FnF zero(pure.size(), sdq.bottom());
  const int32_t got = convolve(rm.rel, sdq, f, zero)[nf + 1];
  return {got == 1, "(f*0) " + pure.name(nf + 1) + " = " + sdq.name(got) +
                        ", not " + sdq.name(sdq.bottom())};
}

const std::vector<std::string>& repro_case_names() {
  static const std::vector<std::string> names{
      "assoc-rel",        "tree-assoc",      "no-unit-strict",
      "weak-assoc",       "weak-right-unit", "sd-left-distrib",
      "inf-right-annihilation"};
  return names;
}

ReproResult run_repro_case(const std::string& name) {
  if (name == "assoc-rel") return repro_assoc_rel();
  if (name == "tree-assoc") return repro_tree_assoc();
  if (name == "no-unit-strict") return repro_no_unit_strict();
  if (name == "weak-assoc") return repro_weak_assoc();
  if (name == "weak-right-unit") return repro_weak_right_unit();
  if (name == "sd-left-distrib") return repro_sd_left_distrib();
  if (name == "inf-right-annihilation") return repro_inf_right_annihilation();
  throw std::invalid_argument("unknown repro case: " + name);
}

int cmd_repro(const std::string& which, const GlobalOpts& g,
              std::ostream& out) {
  std::vector<std::string> names;
  if (which == "all")
    names = repro_case_names();
  else
    names.push_back(which);

  bool all_ok = true;
  json report = json::array();
  for (const auto& name : names) {
    const ReproResult res = run_repro_case(name);
    all_ok = all_ok && res.ok;
    if (g.as_json)
      report.push_back({{"case", name}, {"ok", res.ok}, {"detail", res.detail}});
    else
      out << name << ": " << res.detail << " -- "
          << (res.ok ? "reproduced" : "MISMATCH") << "\n";
  }
  if (g.as_json) out << report.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

// ----------------------------------------------------------- duration / mean

struct SignalArgs {
  std::string signal_path, signal2_path;
  double lo = 0.0, hi = 0.0;
  bool csv = false;
};

std::vector<double> csv_split_points(const PcSignal& b, const PcSignal& c,
                                     RInterval x, double step) {
  std::vector<double> ks{x.lo, x.hi};
  for (const PcSignal* s : {&b, &c})
    for (double t : s->breakpoints())
      if (t > x.lo && t < x.hi) ks.push_back(t);
  for (double k = x.lo + step; k < x.hi; k += step) ks.push_back(k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

int cmd_duration(const SignalArgs& a, const GlobalOpts& g, std::ostream& out) {
  const PcSignal b = signal_from_json(load_json_file(a.signal_path));
  const RInterval x{a.lo, a.hi};
  if (a.signal2_path.empty()) {
    if (a.csv)
      throw std::invalid_argument("duration: --csv needs two signals");
    const double d = duration(b, x);
    if (g.as_json)
      out << json{{"duration", d}}.dump(2) << "\n";
    else
      out << "duration " << d << "\n";
    return 0;
  }
  const PcSignal c = signal_from_json(load_json_file(a.signal2_path));
  if (a.csv) {
    out << "k,value\n";
    for (double k : csv_split_points(b, c, x, g.grid))
      out << k << "," << duration(b, {x.lo, k}) + duration(c, {k, x.hi})
          << "\n";
    return 0;
  }
  const double lo = duration_conv_min(b, c, x);
  const double hi = duration_conv_max(b, c, x);
  if (g.as_json)
    out << json{{"conv_min", lo}, {"conv_max", hi}}.dump(2) << "\n";
  else
    out << "conv-min " << lo << "\nconv-max " << hi << "\n";
  return 0;
}

int cmd_mean(const SignalArgs& a, const GlobalOpts& g, std::ostream& out) {
  const PcSignal b = signal_from_json(load_json_file(a.signal_path));
  const RInterval x{a.lo, a.hi};
  if (a.signal2_path.empty()) {
    if (a.csv) throw std::invalid_argument("mean: --csv needs two signals");
    const double m = mean_value(b, x);
    if (g.as_json)
      out << json{{"mean", m}}.dump(2) << "\n";
    else
      out << "mean " << m << "\n";
    return 0;
  }
  const PcSignal c = signal_from_json(load_json_file(a.signal2_path));
  if (a.csv) {
    out << "k,value\n";
    for (double k : csv_split_points(b, c, x, g.grid))
      out << k << "," << mean_value(b, {x.lo, k}) * mean_value(c, {k, x.hi})
          << "\n";
    return 0;
  }
  const double lo = mean_conv(b, c, x, ConvMode::min, g.grid);
  const double hi = mean_conv(b, c, x, ConvMode::max, g.grid);
  if (g.as_json)
    out << json{{"conv_min", lo}, {"conv_max", hi}}.dump(2) << "\n";
  else
    out << "conv-min " << lo << "\nconv-max " << hi << "\n";
  return 0;
}

// --------------------------------------------------------------------- allen

struct AllenArgs {
  std::string poset_path, relation;
  int chain = 3;
  bool strict = false;
};

int cmd_allen(const AllenArgs& a, const GlobalOpts& g, std::ostream& out) {
  const FinPoset p = a.poset_path.empty()
                         ? chain_poset(a.chain)
                         : poset_from_json(load_json_file(a.poset_path));
  const IntervalAlgebra ia = interval_algebra(p, a.strict);

  const std::map<std::string, const BinRel*> rels{
      {"B", &ia.allen.b}, {"E", &ia.allen.e}, {"A", &ia.allen.a},
      {"D", &ia.allen.d}, {"O", &ia.allen.o}, {"L", &ia.allen.l}};
  std::vector<std::string> selected;
  if (a.relation.empty()) {
    for (const auto& [name, rel] : rels) selected.push_back(name);
  } else {
    std::string up = a.relation;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    if (!rels.count(up))
      throw std::invalid_argument("unknown Allen relation: " + a.relation +
                                  " (expected one of B, E, A, D, O, L)");
    selected.push_back(up);
  }

  json j;
  for (const auto& name : selected) {
    const BinRel& r = *rels.at(name);
    json pairs = json::array();
    for (int x = 0; x < r.rows(); ++x)
      for (int y = 0; y < r.cols(); ++y)
        if (r.at(x, y)) {
          const std::string sx = segment_name(p, ia.segments[x]);
          const std::string sy = segment_name(p, ia.segments[y]);
          if (g.as_json)
            pairs.push_back({sx, sy});
          else
            out << name << " " << sx << " " << sy << "\n";
        }
    if (g.as_json) j[name] = std::move(pairs);
  }
  if (g.as_json) out << j.dump(2) << "\n";
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"relational convolution toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_flag("--json", g.as_json, "emit JSON instead of text");
  app.add_option("--seed", g.seed, "seed for sampled suites");
  app.add_option("--samples", g.samples, "sample count for non-exhaustive rows");
  app.add_option("--horizon", g.horizon, "chain length for structure checks");
  app.add_option("--grid", g.grid, "grid step for approximate searches");

  CheckLawsArgs cl;
  CLI::App* sub_check = app.add_subcommand(
      "check-laws", "run a law suite (exit 1 when a law fails)");
  sub_check->fallthrough();
  sub_check->add_option("--rel", cl.rel,
                        "relational monoid: JSON file or built-in name");
  sub_check->add_option("--psg", cl.psg_path, "partial monoid JSON file");
  sub_check->add_option("--quantale", cl.quantale,
                        "built-in quantale (with --rel: lifting codomain)");
  sub_check->add_option(
      "--mode", cl.mode,
      "lifting mode (proto/quantale/unital/weak/abelian/semiring) or "
      "element-law mode (full/weak/proto)");
  sub_check->add_option("--itl", cl.itl_horizon,
                        "check the chop algebra over the chain 0..N");
  sub_check->add_flag("--infinite", cl.itl_infinite,
                      "include semi-infinite segments (with --itl)");
  sub_check->add_flag("--duration", cl.duration_suite,
                      "check the duration algebra on seeded random signals");
  sub_check->add_flag("--embedding", cl.embedding,
                      "check the delta embedding (with --rel and --quantale)");

  EvalArgs ev;
  CLI::App* sub_eval = app.add_subcommand(
      "eval", "evaluate an interval formula over a trace");
  sub_eval->fallthrough();
  sub_eval->add_option("--formula", ev.formula, "formula text")->required();
  sub_eval->add_option("--trace", ev.trace_path, "trace JSON file")->required();
  sub_eval->add_option("--lo", ev.lo, "interval start (default: all intervals)");
  sub_eval->add_option("--hi", ev.hi, "interval end");
  sub_eval->add_flag("--tail", ev.tail, "evaluate on [lo,inf] instead of --hi");

  std::string repro_case = "all";
  CLI::App* sub_repro = app.add_subcommand(
      "repro", "recompute the library's counterexample catalog");
  sub_repro->fallthrough();
  sub_repro->add_option("case", repro_case,
                        "assoc-rel | tree-assoc | no-unit-strict | weak-assoc "
                        "| weak-right-unit | sd-left-distrib | "
                        "inf-right-annihilation | all");

  SignalArgs du;
  CLI::App* sub_dur = app.add_subcommand(
      "duration", "duration of a signal, or min/max split convolutions");
  sub_dur->fallthrough();
  sub_dur->add_option("--signal", du.signal_path, "signal JSON file")
      ->required();
  sub_dur->add_option("--signal2", du.signal2_path,
                      "second signal (convolution mode)");
  sub_dur->add_option("--lo", du.lo, "interval start")->required();
  sub_dur->add_option("--hi", du.hi, "interval end")->required();
  sub_dur->add_flag("--csv", du.csv, "emit split-point objective values");

  SignalArgs me;
  CLI::App* sub_mean = app.add_subcommand(
      "mean", "mean value of a signal, or min/max mean convolutions");
  sub_mean->fallthrough();
  sub_mean->add_option("--signal", me.signal_path, "signal JSON file")
      ->required();
  sub_mean->add_option("--signal2", me.signal2_path,
                       "second signal (convolution mode)");
  sub_mean->add_option("--lo", me.lo, "interval start")->required();
  sub_mean->add_option("--hi", me.hi, "interval end")->required();
  sub_mean->add_flag("--csv", me.csv, "emit split-point objective values");

  AllenArgs al;
  CLI::App* sub_allen = app.add_subcommand(
      "allen", "list Allen relation pairs over a poset's segments");
  sub_allen->fallthrough();
  sub_allen->add_option("--chain", al.chain, "use the chain 0..N (default 3)");
  sub_allen->add_option("--poset", al.poset_path, "poset JSON file instead");
  sub_allen->add_option("--relation", al.relation,
                        "B, E, A, D, O or L (default: all six)");
  sub_allen->add_flag("--strict", al.strict, "exclude point segments");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sub_check) return cmd_check_laws(cl, g, out);
    if (*sub_eval) return cmd_eval(ev, g, out);
    if (*sub_repro) return cmd_repro(repro_case, g, out);
    if (*sub_dur) return cmd_duration(du, g, out);
    if (*sub_mean) return cmd_mean(me, g, out);
    if (*sub_allen) return cmd_allen(al, g, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}

} // namespace convalg
