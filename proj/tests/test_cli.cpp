#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "convalg/cli.hpp"
#include "convalg/interval.hpp"
#include "convalg/itl.hpp"
#include "convalg/law_report.hpp"
#include "convalg/psg.hpp"
#include "convalg/quantcalc.hpp"
#include "convalg/relstruct.hpp"

using namespace convalg;
using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "convalg");
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_tmp(const std::string& name, const std::string& content) {
  const auto path =
      std::filesystem::temp_directory_path() / ("convalg_cli_" + name);
  std::ofstream f(path);
  f << content;
  return path.string();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// trace used by the eval tests: p holds while the stream reads "s1",
// r holds only on [1,3]
StreamModel eval_model() {
  StreamModel m;
  m.horizon = 3;
  m.stream = {"s1", "s1", "s0", "s0"};
  m.atoms["p"].state_pred = "s1";
  m.atoms["r"].intervals = {{1, 3}};
  return m;
}

PcSignal step_down() { return PcSignal({0.0, 1.0, 2.0}, {1, 0}); }
PcSignal step_up() { return PcSignal({0.0, 1.0, 2.0}, {0, 1}); }

} // namespace

TEST_CASE("repro reproduces every catalog counterexample") {
  const CliResult all = run({"repro"});
  CHECK(all.code == 0);
  CHECK_FALSE(contains(all.out, "MISMATCH"));
  for (const char* name :
       {"assoc-rel", "tree-assoc", "no-unit-strict", "weak-assoc",
        "weak-right-unit", "sd-left-distrib", "inf-right-annihilation"}) {
    CHECK(contains(all.out, std::string(name) + ":"));
    const CliResult one = run({"repro", name});
    CHECK(one.code == 0);
    CHECK(contains(one.out, "reproduced"));
  }

  // the published inequalities, verbatim in the detail lines
  CHECK(contains(all.out, "((f*f)*f) b = 0, (f*(f*f)) b = 1"));
  CHECK(contains(all.out, "(f*(f*f)) (a,(a,a)) = 1"));
  CHECK(contains(all.out, "64 candidate tables over 6 strict segments, 0"));
  CHECK(contains(all.out, "(f*id) 1 = ⊤, f 1 = 1"));
  CHECK(contains(all.out, "(0,1) composed with bottom = (0,1), not (0,0)"));
  CHECK(contains(all.out, "(f*0) (0,[0,inf]) = (0,1), not (0,0)"));

  const CliResult j = run({"--json", "repro", "weak-assoc"});
  CHECK(j.code == 0);
  const json arr = json::parse(j.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 1);
  CHECK(arr[0]["case"] == "weak-assoc");
  CHECK(arr[0]["ok"] == true);
  CHECK(contains(arr[0]["detail"].get<std::string>(), "⊤"));

  CHECK(run({"repro", "no-such-case"}).code == 2);
}

TEST_CASE("check-laws runs lifting and element suites with stable exits") {
  CHECK(run({"check-laws", "--rel", "fusion-chain3", "--quantale", "bool",
             "--mode", "unital"})
            .code == 0);
  CHECK(run({"check-laws", "--rel", "one", "--quantale", "diamond4", "--mode",
             "unital"})
            .code == 0);

  const CliResult bad = run({"check-laws", "--rel", "assoc-counter", "--mode",
                             "quantale"});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "[fail] assoc"));

  const CliResult weak = run({"check-laws", "--quantale", "chain3-weak",
                              "--mode", "full"});
  CHECK(weak.code == 1);
  CHECK(contains(weak.out, "right-annihilation"));
  // in its declared weak mode the same quantale is law-abiding
  CHECK(run({"check-laws", "--quantale", "chain3-weak"}).code == 0);
  CHECK(run({"check-laws", "--quantale", "minplus", "--mode", "full"}).code ==
        0);

  CHECK(run({"check-laws"}).code == 2);
  const CliResult unknown = run({"check-laws", "--rel", "no-such-structure"});
  CHECK(unknown.code == 2);
  CHECK(contains(unknown.err, "built-ins"));
  CHECK(run({"check-laws", "--rel", "words2", "--quantale", "minplus"}).code ==
        2);

  // structure files load through the same JSON codecs the library exposes
  const std::string rel_path = write_tmp(
      "rel.json",
      rel_monoid_to_json(rel_of_psg(segment_monoid(chain_poset(2)))).dump());
  const CliResult from_file = run({"check-laws", "--rel", rel_path});
  CHECK(from_file.code == 0);
  CHECK(contains(from_file.out, "left-unit-exists"));

  const std::string psg_path =
      write_tmp("psg.json", psg_to_json(pairs_monoid(2)).dump());
  CHECK(run({"check-laws", "--psg", psg_path}).code == 0);

  CHECK(run({"check-laws", "--rel", "fusion-chain2", "--quantale", "bool",
             "--embedding"})
            .code == 0);
  CHECK(run({"check-laws", "--itl", "1"}).code == 0);
  CHECK(run({"check-laws", "--itl", "1", "--infinite"}).code == 0);
  CHECK(run({"check-laws", "--duration", "--seed", "7"}).code == 0);
}

TEST_CASE("check-laws JSON reports round-trip into the law model") {
  const CliResult r = run({"--json", "check-laws", "--rel", "one",
                           "--quantale", "bool", "--mode", "unital"});
  CHECK(r.code == 0);
  const LawReport rep = LawReport::from_json(json::parse(r.out));
  CHECK(rep.ok());
  CHECK(rep.find("assoc") != nullptr);
  CHECK(rep.find("unit-left") != nullptr);

  const CliResult f = run({"--json", "check-laws", "--rel", "assoc-counter",
                           "--mode", "quantale"});
  CHECK(f.code == 1);
  const LawReport frep = LawReport::from_json(json::parse(f.out));
  CHECK_FALSE(frep.ok());
  REQUIRE(frep.find("assoc") != nullptr);
  CHECK(frep.find("assoc")->status == LawCheck::Status::fail);
  CHECK_FALSE(frep.find("assoc")->witness.empty());
}

TEST_CASE("eval prints per-interval truth and rejects bad input") {
  const StreamModel m = eval_model();
  const std::string trace = write_tmp("trace.json", trace_to_json(m).dump());

  const CliResult chop =
      run({"eval", "--formula", "p ; r", "--trace", trace, "--lo", "0", "--hi",
           "3"});
  CHECK(chop.code == 0);
  CHECK(chop.out == "[0,3]  true\n");

  // a full sweep covers every interval and matches the library evaluator
  const CliResult sweep =
      run({"--json", "eval", "--formula", "point", "--trace", trace});
  CHECK(sweep.code == 0);
  const json sj = json::parse(sweep.out);
  CHECK(sj["formula"] == "point");
  CHECK(sj["approximate"] == false);
  REQUIRE(sj["results"].size() == 10);
  const Fml point = parse_formula("point");
  for (const auto& row : sj["results"]) {
    const Iv iv{row["lo"].get<int>(), row["hi"].get<int>()};
    CHECK(row["infinite"] == false);
    CHECK(row["value"] == (iv.lo == iv.hi));
    CHECK(row["value"] == eval(point, m, iv));
  }

  const CliResult bad_formula =
      run({"eval", "--formula", "p ;; r", "--trace", trace});
  CHECK(bad_formula.code == 2);
  CHECK(contains(bad_formula.err, "position"));

  const CliResult bad_atom =
      run({"eval", "--formula", "z", "--trace", trace, "--lo", "0", "--hi", "0"});
  CHECK(bad_atom.code == 2);
  CHECK(contains(bad_atom.err, "unresolved atom"));

  CHECK(run({"eval", "--formula", "p", "--trace", trace, "--hi", "2"}).code ==
        2);
  CHECK(run({"eval", "--formula", "p", "--trace", trace, "--lo", "1"}).code ==
        2);
  CHECK(run({"eval", "--formula", "p", "--trace", trace, "--lo", "0", "--hi",
             "9"})
            .code == 2);
  CHECK(run({"eval", "--formula", "p", "--trace", trace, "--lo", "1", "--tail"})
            .code == 2);
  CHECK(run({"eval", "--formula", "p", "--trace", "/no/such/file.json"}).code ==
        2);
}

TEST_CASE("eval handles semi-infinite traces") {
  StreamModel m = eval_model();
  m.infinite_enabled = true;
  m.atoms["p"].inf_from = {2};
  const std::string trace = write_tmp("inf_trace.json", trace_to_json(m).dump());

  const CliResult tail = run({"--json", "eval", "--formula", "p ; p", "--trace",
                              trace, "--lo", "0", "--tail"});
  CHECK(tail.code == 0);
  const json tj = json::parse(tail.out);
  REQUIRE(tj["results"].size() == 1);
  CHECK(tj["results"][0]["infinite"] == true);
  CHECK(tj["results"][0]["value"] ==
        eval(parse_formula("p ; p"), m, {0, Iv::kInfinite}));

  const CliResult sweep = run({"--json", "eval", "--formula", "p", "--trace",
                               trace});
  CHECK(sweep.code == 0);
  CHECK(json::parse(sweep.out)["results"].size() == 14);  // 10 finite + 4 tails
}

TEST_CASE("duration and mean match the library values") {
  const std::string s1 = write_tmp("sig1.json", signal_to_json(step_down()).dump());
  const std::string s2 = write_tmp("sig2.json", signal_to_json(step_up()).dump());

  const CliResult d = run({"duration", "--signal", s1, "--lo", "0", "--hi", "2"});
  CHECK(d.code == 0);
  CHECK(d.out == "duration 1\n");

  // JSON values reuse the library code path, so equality is exact
  const CliResult dj = run({"--json", "duration", "--signal", s1, "--signal2",
                            s2, "--lo", "0", "--hi", "2"});
  CHECK(dj.code == 0);
  const json djv = json::parse(dj.out);
  CHECK(djv["conv_min"].get<double>() ==
        duration_conv_min(step_down(), step_up(), {0.0, 2.0}));
  CHECK(djv["conv_max"].get<double>() ==
        duration_conv_max(step_down(), step_up(), {0.0, 2.0}));

  const CliResult mp = run({"mean", "--signal", s1, "--lo", "1", "--hi", "1"});
  CHECK(mp.code == 0);
  CHECK(mp.out == "mean 0\n");
  const CliResult mj = run({"--json", "mean", "--signal", s1, "--signal2", s2,
                            "--lo", "0", "--hi", "2", "--grid", "0.25"});
  CHECK(mj.code == 0);
  const json mjv = json::parse(mj.out);
  CHECK(mjv["conv_min"].get<double>() ==
        mean_conv(step_down(), step_up(), {0.0, 2.0}, ConvMode::min, 0.25));
  CHECK(mjv["conv_max"].get<double>() ==
        mean_conv(step_down(), step_up(), {0.0, 2.0}, ConvMode::max, 0.25));

  const CliResult csv = run({"duration", "--signal", s1, "--signal2", s2,
                             "--lo", "0", "--hi", "2", "--csv", "--grid",
                             "0.5"});
  CHECK(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,value");
  int rows = 0;
  bool saw_peak = false;
  while (std::getline(lines, line)) {
    ++rows;
    saw_peak = saw_peak || line == "1,2";
  }
  CHECK(rows == 5);  // 0, 0.5, 1, 1.5, 2
  CHECK(saw_peak);

  CHECK(run({"duration", "--signal", s1, "--lo", "0", "--hi", "9"}).code == 2);
  CHECK(run({"duration", "--signal", s1, "--lo", "0", "--hi", "2", "--csv"})
            .code == 2);
  CHECK(run({"mean", "--signal", "/no/such/sig.json", "--lo", "0", "--hi", "1"})
            .code == 2);
  const std::string bad =
      write_tmp("bad_sig.json", "{\"breakpoints\": [0, 1]}");
  CHECK(run({"duration", "--signal", bad, "--lo", "0", "--hi", "1"}).code == 2);
}

TEST_CASE("allen lists relation pairs over segment carriers") {
  const CliResult b = run({"allen", "--chain", "2", "--relation", "b"});
  CHECK(b.code == 0);
  CHECK(contains(b.out, "B [0,2] [0,1]"));
  CHECK(contains(b.out, "B [0,1] [0,0]"));

  const CliResult strict_a =
      run({"allen", "--chain", "2", "--strict", "--relation", "a"});
  CHECK(strict_a.code == 0);
  CHECK(contains(strict_a.out, "A [0,1] [1,2]"));
  CHECK_FALSE(contains(strict_a.out, "[0,0]"));

  const CliResult all = run({"--json", "allen", "--chain", "2"});
  CHECK(all.code == 0);
  const json aj = json::parse(all.out);
  for (const char* rel : {"B", "E", "A", "D", "O", "L"})
    CHECK(aj.contains(rel));
  CHECK(contains(aj["B"].dump(), "[0,1]"));

  CHECK(run({"allen", "--chain", "2", "--relation", "x"}).code == 2);
}

TEST_CASE("help and argument errors use the documented exit codes") {
  const CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "check-laws"));
  CHECK(contains(help.out, "repro"));

  CHECK(run({}).code == 2);                    // a subcommand is required
  CHECK(run({"bogus"}).code == 2);             // unknown subcommand
  CHECK(run({"repro", "--bogus-flag"}).code == 2);

  // global flags are accepted after the subcommand name as well
  const CliResult after = run({"repro", "sd-left-distrib", "--json"});
  CHECK(after.code == 0);
  CHECK(json::parse(after.out)[0]["ok"] == true);
}
