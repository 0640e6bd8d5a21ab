// Acceptance driver: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything holds).
//
// Usage: acceptance <golden-dir>

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcalc/expand.hpp"
#include "qcalc/harness/cli.hpp"
#include "qcalc/harness/verify.hpp"

using namespace qcalc;
using namespace qcalc::harness;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct SweepSummary {
  int total = 0;
  int pass = 0;
  double worst_rel = 0.0;
  double worst_bound = 0.0;
  double worst_tail = 0.0;
  long mismatches = 0;
};

SweepSummary run_sweep(const std::string& id, int trials, std::optional<Backend> backend,
                       std::map<std::string, int> ints, Verdict& v) {
  SweepOptions o;
  o.id = id;
  o.trials = trials;
  o.seed = kSeed;
  o.backend = backend;
  o.fixed_ints = std::move(ints);
  SweepSummary s;
  for (const auto& r : sweep(o)) {
    ++s.total;
    s.pass += r.outcome == Outcome::Pass;
    s.mismatches += r.mismatches;
    s.worst_rel = std::max(s.worst_rel, r.max_rel_error);
    s.worst_bound = std::max(s.worst_bound, r.combined_bound);
    for (const auto& [name, t] : r.tail_bounds) s.worst_tail = std::max(s.worst_tail, t);
    if (r.outcome != Outcome::Pass) {
      std::ostringstream msg;
      msg << id << " trial " << r.echo.trial << " " << outcome_name(r.outcome) << (r.error.empty() ? "" : " ") << r.error;
      v.require(false, msg.str());
    }
  }
  return s;
}

std::string describe(const std::string& id, const std::map<std::string, int>& ints) {
  std::string s = id;
  for (const auto& [k, n] : ints) s += " " + k + "=" + std::to_string(n);
  return s;
}

// 1. exact generating functions, 25 tuples each, order 12
Verdict criterion1() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::map<std::string, int>>> runs{{"genfun-basic", {}}};
  for (int m = 0; m <= 3; ++m) runs.push_back({"genfun-shifted", {{"m", m}}});
  runs.push_back({"genfun-saalschutz", {}});
  int total = 0;
  for (const auto& [id, ints] : runs) {
    auto s = run_sweep(id, 25, Backend::ExactFps, ints, v);
    v.require(s.total == 25 && s.pass == 25 && s.mismatches == 0, describe(id, ints) + " not all PASS");
    total += s.pass;
  }
  double secs = seconds_since(t0);
  v.require(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << total << "/150 PASS, " << secs << " s";
  if (v.pass) v.detail = d.str();
  return v;
}

// 2. q-PDE for every n <= 12 with 10 triples each
Verdict criterion2() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  int total = 0;
  for (int n = 0; n <= 12; ++n) {
    auto s = run_sweep("pde-phi", 10, Backend::ExactFps, {{"n", n}}, v);
    v.require(s.pass == 10, "pde-phi n=" + std::to_string(n));
    total += s.pass;
  }
  double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  if (v.pass) v.detail = std::to_string(total) + "/130 PASS, " + std::to_string(secs) + " s";
  return v;
}

// 3. expansion round trip on the two-product generating function
Verdict criterion3() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  const int order = 10;
  struct Point {
    Rational q, a, b, t;
  };
  std::vector<Point> points{{Rational(3, 10), Rational(1, 4), Rational(1, 6), Rational(2, 3)},
                            {Rational(-2, 7), Rational(3, 5), Rational(-1, 2), Rational(5, 4)},
                            {Rational(5, 9), Rational(-7, 3), Rational(2, 11), Rational(-1, 6)}};
  int checked = 0;
  for (const auto& p : points) {
    auto vars = make_varset({"x", "y"});
    auto f = euler_pochhammer_series(p.a * p.t, "x", p.q, vars, order) *
             euler_pochhammer_series(p.b * p.t, "y", p.q, vars, order) *
             euler_pochhammer_inverse_series(p.t, unit_index(*vars, "x"), p.q, vars, order) *
             euler_pochhammer_inverse_series(p.t, unit_index(*vars, "y"), p.q, vars, order);
    std::vector<PdePair> pairs{{"x", "y", p.a, p.b}};
    auto res = extract_lambdas(f, pairs, p.q);
    for (int n = 0; n <= order; ++n) {
      auto it = res.lambdas.find({n});
      Rational expected = oracle::power(p.t, n) / oracle::qpoch(p.q, p.q, n);
      v.require(it != res.lambdas.end() && it->second == expected, "lambda_" + std::to_string(n));
      ++checked;
    }
    v.require(res.lambdas.size() == static_cast<size_t>(order + 1), "extra coefficients");
    v.require(reconstruct(res, pairs, p.q, vars, order) == f, "reconstruction differs");

    auto g = f + TruncatedSeries::monomial(vars, order, {1, 2}, Rational(1, 97));
    bool flipped = false;
    try {
      extract_lambdas(g, pairs, p.q);
    } catch (const QError& e) {
      flipped = e.code() == ErrorCode::PdeNotSatisfied;
    }
    v.require(flipped, "perturbation not rejected");
  }
  for (int k = 1; k <= 2; ++k) {
    auto s = run_sweep("expansion-roundtrip", 3, Backend::ExactFps, {{"k", k}}, v);
    v.require(s.pass == 3, "expansion-roundtrip k=" + std::to_string(k));
  }
  double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  if (v.pass) v.detail = std::to_string(checked) + " coefficients exact, perturbations rejected, " + std::to_string(secs) + " s";
  return v;
}

// 4. q-Lauricella transformations at 50 digits
Verdict criterion4() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0, worst_cert = 0.0;
  for (auto [id, k] : {std::pair{"andrews-lauricella", 2}, {"andrews-lauricella", 3}, {"liu-lauricella", 2}}) {
    auto s = run_sweep(id, 10, Backend::Numeric, {{"k", k}}, v);
    std::string tag = describe(id, {{"k", k}});
    v.require(s.pass == 10, tag + " not all PASS");
    v.require(s.worst_rel <= 1e-30, tag + " rel error");
    v.require(s.worst_tail <= 1e-35 && s.worst_bound <= 1e-35, tag + " certified bound");
    worst = std::max(worst, s.worst_rel);
    worst_cert = std::max({worst_cert, s.worst_tail, s.worst_bound});
  }
  double secs = seconds_since(t0);
  v.require(secs < 120.0, "runtime " + std::to_string(secs) + " s");
  if (v.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "30/30 PASS, max rel err %.2e, max bound %.2e, %.1f s", worst, worst_cert, secs);
    v.detail = buf;
  }
  return v;
}

// 5. q-integral suite, 5 bindings per configuration
Verdict criterion5() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::map<std::string, int>>> runs{
      {"alsalam-verma", {}}, {"andrews-askey", {}}, {"liu-qint", {}}};
  for (int n : {0, 3, 8}) runs.push_back({"wang-moment", {{"n", n}}});
  for (int k : {0, 3, 8}) {
    runs.push_back({"phi-qint-rep", {{"k", k}}});
    runs.push_back({"rs-qint-rep", {{"k", k}}});
  }
  for (int k : {1, 2}) runs.push_back({"multilinear-qint", {{"k", k}}});
  for (int k : {1, 2})
    for (int m : {0, 2, 4}) runs.push_back({"multilinear-qint-m", {{"k", k}, {"m", m}}});
  int total = 0, pass = 0;
  double worst = 0.0;
  for (const auto& [id, ints] : runs) {
    auto s = run_sweep(id, 5, Backend::Numeric, ints, v);
    v.require(s.pass == 5 && s.worst_rel <= 1e-25, describe(id, ints));
    total += s.total;
    pass += s.pass;
    worst = std::max(worst, s.worst_rel);
  }
  double secs = seconds_since(t0);
  v.require(secs < 300.0, "runtime " + std::to_string(secs) + " s");
  if (v.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d PASS, max rel err %.2e, %.1f s", pass, total, worst, secs);
    v.detail = buf;
  }
  return v;
}

// 6. exact coefficients summed at a point against both numeric closed forms
Verdict criterion6() {
  Verdict v;
  const IdentitySpec& spec = find_identity("genfun-basic");
  SweepOptions o;
  o.id = "genfun-basic";
  o.seed = kSeed;
  o.backend = Backend::ExactFps;
  const Rational t(1, 16);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    IdentityCase ec = normalize_case(draw_case(o, trial));
    ec.order = 40;
    auto parts = spec.build_exact(ec);
    IdentityCase nc = ec;
    nc.backend = Backend::Numeric;
    nc.binding.params["t"] = Value{t, Rational(0)};
    nc = normalize_case(nc);
    EvalContext ctx = numeric_context(nc);
    NumericSides sides = spec.build_numeric(nc, ctx);
    for (const auto& part : parts) {
      std::vector<Rational> pt{t};
      for (const TruncatedSeries* s : {&part.lhs, &part.rhs}) {
        HPComplex exact_value = ctx.lift(s->evaluate(pt));
        for (const HPComplex* num : {&sides.lhs.value, &sides.rhs.value}) {
          double rel = (exact_value - *num).magnitude() / num->magnitude();
          worst = std::max(worst, rel);
        }
      }
    }
  }
  v.require(worst <= 1e-30, "max rel difference " + std::to_string(worst));
  if (v.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "5 points, t = 1/16, order 40, max rel diff %.2e", worst);
    v.detail = buf;
  }
  return v;
}

struct GoldenEntry {
  std::string file;
  std::vector<std::string> args;
};

std::vector<GoldenEntry> read_manifest(const std::string& dir) {
  std::ifstream in(dir + "/manifest.txt");
  std::vector<GoldenEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    GoldenEntry e;
    ls >> e.file;
    for (std::string a; ls >> a;) e.args.push_back(a);
    out.push_back(std::move(e));
  }
  return out;
}

std::string cli_output(const std::vector<std::string>& args, int& rc) {
  std::ostringstream out, err;
  rc = run_cli(args, out, err);
  return out.str();
}

// 7. repeated sweeps are byte-identical and match the committed reports
Verdict criterion7(const std::string& golden_dir) {
  Verdict v;
  int rc1 = 0, rc2 = 0;
  std::vector<std::string> args{"sweep", "--id", "genfun-saalschutz", "--trials", "25", "--seed", "42", "--no-timing"};
  v.require(cli_output(args, rc1) == cli_output(args, rc2) && rc1 == 0 && rc2 == 0, "repeat sweep differs");
  std::vector<std::string> nargs{"sweep", "--id", "liu-lauricella", "--k", "2", "--trials", "3", "--seed", "42", "--no-timing"};
  v.require(cli_output(nargs, rc1) == cli_output(nargs, rc2), "repeat numeric sweep differs");

  auto manifest = read_manifest(golden_dir);
  v.require(!manifest.empty(), "no golden manifest");
  int matched = 0;
  for (const auto& e : manifest) {
    std::ifstream in(golden_dir + "/" + e.file, std::ios::binary);
    if (!in) {
      v.require(false, e.file + " missing");
      continue;
    }
    std::stringstream golden;
    golden << in.rdbuf();
    int rc = 0;
    bool same = cli_output(e.args, rc) == golden.str();
    v.require(same, e.file + " differs");
    matched += same;
  }
  if (v.pass) v.detail = "repeat runs identical, " + std::to_string(matched) + " golden reports match";
  return v;
}

// 8. brute-force oracles against the optimized routines
Verdict criterion8() {
  Verdict v;
  doctest::Context ctx;
  ctx.setOption("test-suite", "oracles");
  ctx.setOption("no-version", true);
  ctx.setOption("minimal", true);
  int rc = ctx.run();
  v.require(rc == 0, "oracle suite failed");
  if (v.pass) v.detail = "oracle suite passed";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::string golden_dir = argc > 1 ? argv[1] : "tests/golden";
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"exact generating functions", criterion1},
      {"q-PDE for Phi_n", criterion2},
      {"expansion round trip", criterion3},
      {"q-Lauricella transformations", criterion4},
      {"q-integral suite", criterion5},
      {"cross-backend agreement", criterion6},
      {"determinism and golden reports", [&] { return criterion7(golden_dir); }},
      {"brute-force oracles", criterion8},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << v.detail
              << std::endl;
  }
  return failed;
}
