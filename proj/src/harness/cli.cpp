#include "qcalc/harness/cli.hpp"

#include <fstream>
#include <iomanip>

#include "CLI11.hpp"
#include "qcalc/error.hpp"
#include "qcalc/harness/verify.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qfunc.hpp"

namespace qcalc::harness {

namespace {

constexpr int kExitFail = 1, kExitUsage = 2, kExitEval = 3;

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw QError(ErrorCode::ParseError, "expected name=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

int parse_int(const std::string& s) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw QError(ErrorCode::ParseError, "bad integer '" + s + "'");
  return v;
}

struct CaseArgs {
  std::string id;
  std::string backend;
  int order = -1;
  int digits = 50;
  double tolerance = -1;
  std::vector<std::string> params, ints;
  int k = -1, m = -1, n = -1;
  bool no_constraints = false;

  void add(CLI::App* app) {
    app->add_option("--id", id, "identity id")->required();
    app->add_option("--backend", backend, "fps or numeric");
    app->add_option("--order", order, "total truncation order (exact backend)");
    app->add_option("--digits", digits, "working precision in decimal digits (numeric backend)");
    app->add_option("--tolerance", tolerance, "relative tolerance (numeric backend)");
    app->add_option("--param", params, "parameter binding name=p/q or name=re,im")->take_all();
    app->add_option("--int", ints, "index binding name=value")->take_all();
    app->add_option("--k", k, "number of variable pairs");
    app->add_option("--m", m, "index m");
    app->add_option("--n", n, "index n");
  }

  std::map<std::string, int> int_map() const {
    std::map<std::string, int> out;
    for (const auto& s : ints) {
      auto [name, v] = split_assignment(s);
      out[name] = parse_int(v);
    }
    if (k >= 0) out["k"] = k;
    if (m >= 0) out["m"] = m;
    if (n >= 0) out["n"] = n;
    return out;
  }

  std::map<std::string, Value> param_map() const {
    std::map<std::string, Value> out;
    for (const auto& s : params) {
      auto [name, v] = split_assignment(s);
      out[name] = Value::parse(v);
    }
    return out;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw QError(ErrorCode::PreconditionViolated, "cannot write " + path);
  f << text;
}

int exit_for(const std::vector<VerificationReport>& reports) {
  bool fail = false, error = false;
  for (const auto& r : reports) {
    fail |= r.outcome == Outcome::Fail;
    error |= r.outcome == Outcome::Error;
  }
  return fail ? kExitFail : error ? kExitEval : 0;
}

std::string summary_line(const VerificationReport& r) {
  std::ostringstream os;
  os << outcome_name(r.outcome) << ' ' << r.echo.id << " [" << backend_name(r.echo.backend) << "] ";
  if (r.outcome == Outcome::Error)
    os << r.error;
  else if (r.echo.backend == Backend::ExactFps)
    os << "mismatches=" << r.mismatches << " compared=" << r.compared;
  else
    os << std::scientific << std::setprecision(3) << "max_rel_error=" << r.max_rel_error
       << " bound=" << r.combined_bound << " tol=" << r.tolerance;
  return os.str();
}

int cmd_list(std::ostream& out) {
  for (const auto& s : registry()) {
    out << s.id << "  [" << (s.exact ? "fps" : "") << (s.exact && s.numeric ? "," : "")
        << (s.numeric ? "numeric" : "") << "]  ";
    for (size_t i = 0; i < s.anchors.size(); ++i) out << (i ? "; " : "") << s.anchors[i];
    out << '\n';
  }
  return 0;
}

int cmd_table(const std::string& poly, int nmax, const std::vector<std::string>& params, std::ostream& out) {
  std::map<std::string, Rational> p{{"q", Rational(1, 2)}, {"alpha", Rational(0)}, {"beta", Rational(0)}};
  for (const auto& s : params) {
    auto [name, v] = split_assignment(s);
    if (!p.count(name)) throw QError(ErrorCode::ParseError, "table accepts q, alpha, beta; got " + name);
    p[name] = Rational::parse(v);
  }
  Rational alpha = p["alpha"], beta = p["beta"];
  if (poly == "rs") alpha = beta = Rational(0);
  else if (poly == "hahn") beta = Rational(0);
  else if (poly == "ultraspherical") alpha = beta;
  else if (poly != "phi") throw QError(ErrorCode::ParseError, "unknown polynomial family '" + poly + "'");
  const Rational& q = p["q"];
  out << "# " << poly << " q=" << q.str() << " alpha=" << alpha.str() << " beta=" << beta.str() << '\n';
  out << "# row n: coefficients of x^k y^(n-k) for k = 0..n\n";
  for (int n = 0; n <= nmax; ++n) {
    std::vector<Rational> row = qbinomial_row(n, q);
    out << n << ':';
    for (int k = 0; k <= n; ++k)
      out << ' ' << (row[k] * qpoch_finite(alpha, q, k) * qpoch_finite(beta, q, n - k)).str();
    out << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-series identity verification"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the registered identities");

  auto* run = app.add_subcommand("run", "verify one case");
  CaseArgs run_args;
  run_args.add(run);
  std::string out_path;
  bool no_timing = false;
  run->add_option("--out", out_path, "report file (JSON)");
  run->add_flag("--no-timing", no_timing, "omit wall_time_ms");
  run->add_flag("--no-constraints", run_args.no_constraints, "skip hypothesis checks");

  auto* sw = app.add_subcommand("sweep", "verify seeded random cases");
  CaseArgs sw_args;
  sw_args.add(sw);
  int trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::vector<std::string> bounds;
  std::string csv_path;
  sw->add_option("--trials", trials, "number of trials")->required();
  sw->add_option("--seed", seed, "64-bit seed")->required();
  sw->add_option("--bound", bounds, "modulus bound name=value")->take_all();
  sw->add_option("--workers", workers, "worker threads (0: all cores)");
  sw->add_option("--out", out_path, "report array (JSON)");
  sw->add_option("--csv", csv_path, "summary CSV");
  sw->add_flag("--no-timing", no_timing, "omit wall_time_ms");

  auto* rerun = app.add_subcommand("rerun", "re-verify the case echoed in a report");
  std::string report_path;
  rerun->add_option("report", report_path, "report file")->required();
  rerun->add_flag("--no-timing", no_timing, "omit wall_time_ms");

  auto* table = app.add_subcommand("table", "print Phi-family coefficient tables");
  std::string poly = "phi";
  int nmax = 4;
  std::vector<std::string> table_params;
  table->add_option("--poly", poly, "phi, rs, hahn or ultraspherical");
  table->add_option("--n", nmax, "largest degree");
  table->add_option("--param,--params", table_params, "q=, alpha=, beta=")->take_all()->delimiter(',');

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*list) return cmd_list(out);
    if (*table) {
      if (nmax < 0) throw QError(ErrorCode::ParseError, "--n must be nonnegative");
      return cmd_table(poly, nmax, table_params, out);
    }
    if (*run || *rerun) {
      IdentityCase c;
      if (*run) {
        c.id = run_args.id;
        const IdentitySpec& spec = find_identity(c.id);
        c.backend = run_args.backend.empty() ? (spec.exact ? Backend::ExactFps : Backend::Numeric)
                                             : parse_backend(run_args.backend);
        c.order = run_args.order > 0 ? run_args.order : spec.default_order;
        c.digits = run_args.digits;
        if (run_args.tolerance > 0) c.tolerance = run_args.tolerance;
        c.binding.params = run_args.param_map();
        c.binding.ints = run_args.int_map();
        c.enforce_constraints = !run_args.no_constraints;
      } else {
        std::ifstream f(report_path);
        if (!f) throw QError(ErrorCode::ParseError, "cannot read " + report_path);
        c = case_from_json(nlohmann::json::parse(f));
      }
      VerificationReport r = verify(c);
      out << summary_line(r) << '\n';
      std::string json = to_json(r, !no_timing).dump(2) + "\n";
      if (!out_path.empty()) write_text(out_path, json);
      else out << json;
      return exit_for({r});
    }
    if (*sw) {
      SweepOptions o;
      o.id = sw_args.id;
      find_identity(o.id);
      if (!sw_args.backend.empty()) o.backend = parse_backend(sw_args.backend);
      if (sw_args.order > 0) o.order = sw_args.order;
      o.digits = sw_args.digits;
      if (sw_args.tolerance > 0) o.tolerance = sw_args.tolerance;
      o.trials = trials;
      o.seed = seed;
      o.workers = workers;
      o.fixed_ints = sw_args.int_map();
      o.fixed_params = sw_args.param_map();
      for (const auto& s : bounds) {
        auto [name, v] = split_assignment(s);
        o.bounds[name] = Rational::parse(v).to_double();
      }
      std::vector<VerificationReport> reports = sweep(o);
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(to_json(r, !no_timing));
      std::string json = arr.dump(2) + "\n";
      if (!out_path.empty()) write_text(out_path, json);
      else out << json;
      if (!csv_path.empty()) write_text(csv_path, sweep_csv(reports));
      size_t pass = 0;
      for (const auto& r : reports) pass += r.outcome == Outcome::Pass;
      (out_path.empty() ? err : out) << o.id << ": " << pass << "/" << reports.size() << " PASS\n";
      return exit_for(reports);
    }
  } catch (const QError& e) {
    err << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::UnknownIdentity:
      case ErrorCode::ConstraintViolated:
      case ErrorCode::ParseError:
      case ErrorCode::EmptyDomain:
      case ErrorCode::InvalidContext:
        return kExitUsage;
      default:
        return kExitEval;
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qcalc::harness
