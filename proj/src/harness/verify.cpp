#include "qcalc/harness/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "qcalc/error.hpp"

namespace qcalc::harness {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Error: return "ERROR";
  }
  return "ERROR";
}

IdentityCase normalize_case(const IdentityCase& in) {
  const IdentitySpec& spec = find_identity(in.id);
  IdentityCase c = in;
  if (c.backend == Backend::ExactFps && !spec.exact)
    throw QError(ErrorCode::ConstraintViolated, c.id + " has no exact backend");
  if (c.backend == Backend::Numeric && !spec.numeric)
    throw QError(ErrorCode::ConstraintViolated, c.id + " has no numeric backend");
  for (const auto& d : spec.ints) {
    auto it = c.binding.ints.find(d.name);
    if (it == c.binding.ints.end()) {
      c.binding.ints[d.name] = d.def;
    } else if (it->second < d.lo || it->second > d.hi) {
      throw QError(ErrorCode::ConstraintViolated, d.name + " must lie in [" + std::to_string(d.lo) + ", " +
                                                      std::to_string(d.hi) + "]");
    }
  }
  for (const auto& [name, v] : c.binding.ints) {
    if (std::none_of(spec.ints.begin(), spec.ints.end(), [&](const IntDecl& d) { return d.name == name; }))
      throw QError(ErrorCode::ConstraintViolated, "unknown index " + name + " for " + c.id);
  }
  if (spec.derive) spec.derive(c.binding);
  std::vector<ParamDecl> decls = spec.params(c.binding);
  for (const auto& d : decls) {
    if (d.numeric_only && c.backend == Backend::ExactFps) {
      c.binding.params.erase(d.name);
      continue;
    }
    if (!c.binding.params.count(d.name)) throw QError(ErrorCode::ConstraintViolated, "missing parameter " + d.name);
  }
  for (const auto& [name, v] : c.binding.params)
    if (std::none_of(decls.begin(), decls.end(), [&](const ParamDecl& d) { return d.name == name; }))
      throw QError(ErrorCode::ConstraintViolated, "unknown parameter " + name + " for " + c.id);
  if (c.backend == Backend::ExactFps) {
    if (c.order <= 0) c.order = spec.default_order;
    for (const auto& [name, v] : c.binding.params)
      if (!v.is_real()) throw QError(ErrorCode::ConstraintViolated, name + " must be real for the exact backend");
  } else if (c.digits < EvalContext::kMinDigits || c.digits > EvalContext::kMaxDigits) {
    throw QError(ErrorCode::ConstraintViolated, "digits outside the supported range");
  }
  if (c.enforce_constraints && spec.hypothesis) {
    Violations v = spec.hypothesis(c.binding);
    if (!v.empty()) {
      std::string msg;
      for (const auto& s : v) msg += (msg.empty() ? "" : "; ") + s;
      throw QError(ErrorCode::ConstraintViolated, msg);
    }
  }
  return c;
}

namespace {

void compare_exact(const std::vector<ExactPart>& parts, VerificationReport& r) {
  for (const auto& p : parts) {
    TruncatedSeries diff = p.lhs - p.rhs;
    std::vector<SeriesIndex> keys;
    const TruncatedSeries lhs = p.lhs.truncated(diff.order()), rhs = p.rhs.truncated(diff.order());
    for (const auto& [idx, v] : lhs.terms()) keys.push_back(idx);
    for (const auto& [idx, v] : rhs.terms()) keys.push_back(idx);
    std::sort(keys.begin(), keys.end(), GradedLexLess{});
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    r.compared += static_cast<long>(keys.size());
    for (const auto& [idx, v] : diff.terms()) {
      ++r.mismatches;
      if (!r.first_mismatch)
        r.first_mismatch = Mismatch{p.label, idx, p.lhs.coefficient(idx).str(), p.rhs.coefficient(idx).str()};
    }
    r.truncation[p.label + "_order"] = diff.order();
  }
  r.outcome = r.mismatches == 0 ? Outcome::Pass : Outcome::Fail;
}

void compare_numeric(const NumericSides& s, const IdentityCase& c, const IdentitySpec& spec,
                     VerificationReport& r) {
  const double floor_scale = std::pow(10.0, -c.digits);
  const double scale = std::max({s.lhs.value.magnitude(), s.rhs.value.magnitude(), floor_scale});
  HPComplex diff = s.lhs.value - s.rhs.value;
  r.max_rel_error = diff.magnitude() / scale;
  r.combined_bound = (s.lhs.abs_error + s.rhs.abs_error) / scale;
  r.tolerance = c.tolerance.value_or(default_tolerance(spec, c.digits));
  r.lhs_value = s.lhs.value.str(30);
  r.rhs_value = s.rhs.value.str(30);
  r.tail_bounds = s.tail_bounds;
  for (const auto& [k, v] : s.truncation) r.truncation[k] = v;
  r.notes = s.notes;
  const bool ok = r.max_rel_error <= r.tolerance && r.combined_bound <= r.tolerance;
  r.outcome = ok ? Outcome::Pass : Outcome::Fail;
}

}  // namespace

VerificationReport verify(const IdentityCase& input) {
  IdentityCase c = normalize_case(input);
  const IdentitySpec& spec = find_identity(c.id);
  VerificationReport r;
  r.echo = c;
  r.anchors = spec.anchors;
  auto start = std::chrono::steady_clock::now();
  try {
    if (c.backend == Backend::ExactFps) {
      compare_exact(spec.build_exact(c), r);
    } else {
      EvalContext ctx = numeric_context(c);
      compare_numeric(spec.build_numeric(c, ctx), c, spec, r);
    }
  } catch (const QError& e) {
    r.outcome = Outcome::Error;
    r.error = e.what();
  }
  r.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// uniform in [0, n) by rejection; std distributions differ across libraries
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return v % n;
}

Rational draw_rational(std::mt19937_64& rng, const ParamDecl& d, double max) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const long den = 1 + static_cast<long>(bounded(rng, 64));
    const long span = static_cast<long>(std::floor(max * den));
    const long num = static_cast<long>(bounded(rng, 2 * span + 1)) - span;
    const double mag = std::fabs(static_cast<double>(num) / den);
    if (d.nonzero && num == 0) continue;
    if (mag < d.sample_min) continue;
    return Rational(num, den);
  }
  throw QError(ErrorCode::EmptyDomain, "no rational in the sampling region of " + d.name);
}

}  // namespace

IdentityCase draw_case(const SweepOptions& opts, int trial) {
  const IdentitySpec& spec = find_identity(opts.id);
  std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1)));
  IdentityCase c;
  c.id = opts.id;
  c.backend = opts.backend.value_or(spec.exact ? Backend::ExactFps : Backend::Numeric);
  c.order = opts.order.value_or(spec.default_order);
  c.digits = opts.digits;
  c.tolerance = opts.tolerance;
  c.seed = opts.seed;
  c.trial = trial;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Binding b;
    for (const auto& d : spec.ints) {
      auto it = opts.fixed_ints.find(d.name);
      b.ints[d.name] = it != opts.fixed_ints.end() ? it->second
                                                  : d.lo + static_cast<int>(bounded(rng, d.hi - d.lo + 1));
    }
    for (const auto& d : spec.params(b)) {
      if (d.derived || (d.numeric_only && c.backend == Backend::ExactFps)) continue;
      auto fixed = opts.fixed_params.find(d.name);
      if (fixed != opts.fixed_params.end()) {
        b.params[d.name] = fixed->second;
        continue;
      }
      auto bound = opts.bounds.find(d.name);
      const double max = bound != opts.bounds.end() ? bound->second : d.sample_max;
      if (max < d.sample_min || max <= 0.0)
        throw QError(ErrorCode::EmptyDomain, "empty sampling interval for " + d.name);
      b.params[d.name] = Value{draw_rational(rng, d, max), Rational(0)};
    }
    try {
      if (spec.derive) spec.derive(b);
      Violations v = spec.hypothesis ? spec.hypothesis(b) : Violations{};
      if (v.empty() && spec.sampling) v = spec.sampling(b);
      if (!v.empty()) continue;
    } catch (const QError& e) {
      if (e.code() == ErrorCode::ConstraintViolated) continue;
      throw;
    }
    c.binding = b;
    return c;
  }
  throw QError(ErrorCode::EmptyDomain, "constraints rejected every sampled binding for " + opts.id);
}

std::vector<VerificationReport> sweep(const SweepOptions& opts) {
  if (opts.trials < 1) throw QError(ErrorCode::EmptyDomain, "a sweep needs at least one trial");
  find_identity(opts.id);
  std::vector<IdentityCase> cases;
  for (int t = 0; t < opts.trials; ++t) cases.push_back(draw_case(opts, t));
  std::vector<VerificationReport> out(cases.size());
  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cases.size()));
  std::atomic<size_t> next{0};
  std::vector<std::string> failures(cases.size());
  auto work = [&] {
    for (size_t i; (i = next.fetch_add(1)) < cases.size();) {
      try {
        out[i] = verify(cases[i]);
      } catch (const QError& e) {
        out[i].echo = cases[i];
        out[i].outcome = Outcome::Error;
        out[i].error = e.what();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json case_to_json(const IdentityCase& c) {
  nlohmann::json params = nlohmann::json::object(), ints = nlohmann::json::object();
  for (const auto& [k, v] : c.binding.params) params[k] = v.str();
  for (const auto& [k, v] : c.binding.ints) ints[k] = v;
  nlohmann::json b = {{"params", params}, {"ints", ints}};
  if (c.backend == Backend::ExactFps)
    b["order"] = c.order;
  else
    b["digits"] = c.digits;
  if (c.tolerance) b["tolerance"] = *c.tolerance;
  if (!c.enforce_constraints) b["enforce_constraints"] = false;
  return b;
}

IdentityCase case_from_json(const nlohmann::json& j) {
  IdentityCase c;
  c.id = j.at("identity_id").get<std::string>();
  c.backend = parse_backend(j.at("backend").get<std::string>());
  const auto& b = j.at("binding");
  for (const auto& [k, v] : b.at("params").items()) c.binding.params[k] = Value::parse(v.get<std::string>());
  for (const auto& [k, v] : b.at("ints").items()) c.binding.ints[k] = v.get<int>();
  if (b.contains("order")) c.order = b.at("order").get<int>();
  if (b.contains("digits")) c.digits = b.at("digits").get<int>();
  if (b.contains("tolerance")) c.tolerance = b.at("tolerance").get<double>();
  if (b.contains("enforce_constraints")) c.enforce_constraints = b.at("enforce_constraints").get<bool>();
  if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("trial")) c.trial = j.at("trial").get<int>();
  return c;
}

nlohmann::json to_json(const VerificationReport& r, bool timing) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["identity_id"] = r.echo.id;
  j["anchors"] = r.anchors;
  j["binding"] = case_to_json(r.echo);
  j["backend"] = backend_name(r.echo.backend);
  j["outcome"] = outcome_name(r.outcome);
  if (!r.error.empty()) j["error"] = r.error;
  nlohmann::json metric;
  if (r.echo.backend == Backend::ExactFps) {
    metric["mismatches"] = r.mismatches;
    metric["compared"] = r.compared;
    if (r.first_mismatch) {
      metric["first_mismatch"] = {{"part", r.first_mismatch->part},
                                  {"index", r.first_mismatch->index},
                                  {"lhs", r.first_mismatch->lhs},
                                  {"rhs", r.first_mismatch->rhs}};
    } else {
      metric["first_mismatch"] = nullptr;
    }
  } else {
    metric["max_rel_error"] = r.max_rel_error;
    metric["tolerance"] = r.tolerance;
    metric["combined_bound"] = r.combined_bound;
    metric["lhs"] = r.lhs_value;
    metric["rhs"] = r.rhs_value;
  }
  j["metric"] = metric;
  j["tail_bounds"] = r.tail_bounds;
  j["truncation"] = r.truncation;
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["seed"] = r.echo.seed;
  if (r.echo.trial >= 0) j["trial"] = r.echo.trial;
  j["version"] = kVersion;
  if (timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

std::string sweep_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "trial,outcome,metric\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << i << ',' << outcome_name(r.outcome) << ',';
    if (r.outcome == Outcome::Error) {
      os << "error";
    } else if (r.echo.backend == Backend::ExactFps) {
      os << "mismatches=" << r.mismatches;
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "max_rel_error=%.3e", r.max_rel_error);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace qcalc::harness
