#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcalc/context.hpp"
#include "qcalc/fps.hpp"
#include "qcalc/hpcomplex.hpp"
#include "qcalc/error.hpp"
#include "qcalc/rational.hpp"

namespace qcalc::harness {

enum class Backend { ExactFps, Numeric };

std::string backend_name(Backend b);
Backend parse_backend(const std::string& s);

/// Exact complex rational; parameters are real unless an imaginary part is given
/// ("re,im" text form).
struct Value {
  Rational re;
  Rational im;

  bool is_real() const { return im.is_zero(); }
  std::string str() const;
  double magnitude() const;
  static Value parse(const std::string& text);
  friend bool operator==(const Value&, const Value&) = default;
};

struct Binding {
  std::map<std::string, Value> params;
  std::map<std::string, int> ints;
};

struct IdentityCase {
  std::string id;
  Binding binding;
  Backend backend = Backend::ExactFps;
  int order = 12;    // exact backend
  int digits = 50;   // numeric backend
  std::optional<double> tolerance;  // numeric; defaults per identity
  bool enforce_constraints = true;
  std::uint64_t seed = 0;
  int trial = -1;    // set by sweeps
};

/// One compared pair of exact series.
struct ExactPart {
  std::string label;
  TruncatedSeries lhs;
  TruncatedSeries rhs;
};

struct NumericSides {
  Bounded<HPComplex> lhs;
  Bounded<HPComplex> rhs;
  std::map<std::string, double> tail_bounds;
  std::map<std::string, int> truncation;
  std::vector<std::string> notes;
};

struct ParamDecl {
  std::string name;
  double sample_max = 0.7;  // modulus bound for sampling
  double sample_min = 0.0;
  bool nonzero = false;
  bool derived = false;     // computed from the others, never sampled
  bool numeric_only = false; // formal variable under the exact backend
};

struct IntDecl {
  std::string name;
  int lo = 0;
  int hi = 0;
  int def = 0;
};

using Violations = std::vector<std::string>;

struct IdentitySpec {
  std::string id;
  std::string description;
  std::vector<std::string> anchors;
  std::vector<IntDecl> ints;
  /// Real parameters, given the integer indices (k decides the count).
  std::function<std::vector<ParamDecl>(const Binding&)> params;
  bool exact = false;
  bool numeric = false;
  bool integral = false;  // q-integral identity: looser default tolerance
  int default_order = 12;
  std::function<void(Binding&)> derive;
  /// Hypotheses of the identity itself; checked on every case.
  std::function<Violations(const Binding&)> hypothesis;
  /// Extra restrictions of the sampled region (sweeps only).
  std::function<Violations(const Binding&)> sampling;
  std::function<std::vector<ExactPart>(const IdentityCase&)> build_exact;
  std::function<NumericSides(const IdentityCase&, const EvalContext&)> build_numeric;
};

const std::vector<IdentitySpec>& registry();
/// Throws UnknownIdentity.
const IdentitySpec& find_identity(const std::string& id);
/// The ids every complete registry must contain.
const std::vector<std::string>& expected_ids();

// Helpers shared by the builders.
Rational real_param(const Binding& b, const std::string& name);
HPComplex hp_param(const Binding& b, const std::string& name, const EvalContext& ctx);
int int_param(const Binding& b, const std::string& name);
/// Indexed parameter name, e.g. indexed("alpha", 2) == "alpha2".
std::string indexed(const std::string& base, int j);

/// Tolerance used when the case does not specify one.
double default_tolerance(const IdentitySpec& spec, int digits);
/// Context used by the numeric backend for a case.
EvalContext numeric_context(const IdentityCase& c);

}  // namespace qcalc::harness
