#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcalc/harness/identity.hpp"

namespace qcalc::harness {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Outcome { Pass, Fail, Error };
std::string outcome_name(Outcome o);

struct Mismatch {
  std::string part;
  std::vector<int> index;
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  IdentityCase echo;
  std::vector<std::string> anchors;
  Outcome outcome = Outcome::Error;
  std::string error;
  // exact backend
  long mismatches = 0;
  long compared = 0;
  std::optional<Mismatch> first_mismatch;
  // numeric backend
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  double combined_bound = 0.0;
  std::string lhs_value, rhs_value;
  std::map<std::string, double> tail_bounds;
  std::map<std::string, int> truncation;
  std::vector<std::string> notes;
  double wall_time_ms = 0.0;
};

/// Fills defaults (order, indices, derived parameters) and checks the case:
/// UnknownIdentity, ConstraintViolated (including unsupported backends).
IdentityCase normalize_case(const IdentityCase& c);

/// Builds both sides with the case's backend and compares them. Evaluation
/// errors become outcome ERROR; invalid cases throw.
VerificationReport verify(const IdentityCase& c);

struct SweepOptions {
  std::string id;
  int trials = 1;
  std::uint64_t seed = 0;
  std::optional<Backend> backend;
  std::optional<int> order;
  int digits = 50;
  std::optional<double> tolerance;
  std::map<std::string, int> fixed_ints;
  std::map<std::string, Value> fixed_params;
  std::map<std::string, double> bounds;  // modulus bound overrides
  unsigned workers = 0;                  // 0: hardware concurrency
};

/// Sampled case for one trial (deterministic in seed and trial).
IdentityCase draw_case(const SweepOptions& opts, int trial);

/// One report per trial, in trial order. EmptyDomain when trials < 1 or the
/// constraints reject every draw.
std::vector<VerificationReport> sweep(const SweepOptions& opts);

nlohmann::json to_json(const VerificationReport& r, bool timing = true);
nlohmann::json case_to_json(const IdentityCase& c);
IdentityCase case_from_json(const nlohmann::json& j);
std::string sweep_csv(const std::vector<VerificationReport>& reports);

/// Deterministic 64-bit mixing used to split sweep seeds per trial.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qcalc::harness
