#pragma once

// Run configuration: which model, which norm, which suites, how many samples,
// which tolerances, which differentiation scheme, which seed. The JSON schema
// is strict: unknown keys anywhere are rejected so typos cannot silently
// disable a check.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/group_model.hpp"
#include "core/minkowski.hpp"

namespace lfv {

inline constexpr const char* kVersion = "1.0.0";

// canonical suite order; configs may list any subset in any order
const std::vector<std::string>& all_suites();

struct ModelSpec {
  std::string name = "heisenberg3";
  int n = 2;  // abelian dimension; fixed-dimension models ignore it
};

struct NormSpec {
  std::string kind = "hermitian";  // "hermitian" | "pnorm"
  std::vector<std::vector<Complex>> matrix;  // hermitian; empty = identity
  double p = 1.5;                            // pnorm exponent
  std::vector<double> weights;               // pnorm; empty = all ones
};

struct RunConfig {
  ModelSpec model;
  NormSpec norm;
  std::uint64_t seed = 42;
  std::map<std::string, int> samples;        // suite -> sample count
  std::map<std::string, double> tolerances;  // suite -> primary tolerance
  DiffScheme scheme;
  std::vector<std::string> suites;  // empty never survives validation
  double tol_scale = 1.0;

  GroupModel make_model() const;
  MinkowskiNorm make_norm() const;  // dimension taken from the model

  int sample_count(const std::string& suite) const;
  // primary tolerance, already multiplied by tol_scale; derived rows apply
  // documented multiples of this
  double tolerance(const std::string& suite) const;

  // fills defaults and throws ValidationError on any inconsistency
  void validate();
};

RunConfig parse_config(const std::string& json_text);  // ParseError | ValidationError
RunConfig load_config(const std::string& path);        // IoError | the above

// defaults filled, keys sorted, compact: the byte-stable provenance form
std::string canonical_json(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);  // fnv1a64 hex of the above

}  // namespace lfv
