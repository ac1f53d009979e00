#pragma once

// Suite runners. Each suite draws its own deterministic sample stream
// (seed XOR fnv1a64(suite name)), evaluates a fixed catalog of identity
// residuals, and aggregates each row as the max (or min, for witness rows)
// over the samples together with the worst fiber point seen.

#include <vector>

#include "core/config.hpp"
#include "core/types.hpp"

namespace lfv {

// a suite that throws is reported as failed with the message, not rethrown
VerificationReport run_suite(const RunConfig& cfg, const std::string& suite);

// runs cfg.suites sequentially in the configured order
std::vector<VerificationReport> run_suites(const RunConfig& cfg);

}  // namespace lfv
