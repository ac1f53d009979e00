#pragma once

// Rendering of verification reports. JSON output is deterministic for a fixed
// config and seed: key order is pinned, floats use the shortest round-trip
// form, and wall-clock timings are deliberately left out of the serialized
// forms.

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/types.hpp"

namespace lfv {

enum class ReportFormat { Json, Markdown };

bool all_passed(const std::vector<VerificationReport>& reports);

std::string render_report(const std::vector<VerificationReport>& reports,
                          const RunConfig& cfg, ReportFormat format);

}  // namespace lfv
