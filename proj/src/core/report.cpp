#include "core/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace lfv {

namespace {

using ordered = nlohmann::ordered_json;

ordered complex_pairs(const CVector& v) {
  ordered out = ordered::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back({v[i].real(), v[i].imag()});
  return out;
}

ordered point_json(const FiberPoint& p) {
  ordered out;
  out["z"] = complex_pairs(p.z);
  out["w"] = complex_pairs(p.w);
  return out;
}

ordered row_json(const CheckRow& row) {
  ordered out;
  out["id"] = row.id;
  out["value"] = row.value;
  out["tolerance"] = row.tolerance;
  out["comparison"] = row.cmp == CheckRow::Cmp::LE ? "<=" : ">";
  out["pass"] = row.pass();
  if (row.worst)
    out["worst_point"] = point_json(*row.worst);
  else
    out["worst_point"] = nullptr;
  return out;
}

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

std::string describe_point(const FiberPoint& p) {
  auto one = [](const CVector& v) {
    std::string s = "(";
    char buf[64];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.3g%+.3gi", v[i].real(), v[i].imag());
      s += buf;
      if (i + 1 < v.size()) s += ", ";
    }
    return s + ")";
  };
  return "z=" + one(p.z) + " w=" + one(p.w);
}

}  // namespace

bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass()) return false;
  return !reports.empty();
}

std::string render_report(const std::vector<VerificationReport>& reports,
                          const RunConfig& cfg, ReportFormat format) {
  const GroupModel model = cfg.make_model();
  if (format == ReportFormat::Json) {
    ordered j;
    j["schema_version"] = 1;
    j["engine"] = {{"version", kVersion}, {"generator", "splitmix64"}};
    j["model"] = model.name;
    j["dimension"] = model.n;
    j["norm"] = cfg.make_norm().describe();
    j["seed"] = cfg.seed;
    j["config_hash"] = config_hash(cfg);
    j["all_passed"] = all_passed(reports);
    ordered suites = ordered::array();
    for (const auto& r : reports) {
      ordered s;
      s["suite"] = r.suite;
      s["pass"] = r.pass();
      if (!r.error.empty()) s["error"] = r.error;
      ordered checks = ordered::array();
      for (const auto& row : r.rows) checks.push_back(row_json(row));
      s["checks"] = checks;
      suites.push_back(s);
    }
    j["suites"] = suites;
    return j.dump(2) + "\n";
  }

  // markdown
  std::string out;
  out += "# left-invariant metric verification\n\n";
  out += "- model: `" + model.name + "` (dimension " +
         std::to_string(model.n) + ")\n";
  out += "- norm: `" + cfg.make_norm().describe() + "`\n";
  out += "- seed: " + std::to_string(cfg.seed) + "\n";
  out += "- config: `" + config_hash(cfg) + "`\n";
  out += "- result: **" + std::string(all_passed(reports) ? "PASS" : "FAIL") +
         "**\n";
  for (const auto& r : reports) {
    out += "\n## " + r.suite + " — " + (r.pass() ? "PASS" : "FAIL") + "\n\n";
    if (!r.error.empty()) {
      out += "error: `" + r.error + "`\n";
      continue;
    }
    out += "| check | value | tolerance | pass |\n";
    out += "|---|---|---|---|\n";
    for (const auto& row : r.rows) {
      const char* cmp = row.cmp == CheckRow::Cmp::LE ? "<=" : ">";
      out += "| " + row.id + " | " + sci(row.value) + " | " + cmp + " " +
             sci(row.tolerance) + " | " + (row.pass() ? "yes" : "**no**") +
             " |\n";
    }
    for (const auto& row : r.rows) {
      if (!row.pass() && row.worst)
        out += "\nworst point for `" + row.id + "`: " +
               describe_point(*row.worst) + "\n";
    }
  }
  return out;
}

}  // namespace lfv
