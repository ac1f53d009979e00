// End-to-end acceptance gate. Runs every verification suite over the full
// model x norm matrix, then grades one numbered criterion per line:
//
//   [PASS]  1. <criterion> (measured ... vs bound ...)
//
// The process exits nonzero if any criterion fails. A final negative control
// feeds a deliberately non-invariant metric through the same stencils and
// demands a loud failure, guarding against vacuously-passing checks.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/curvature.hpp"
#include "core/report.hpp"
#include "core/rng.hpp"
#include "core/suites.hpp"
#include "json.hpp"

using namespace lfv;

namespace {

struct Cell {
  std::string label;
  bool abelian = false;
  std::map<std::string, CheckRow> rows;
  std::vector<std::string> errors;
};

nlohmann::json norm_json(const std::string& kind, int n) {
  nlohmann::json norm;
  if (kind == "identity") {
    norm["kind"] = "hermitian";
  } else if (kind == "offdiag") {
    norm["kind"] = "hermitian";
    auto rows = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
      auto row = nlohmann::json::array();
      for (int j = 0; j < n; ++j) {
        if (i == j)
          row.push_back(i + 1);
        else if (j == i + 1)
          row.push_back({0.3, 0.1});
        else if (i == j + 1)
          row.push_back({0.3, -0.1});
        else
          row.push_back(0);
      }
      rows.push_back(row);
    }
    norm["matrix"] = rows;
  } else {  // pnorm
    norm["kind"] = "pnorm";
    norm["p"] = 1.5;
  }
  return norm;
}

Cell run_cell(const std::string& model, const std::string& norm_kind) {
  const GroupModel gm = builtin_model(model);
  nlohmann::json j;
  j["model"]["name"] = model;
  j["norm"] = norm_json(norm_kind, gm.n);
  const RunConfig cfg = parse_config(j.dump());

  Cell cell;
  cell.label = model + " / " + norm_kind;
  cell.abelian = gm.is_abelian();
  for (const VerificationReport& rep : run_suites(cfg)) {
    if (!rep.error.empty()) cell.errors.push_back(rep.suite + ": " + rep.error);
    for (const CheckRow& row : rep.rows) cell.rows.emplace(row.id, row);
  }
  return cell;
}

int g_failures = 0;
int g_index = 0;

void grade(const std::string& label, bool pass, const std::string& detail) {
  ++g_index;
  if (!pass) ++g_failures;
  std::printf("[%s] %2d. %s (%s)\n", pass ? "PASS" : "FAIL", g_index, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// max over cells of a row value; records cells where the row is absent
struct Gather {
  double max_value = 0;
  std::string worst_cell = "-";
  std::vector<std::string> missing;

  void add(const Cell& c, const std::string& id) {
    auto it = c.rows.find(id);
    if (it == c.rows.end()) {
      missing.push_back(c.label + ":" + id);
      return;
    }
    if (it->second.value >= max_value) {
      max_value = it->second.value;
      worst_cell = c.label;
    }
  }

  bool complete() const { return missing.empty(); }

  std::string detail(double bound) const {
    if (!complete()) return "missing row " + missing.front();
    return "max " + sci(max_value) + " at " + worst_cell + ", bound " + sci(bound);
  }
};

// deliberately non-invariant: adds a base-point-dependent multiple of the
// untranslated norm, so no left translation can relate its fibers
class DriftingMetric final : public MetricFunction {
 public:
  DriftingMetric(const LeftInvariantMetric& inner, const MinkowskiNorm& nm)
      : inner_(inner), nm_(nm) {}
  int dim() const override { return inner_.dim(); }
  std::function<double(const CVector&)> fiber(const CVector& z) const override {
    const double c = 0.1 * z[0].real();
    auto base = inner_.fiber(z);
    const MinkowskiNorm& nm = nm_;
    return [c, base, &nm](const CVector& w) { return base(w) + c * nm.evaluate(w); };
  }

 private:
  const LeftInvariantMetric& inner_;
  const MinkowskiNorm& nm_;
};

}  // namespace

int main() {
  const std::vector<std::string> models = {"abelian(2)", "heisenberg3", "affine1"};
  const std::vector<std::string> norms = {"identity", "offdiag", "pnorm"};

  std::vector<Cell> cells;
  for (const auto& m : models)
    for (const auto& nk : norms) {
      std::fprintf(stderr, "running %s / %s ...\n", m.c_str(), nk.c_str());
      cells.push_back(run_cell(m, nk));
    }

  bool no_errors = true;
  for (const Cell& c : cells)
    for (const auto& e : c.errors) {
      no_errors = false;
      std::fprintf(stderr, "suite error in %s: %s\n", c.label.c_str(), e.c_str());
    }

  // 1. structural frame identities on every model
  {
    const char* ids[] = {"frames.left-right-change",     "frames.left-bracket",
                         "frames.right-bracket",         "frames.left-right-commute",
                         "frames.change-derivative",     "frames.right-lift-split",
                         "frames.lift-left-coordinates", "frames.lift-right-coordinates"};
    Gather g;
    bool structural = true;
    for (const Cell& c : cells) {
      for (const char* id : ids) g.add(c, id);
      for (const auto& [id, row] : c.rows)
        if (id.rfind("model.", 0) == 0 && !row.pass()) structural = false;
    }
    grade("frame identities hold on sampled base points",
          structural && g.complete() && g.max_value <= 1e-5, g.detail(1e-5));
  }

  // 2. the two connection routes agree
  {
    Gather n, gamma;
    for (const Cell& c : cells) {
      n.add(c, "connection.two-route-N");
      gamma.add(c, "connection.two-route-gamma");
    }
    grade("connection from the metric equals connection from the frame",
          n.complete() && gamma.complete() && n.max_value <= 1e-5 &&
              gamma.max_value <= 1e-4,
          "N " + n.detail(1e-5) + "; coefficients " + sci(gamma.max_value) +
              ", bound " + sci(1e-4));
  }

  // 3. connection coefficients do not depend on the fiber direction
  {
    Gather g;
    for (const Cell& c : cells) g.add(c, "berwald.gamma-spread");
    grade("connection coefficients are constant across each fiber",
          g.complete() && g.max_value <= 1e-4, g.detail(1e-4));
  }

  // 4. geodesic spray agrees between the direct and both lifted routes
  {
    const char* ids[] = {"spray.direct-vs-left-lift", "spray.direct-vs-right-lift",
                         "spray.left-vs-right-lift", "spray.complex-scaling"};
    Gather g;
    for (const Cell& c : cells)
      for (const char* id : ids) g.add(c, id);
    grade("geodesic spray extends through both invariant frames",
          g.complete() && g.max_value <= 1e-5, g.detail(1e-5));
  }

  // 5. torsion flatness holds exactly when the group is abelian
  {
    bool ok = true;
    std::string detail = "all flags match commutativity";
    double worst_resid = 0, worst_witness = 1e300;
    for (const Cell& c : cells) {
      auto flag = [&](const char* id) {
        auto it = c.rows.find(id);
        if (it == c.rows.end() || !it->second.pass()) ok = false;
      };
      flag("kahler.flags-agree");
      flag("kahler.flags-match-commutativity");
      flag("kahler.strong-vs-predicted");
      if (c.abelian) {
        for (const char* id :
             {"kahler.strong-residual", "kahler.contracted-residual", "kahler.weak-residual"}) {
          auto it = c.rows.find(id);
          if (it == c.rows.end() || it->second.value > 1e-8) ok = false;
          if (it != c.rows.end()) worst_resid = std::max(worst_resid, it->second.value);
        }
      } else {
        auto it = c.rows.find("kahler.weak-witness");
        if (it == c.rows.end() || !(it->second.value > 1e-3)) ok = false;
        if (it != c.rows.end()) worst_witness = std::min(worst_witness, it->second.value);
      }
    }
    detail = "abelian residuals <= " + sci(worst_resid) +
             ", non-abelian witnesses >= " + sci(worst_witness);
    grade("torsion-free verdicts hold exactly for abelian groups", ok, detail);
  }

  // 6. holomorphic sectional curvature vanishes
  {
    Gather ab, rest;
    for (const Cell& c : cells) (c.abelian ? ab : rest).add(c, "curvature.max-abs-K");
    grade("holomorphic sectional curvature vanishes",
          ab.complete() && rest.complete() && ab.max_value <= 1e-10 &&
              rest.max_value <= 1e-4,
          "abelian " + sci(ab.max_value) + " <= 1e-10; general " + rest.detail(1e-4));
  }

  // 7. curvature is scale-invariant and real
  {
    Gather scale, imag;
    for (const Cell& c : cells) {
      scale.add(c, "curvature.scale-invariance");
      imag.add(c, "curvature.imag-ratio");
    }
    grade("curvature value is real and invariant under fiber scaling",
          scale.complete() && imag.complete() && scale.max_value <= 1e-4 &&
              imag.max_value <= 1e-4,
          "scaling " + sci(scale.max_value) + ", imaginary part " + sci(imag.max_value) +
              ", bound " + sci(1e-4));
  }

  // 8. supporting identities: holomorphy, lifted brackets, right-lift residuals
  {
    Gather holo, brackets, lift_metric, lift_hess;
    for (const Cell& c : cells) {
      holo.add(c, "frames.holomorphy");
      for (const char* id : {"frames.lift-mixed-bracket", "frames.lift-left-bracket",
                             "frames.lift-right-bracket"})
        brackets.add(c, id);
      lift_metric.add(c, "connection.right-lift-metric");
      lift_hess.add(c, "connection.right-lift-hessian");
    }
    const bool ok = holo.complete() && brackets.complete() && lift_metric.complete() &&
                    lift_hess.complete() && holo.max_value <= 1e-6 &&
                    brackets.max_value <= 1e-4 && lift_metric.max_value <= 1e-5 &&
                    lift_hess.max_value <= 1e-4;
    grade("frame holomorphy, lifted brackets and right-lift residuals",
          ok,
          "holomorphy " + sci(holo.max_value) + ", brackets " + sci(brackets.max_value) +
              ", right-lift " + sci(lift_metric.max_value) + "/" + sci(lift_hess.max_value));
  }

  // 9. negative control: a non-invariant metric must fail loudly
  {
    const DiffScheme scheme;
    const GroupModel m = builtin_model("heisenberg3");
    const MinkowskiNorm nm = MinkowskiNorm::pnorm(1.5, RVector::Ones(3));
    const LeftInvariantMetric inner(m, nm, scheme);
    const DriftingMetric bad(inner, nm);

    SampleStream st(42, "negative-control");
    const CVector z = st.complex_ball(3, CVector::Zero(3), 0.5);
    std::vector<CVector> fibers;
    for (int k = 0; k < 10; ++k) fibers.push_back(st.fiber_sample(3));

    const double spread = berwald_check(bad, z, fibers, scheme).spread;
    const FiberPoint p{z, fibers.front()};
    const double K = std::abs(curvature(bad, p, scheme).K);
    grade("a non-invariant metric trips the same checks",
          spread > 10 * 1e-4 || K > 10 * 1e-4,
          "fiber spread " + sci(spread) + ", |K| " + sci(K) + ", need > " + sci(1e-3));
  }

  // 10. determinism: identical configuration renders to identical bytes
  {
    nlohmann::json j;
    j["model"]["name"] = "heisenberg3";
    j["norm"] = norm_json("offdiag", 3);
    const RunConfig cfg = parse_config(j.dump());
    const std::string a = render_report(run_suites(cfg), cfg, ReportFormat::Json);
    const std::string b = render_report(run_suites(cfg), cfg, ReportFormat::Json);
    grade("reports are byte-identical for a fixed configuration and seed", a == b,
          a == b ? "two full runs rendered " + std::to_string(a.size()) + " identical bytes"
                 : "renders differ");
  }

  if (!no_errors) {
    std::printf("[FAIL] suite errors occurred (see stderr)\n");
    ++g_failures;
  }

  std::printf("%d/%d criteria passed\n", g_index - g_failures, g_index);
  return g_failures == 0 ? 0 : 1;
}
