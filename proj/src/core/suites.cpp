#include "core/suites.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "core/curvature.hpp"
#include "core/frames.hpp"
#include "core/rng.hpp"

namespace lfv {

namespace {

// base points stay in a modest ball: every builtin chart is comfortable
// there and the rational frames on affine1 keep their derivatives tame
constexpr double kBaseRadius = 0.5;

using Cmp = CheckRow::Cmp;

class RowSet {
 public:
  void observe_max(const std::string& id, double tol, Cmp cmp, double value,
                   const FiberPoint& at) {
    auto [row, fresh] = slot(id, tol, cmp);
    if (fresh || value > row->value) {
      row->value = value;
      row->worst = at;
    }
  }

  void observe_min(const std::string& id, double tol, Cmp cmp, double value,
                   const FiberPoint& at) {
    auto [row, fresh] = slot(id, tol, cmp);
    if (fresh || value < row->value) {
      row->value = value;
      row->worst = at;
    }
  }

  void push(CheckRow row) {
    index_[row.id] = rows_.size();
    rows_.push_back(std::move(row));
  }

  std::vector<CheckRow> take() { return std::move(rows_); }

 private:
  std::pair<CheckRow*, bool> slot(const std::string& id, double tol, Cmp cmp) {
    auto it = index_.find(id);
    if (it != index_.end()) return {&rows_[it->second], false};
    index_[id] = rows_.size();
    rows_.push_back(CheckRow{id, 0.0, tol, cmp, std::nullopt});
    return {&rows_.back(), true};
  }

  std::unordered_map<std::string, std::size_t> index_;
  std::vector<CheckRow> rows_;
};

CVector packed(const CVector& z, const CVector& w) {
  CVector q(z.size() + w.size());
  q << z, w;
  return q;
}

std::vector<CVector> base_points(const GroupModel& m, SampleStream& st, int count) {
  std::vector<CVector> pts;
  pts.reserve(count);
  pts.push_back(m.identity);  // the one point with known closed forms
  for (int k = 1; k < count; ++k)
    pts.push_back(st.complex_ball(m.n, m.identity, kBaseRadius));
  return pts;
}

void frames_suite(const RunConfig& cfg, RowSet& rows) {
  const GroupModel m = cfg.make_model();
  const DiffScheme& s = cfg.scheme;
  const double tol = cfg.tolerance("frames");
  const int n = m.n;
  SampleStream st(cfg.seed, "frames");

  for (CheckRow row : validate_model(m, cfg.seed, s)) {
    row.tolerance *= cfg.tol_scale;
    rows.push(std::move(row));
  }

  const int count = cfg.sample_count("frames");
  const std::vector<CVector> pts = base_points(m, st, count);
  for (const CVector& z : pts) {
    const VerificationReport r = verify_frame_identities(m, z, tol, s);
    for (const CheckRow& row : r.rows)
      rows.observe_max(row.id, row.tolerance, row.cmp, row.value,
                       row.worst ? *row.worst : FiberPoint{z, CVector::Zero(n)});
  }

  // frame matrices must be holomorphic in z; the target is exactly zero, so a
  // wide step keeps roundoff far below the tolerance
  DiffScheme holo = s;
  holo.step = std::max(s.step, 1e-3);
  auto flat = [n](const CMatrix& M) {
    return CVector(Eigen::Map<const CVector>(M.data(), n * n));
  };
  VectorField a_field = [&](const CVector& q) { return flat(left_frame(m, q, s)); };
  VectorField c_field = [&](const CVector& q) { return flat(right_frame(m, q, s)); };
  for (const CVector& z : pts) {
    const double resid = std::max(check_holomorphic(a_field, z, 1.0, holo).residual,
                                  check_holomorphic(c_field, z, 1.0, holo).residual);
    rows.observe_max("frames.holomorphy", 1e-6 * cfg.tol_scale, Cmp::LE, resid,
                     FiberPoint{z, CVector::Zero(n)});
  }

  // complete lifts reproduce the algebra: [U~_i, U~_j] = c^k_{ij} U~_k,
  // [V~_i, V~_j] = -c^k_{ij} V~_k, and the two lifted frames commute.
  // Lift components are low-degree in (z, w), so the outer bracket step can
  // be wide; the inner lift differentiation carries the only real noise.
  DiffScheme bracket = s;
  bracket.step = std::max(s.step, 1e-2);
  auto lifted = [&m, &s, n](FrameSide side, int j) {
    return VectorField([&m, &s, side, j, n](const CVector& zw) {
      const FiberPoint at{zw.head(n), zw.tail(n)};
      const LiftedField X = lift_field(m, side, j, at, s);
      return packed(X.base, X.fiber);
    });
  };
  const int bcount = std::min<int>(5, count);
  for (int k = 0; k < bcount; ++k) {
    const FiberPoint p{pts[k], st.fiber_sample(n)};
    const CVector q = packed(p.z, p.w);
    std::vector<CVector> lift_l(n), lift_r(n);
    for (int j = 0; j < n; ++j) {
      const LiftedField L = lift_field(m, FrameSide::Left, j, p, s);
      const LiftedField R = lift_field(m, FrameSide::Right, j, p, s);
      lift_l[j] = packed(L.base, L.fiber);
      lift_r[j] = packed(R.base, R.fiber);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const CVector mixed =
            directional_bracket(lifted(FrameSide::Left, i), lifted(FrameSide::Right, j), q, bracket);
        rows.observe_max("frames.lift-mixed-bracket", 10 * tol, Cmp::LE, sup_norm(mixed), p);
        if (j <= i) continue;
        CVector left_br =
            directional_bracket(lifted(FrameSide::Left, i), lifted(FrameSide::Left, j), q, bracket);
        CVector right_br =
            directional_bracket(lifted(FrameSide::Right, i), lifted(FrameSide::Right, j), q, bracket);
        for (int kk = 0; kk < n; ++kk) {
          left_br -= m.constants(kk, i, j) * lift_l[kk];
          right_br += m.constants(kk, i, j) * lift_r[kk];
        }
        rows.observe_max("frames.lift-left-bracket", 10 * tol, Cmp::LE, sup_norm(left_br), p);
        rows.observe_max("frames.lift-right-bracket", 10 * tol, Cmp::LE, sup_norm(right_br), p);
      }
    }
  }
}

void minkowski_suite(const RunConfig& cfg, RowSet& rows) {
  const MinkowskiNorm nm = cfg.make_norm();
  const int n = nm.dim();
  const double tol = cfg.tolerance("minkowski");
  SampleStream st(cfg.seed, "minkowski");
  const int count = cfg.sample_count("minkowski");

  std::vector<CVector> us;
  us.reserve(count);
  for (int k = 0; k < count; ++k) us.push_back(st.fiber_sample(n));

  for (CheckRow row : verify_homogeneity_identities(nm, us, cfg.scheme)) {
    row.tolerance *= cfg.tol_scale;
    rows.push(std::move(row));
  }

  const RealField f = [&nm](const CVector& u) { return nm.evaluate(u); };
  const int hcount = std::min(count, 25);
  for (int k = 0; k < hcount; ++k) {
    const CVector& u = us[k];
    const CMatrix gap = nm.hessian_matrix(u) - wirtinger_hessian_mixed(f, u, cfg.scheme);
    rows.observe_max("minkowski.closed-vs-numeric", tol, Cmp::LE, sup_norm(gap),
                     FiberPoint{CVector(), u});
  }
  for (const CVector& u : us) {
    const CMatrix H = nm.hessian_matrix(u);
    rows.observe_max("minkowski.hessian-hermitian", 1e-12 * cfg.tol_scale, Cmp::LE,
                     sup_norm(CMatrix(H - H.adjoint())), FiberPoint{CVector(), u});
    const MinkowskiNorm::Hessian h = nm.hessian(u);
    rows.observe_max("minkowski.hessian-inverse", 1e-10 * cfg.tol_scale, Cmp::LE,
                     sup_norm(CMatrix(h.H * h.Hinv - CMatrix::Identity(n, n))),
                     FiberPoint{CVector(), u});
  }

  std::vector<CVector> sphere;
  sphere.reserve(count);
  for (int k = 0; k < count; ++k) sphere.push_back(st.fiber_direction(n));
  const PseudoConvexScan scan = verify_pseudo_convex(nm, sphere, 1e-9 * cfg.tol_scale);
  rows.push(CheckRow{"minkowski.pseudo-convex", scan.min_eigenvalue, 1e-9 * cfg.tol_scale,
                     Cmp::GT, FiberPoint{CVector(), scan.worst}});
}

void connection_suite(const RunConfig& cfg, RowSet& rows) {
  const GroupModel m = cfg.make_model();
  const LeftInvariantMetric G(m, cfg.make_norm(), cfg.scheme);
  const DiffScheme& s = cfg.scheme;
  const double tol = cfg.tolerance("connection");
  const int n = m.n;
  SampleStream st(cfg.seed, "connection");
  const int count = cfg.sample_count("connection");

  for (int k = 0; k < count; ++k) {
    const CVector z = k == 0 ? m.identity : st.complex_ball(n, m.identity, kBaseRadius);
    const FiberPoint p{z, st.fiber_sample(n)};

    const MetricJet jet = jet_direct(G, p, s);
    const FrameJet fj = jet_frame(m, p, s);
    rows.observe_max("connection.two-route-N", tol, Cmp::LE,
                     sup_norm(CMatrix(jet.N - fj.N)), p);
    rows.observe_max("connection.two-route-gamma", 10 * tol, Cmp::LE,
                     (jet.Gamma - fj.Gamma).max_abs(), p);

    const Complex euler = (jet.G_w.array() * p.w.array()).sum();
    rows.observe_max("connection.euler-degree", tol, Cmp::LE,
                     std::abs(euler - jet.G) / std::max(1.0, jet.G), p);
    const CVector hess_euler = jet.G_ww.transpose() * p.w - jet.G_w.conjugate();
    rows.observe_max("connection.hessian-euler", tol, Cmp::LE, sup_norm(hess_euler), p);

    rows.observe_max("connection.hessian-congruence", tol, Cmp::LE,
                     sup_norm(CMatrix(jet.G_ww - G.algebra_hessian_pullback(p.z, p.w))), p);
    rows.observe_max("connection.conjugate-gamma", 10 * tol, Cmp::LE,
                     jet.Gamma_conj.max_abs(), p);

    const FrameData F = frame_data(m, p.z, s);
    const CVector grad_closed = F.B.transpose() * G.norm().gradient(F.B * p.w);
    rows.observe_max("connection.gradient-pullback", tol, Cmp::LE,
                     sup_norm(CVector(jet.G_w - grad_closed)), p);

    rows.observe_max("connection.right-lift-metric", tol, Cmp::LE,
                     right_lift_metric_residual(G, p, s), p);
    rows.observe_max("connection.right-lift-hessian", 10 * tol, Cmp::LE,
                     right_lift_algebra_hessian_residual(G, p, s), p);

    const CVector g = st.complex_ball(n, m.identity, kBaseRadius);
    rows.observe_max("connection.left-invariance", 1e-8 * cfg.tol_scale, Cmp::LE,
                     metric_invariance_residual(G, g, p, s), p);

    const Tensor3 vert = vertical_coefficients(G, p, s);
    double sym = 0, contracted = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Complex along_w = 0;
        for (int kk = 0; kk < n; ++kk) {
          sym = std::max(sym, std::abs(vert(i, j, kk) - vert(i, kk, j)));
          along_w += vert(i, j, kk) * p.w[kk];
        }
        contracted = std::max(contracted, std::abs(along_w));
      }
    }
    rows.observe_max("connection.vertical-symmetry", 10 * tol, Cmp::LE, sym, p);
    rows.observe_max("connection.vertical-contraction", 10 * tol, Cmp::LE, contracted, p);
  }
}

void berwald_suite(const RunConfig& cfg, RowSet& rows) {
  const GroupModel m = cfg.make_model();
  const LeftInvariantMetric G(m, cfg.make_norm(), cfg.scheme);
  const double tol = cfg.tolerance("berwald");
  const int n = m.n;
  SampleStream st(cfg.seed, "berwald");
  const int wcount = cfg.sample_count("berwald");

  const std::vector<CVector> pts = base_points(m, st, 5);
  for (const CVector& z : pts) {
    std::vector<CVector> fibers;
    fibers.reserve(wcount);
    for (int k = 0; k < wcount; ++k) fibers.push_back(st.fiber_sample(n));
    const BerwaldCheck bc = berwald_check(G, z, fibers, cfg.scheme);
    rows.observe_max("berwald.gamma-spread", tol, Cmp::LE, bc.spread,
                     FiberPoint{z, bc.worst_w});
  }
}

void spray_suite(const RunConfig& cfg, RowSet& rows) {
  const GroupModel m = cfg.make_model();
  const LeftInvariantMetric G(m, cfg.make_norm(), cfg.scheme);
  const DiffScheme& s = cfg.scheme;
  const double tol = cfg.tolerance("spray");
  const int n = m.n;
  SampleStream st(cfg.seed, "spray");
  const int count = cfg.sample_count("spray");

  auto gap = [](const SprayValue& a, const SprayValue& b) {
    return std::max(sup_norm(CVector(a.base - b.base)),
                    sup_norm(CVector(a.fiber - b.fiber)));
  };
  for (int k = 0; k < count; ++k) {
    const CVector z = k == 0 ? m.identity : st.complex_ball(n, m.identity, kBaseRadius);
    const FiberPoint p{z, st.fiber_sample(n)};
    const SprayValue direct = spray(G, p, s);
    const LiftedSprays lifts = spray_via_lift(m, p, s);
    rows.observe_max("spray.direct-vs-left-lift", tol, Cmp::LE, gap(direct, lifts.via_left), p);
    rows.observe_max("spray.direct-vs-right-lift", tol, Cmp::LE, gap(direct, lifts.via_right), p);
    rows.observe_max("spray.left-vs-right-lift", tol, Cmp::LE,
                     gap(lifts.via_left, lifts.via_right), p);
    for (const Complex lambda : {Complex(2, 0), Complex(0, 1)}) {
      const SprayValue scaled = spray(G, FiberPoint{p.z, CVector(lambda * p.w)}, s);
      const double resid = sup_norm(CVector(scaled.fiber - lambda * lambda * direct.fiber)) /
                           std::max(1.0, sup_norm(direct.fiber));
      rows.observe_max("spray.complex-scaling", tol, Cmp::LE, resid, p);
    }
  }
}

void kahler_suite(const RunConfig& cfg, RowSet& rows) {
  const GroupModel m = cfg.make_model();
  const LeftInvariantMetric G(m, cfg.make_norm(), cfg.scheme);
  const double tol = cfg.tolerance("kahler");
  const int n = m.n;
  SampleStream st(cfg.seed, "kahler");
  const int count = cfg.sample_count("kahler");

  std::vector<FiberPoint> samples;
  samples.reserve(count);
  const std::vector<CVector> pts = base_points(m, st, count);
  for (const CVector& z : pts) samples.push_back(FiberPoint{z, st.fiber_sample(n)});

  const bool abelian = m.is_abelian();
  const double flag_tol = abelian ? 1e-8 * cfg.tol_scale : tol;
  const KahlerVerdict v = kahler_verdict(G, m, samples, flag_tol, cfg.scheme);

  if (abelian) {
    rows.push(CheckRow{"kahler.strong-residual", v.strong_residual, flag_tol, Cmp::LE,
                       v.worst_strong});
    rows.push(CheckRow{"kahler.contracted-residual", v.kahler_residual, flag_tol, Cmp::LE,
                       v.worst_kahler});
    rows.push(CheckRow{"kahler.weak-residual", v.weak_residual, flag_tol, Cmp::LE,
                       v.worst_weak});
  } else {
    // non-commuting groups must be caught red-handed, with margin
    rows.push(CheckRow{"kahler.strong-witness", v.strong_residual, tol, Cmp::GT,
                       v.worst_strong});
    rows.push(CheckRow{"kahler.contracted-witness", v.kahler_residual, tol, Cmp::GT,
                       v.worst_kahler});
    rows.push(CheckRow{"kahler.weak-witness", v.weak_residual, 10 * tol, Cmp::GT,
                       v.worst_weak});
  }
  rows.push(CheckRow{"kahler.flags-agree", v.flags_agree() ? 0.0 : 1.0, 0.5, Cmp::LE,
                     std::nullopt});
  const bool matches = v.strongly == abelian && v.kahler == abelian && v.weakly == abelian;
  rows.push(CheckRow{"kahler.flags-match-commutativity", matches ? 0.0 : 1.0, 0.5,
                     Cmp::LE, std::nullopt});
  rows.push(CheckRow{"kahler.strong-vs-predicted", v.strong_vs_predicted, tol, Cmp::LE,
                     std::nullopt});
}

void curvature_suite(const RunConfig& cfg, RowSet& rows) {
  const GroupModel m = cfg.make_model();
  const LeftInvariantMetric G(m, cfg.make_norm(), cfg.scheme);
  const double tol = cfg.tolerance("curvature");
  const int n = m.n;
  SampleStream st(cfg.seed, "curvature");
  const int count = cfg.sample_count("curvature");

  const double k_tol = m.is_abelian() ? 1e-10 * cfg.tol_scale : tol;
  for (int k = 0; k < count; ++k) {
    const CVector z = k == 0 ? m.identity : st.complex_ball(n, m.identity, kBaseRadius);
    const FiberPoint p{z, st.fiber_sample(n)};
    const CurvatureSample c0 = curvature(G, p, cfg.scheme);
    rows.observe_max("curvature.max-abs-K", k_tol, Cmp::LE, std::abs(c0.K), p);
    rows.observe_max("curvature.imag-ratio", tol, Cmp::LE, c0.imag_ratio, p);
    for (const Complex lambda : {Complex(2, 0), Complex(0, 1)}) {
      const CurvatureSample c1 =
          curvature(G, FiberPoint{p.z, CVector(lambda * p.w)}, cfg.scheme);
      rows.observe_max("curvature.scale-invariance", tol, Cmp::LE, std::abs(c1.K - c0.K), p);
    }
  }
}

}  // namespace

VerificationReport run_suite(const RunConfig& cfg, const std::string& suite) {
  VerificationReport rep;
  rep.suite = suite;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    RowSet rows;
    if (suite == "frames") {
      frames_suite(cfg, rows);
    } else if (suite == "minkowski") {
      minkowski_suite(cfg, rows);
    } else if (suite == "connection") {
      connection_suite(cfg, rows);
    } else if (suite == "berwald") {
      berwald_suite(cfg, rows);
    } else if (suite == "spray") {
      spray_suite(cfg, rows);
    } else if (suite == "kahler") {
      kahler_suite(cfg, rows);
    } else if (suite == "curvature") {
      curvature_suite(cfg, rows);
    } else {
      throw ValidationError("unknown suite \"" + suite + "\"");
    }
    rep.rows = rows.take();
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

std::vector<VerificationReport> run_suites(const RunConfig& cfg) {
  std::vector<VerificationReport> out;
  out.reserve(cfg.suites.size());
  for (const auto& suite : cfg.suites) out.push_back(run_suite(cfg, suite));
  return out;
}

}  // namespace lfv
