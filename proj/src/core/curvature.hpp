#pragma once

// Holomorphic sectional curvature and the Kahler torsions.
//
// With R_{i jbar k lbar} = -d/dz^k d/dzbar^l G_{i jbar}
//                          + G^{qbar p} (d/dz^k G_{i qbar}) (d/dzbar^l G_{p jbar}),
// the |lambda|^2-homogeneity of G collapses the full contraction against
// (w, wbar, w, wbar) to two cheap pieces:
//
//   w^i wbar^j w^k wbar^l R_{i jbar k lbar}
//     = - d/dzeta d/dzetabar G(z + zeta w, w) |_0
//       + S_q G^{qbar p} conj(S_p),       S_q = d/dzeta G_qbar(z + zeta w, w) |_0
//
// so no fourth-order stencils ever appear. K = 2 Re(R) / G^2.

#include "core/metric.hpp"

namespace lfv {

struct CurvatureSample {
  FiberPoint point;
  Complex R_contracted;
  double K = 0;
  double imag_ratio = 0;  // |Im R| / (1 + |R|), a reality guard
};

// pinned scheme for the base-direction second derivatives: order 4 with
// Richardson at step 1e-3 * (1 + |z|); the fiber Hessian uses `s`
CurvatureSample curvature(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s);

struct TorsionReport {
  Tensor3 strong;      // (i,j,k) = Gamma^i_{j;k} - Gamma^i_{k;j}
  CMatrix contracted;  // (i,j)   = w^k (Gamma^i_{j;k} - Gamma^i_{k;j})
  CVector weak;        // (j)     = w^k (Gamma^i_{j;k} - Gamma^i_{k;j}) G_i
  Tensor3 predicted;   // (i,j,k) = C^i_r D^p_j D^q_k c^r_{pq}
  double strong_vs_predicted = 0;
};

TorsionReport torsions(const MetricFunction& G, const GroupModel& m, const FiberPoint& p,
                       const DiffScheme& s);

struct KahlerVerdict {
  bool strongly = false, kahler = false, weakly = false;
  double strong_residual = 0, kahler_residual = 0, weak_residual = 0;
  double strong_vs_predicted = 0;
  FiberPoint worst_strong, worst_kahler, worst_weak;

  bool flags_agree() const { return strongly == kahler && kahler == weakly; }
};

// flags are max-residual tests at `tol` over the samples; the theorem under
// test says all three agree and hold exactly when the group is abelian
KahlerVerdict kahler_verdict(const MetricFunction& G, const GroupModel& m,
                             std::span<const FiberPoint> samples, double tol,
                             const DiffScheme& s);

struct LiftedSprays {
  SprayValue via_left;   // u^a U~_a with u = B w
  SprayValue via_right;  // v^a V~_a with v = D w
};

// the metric-free sides of the spray identity chi = u^a U~_a = v^a V~_a
LiftedSprays spray_via_lift(const GroupModel& m, const FiberPoint& p, const DiffScheme& s);

}  // namespace lfv
