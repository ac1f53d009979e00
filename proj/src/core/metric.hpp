#pragma once

// Metrics on T^{1,0}G and their Chern-Finsler data. The invariant metric is
// G(z, w) = N(B(z) w) for a Minkowski norm N and the left frame inverse B;
// everything else on this page is derived from G by differentiation.
//
// Two independent routes produce the connection:
//
//   direct   N^i_k = G^{jbar i} d/dwbar^j d/dz^k G, straight from the
//            definition by real-coordinate stencils; Gamma^i_{j;k} is a
//            further fiber derivative of N. Trusted as the oracle route.
//
//   frame    N^i_k = C^i_b v^a V_a(D^b_k), v = D w, and
//            Gamma^i_{j;k} = C^i_b D^a_j V_a(D^b_k), which never touches the
//            norm and is fiber-independent by construction.
//
// Their agreement on invariant metrics is exactly the complex-Berwald
// statement the suites verify.

#include <memory>

#include "core/frames.hpp"
#include "core/minkowski.hpp"

namespace lfv {

class MetricFunction {
 public:
  virtual ~MetricFunction() = default;
  virtual int dim() const = 0;
  virtual double w_min() const { return FiberPoint::default_w_min; }
  // G restricted to the fiber over z; implementations cache per-base-point
  // frame data inside the returned callable so stencil sweeps in w are cheap
  virtual std::function<double(const CVector&)> fiber(const CVector& z) const = 0;

  double value(const CVector& z, const CVector& w) const { return fiber(z)(w); }
};

class LeftInvariantMetric final : public MetricFunction {
 public:
  LeftInvariantMetric(GroupModel model, MinkowskiNorm norm, DiffScheme frame_scheme);

  int dim() const override { return model_.n; }
  std::function<double(const CVector&)> fiber(const CVector& z) const override;

  const GroupModel& model() const { return model_; }
  const MinkowskiNorm& norm() const { return norm_; }

  // fiber Hessian through the frame: B(z)^T  N_hess(B(z) w)  conj(B(z));
  // the closed-form cross-check for the stencil Hessian in the jet
  CMatrix algebra_hessian_pullback(const CVector& z, const CVector& w) const;

 private:
  GroupModel model_;
  MinkowskiNorm norm_;
  DiffScheme frame_scheme_;
};

struct MetricJet {
  double G = 0;
  CVector G_w;        // G_i = d/dw^i G
  CVector G_wbar;     // conj for real G
  CMatrix G_ww;       // G_{i jbar}, Hermitian, positive definite
  CMatrix G_ww_inv;
  CMatrix G_wbar_z;   // (j,k) = d/dwbar^j d/dz^k G
  CMatrix N;          // N^i_k
  Tensor3 Gamma;      // (i,j,k) = Gamma^i_{j;k} = d/dw^j N^i_k
  Tensor3 Gamma_conj; // (i,j,k) = d/dwbar^j N^i_k, a guard that must vanish
};

MetricJet jet_direct(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s);

// connection matrix only (no Gamma); cheaper inner loops, same stencils
CMatrix connection_direct(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s);

struct FrameJet {
  CMatrix N;
  Tensor3 Gamma;
};

FrameJet jet_frame(const GroupModel& m, const FiberPoint& p, const DiffScheme& s);

// max over sample pairs of the sup-norm spread of direct-route Gamma across
// the fiber; a complex-Berwald metric keeps this at stencil-noise level
struct BerwaldCheck {
  double spread;
  CVector worst_w;
};

BerwaldCheck berwald_check(const MetricFunction& G, const CVector& z,
                           std::span<const CVector> fibers, const DiffScheme& s);

struct SprayValue {
  CVector base;   // components on d/dz^i, always w
  CVector fiber;  // components on d/dw^i, -N^i_k w^k
};

SprayValue spray(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s);

// vertical coefficients C^i_{jk} = G^{lbar i} d/dw^k G_{j lbar}; exposed for
// completeness checks (symmetry in jk, zero contraction against w)
Tensor3 vertical_coefficients(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s);

// max_i | V~_i G | over the lifted right frame; identically zero in theory
double right_lift_metric_residual(const LeftInvariantMetric& G, const FiberPoint& p,
                                  const DiffScheme& s);

// max_{i,j,k} | V~_i  N_hess(B(z)w)_{j kbar} |, the Hessian analogue
double right_lift_algebra_hessian_residual(const LeftInvariantMetric& G, const FiberPoint& p,
                                           const DiffScheme& s);

// |G(g.z, dL_g w) - G(z, w)| / max(1, G)
double metric_invariance_residual(const LeftInvariantMetric& G, const CVector& g,
                                  const FiberPoint& p, const DiffScheme& s);

}  // namespace lfv
