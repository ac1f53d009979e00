#include "core/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace lfv {

namespace {

// fiber step for the Gamma stencil. N is linear in w for every invariant
// metric, so a wide step costs no truncation and divides the stencil noise
// inherited from the second-derivative layers underneath.
constexpr double kGammaStep = 0.1;
constexpr int kGammaOrder = 4;

CVector shifted(const CVector& v, int idx, Complex delta) {
  CVector q = v;
  q[idx] += delta;
  return q;
}

}  // namespace

LeftInvariantMetric::LeftInvariantMetric(GroupModel model, MinkowskiNorm norm,
                                         DiffScheme frame_scheme)
    : model_(std::move(model)), norm_(std::move(norm)), frame_scheme_(frame_scheme) {
  if (model_.n != norm_.dim())
    throw ValidationError("metric: norm dimension does not match the group model");
  frame_scheme_.validate();
}

std::function<double(const CVector&)> LeftInvariantMetric::fiber(const CVector& z) const {
  const CMatrix A = left_frame(model_, z, frame_scheme_);
  if (std::abs(A.determinant()) < 1e-10)
    throw SingularFrame("left frame singular while restricting the metric");
  CMatrix B = A.inverse();
  // copies capture the frame so one fiber functor serves a whole stencil sweep
  return [B = std::move(B), nm = norm_](const CVector& w) { return nm.evaluate(B * w); };
}

CMatrix LeftInvariantMetric::algebra_hessian_pullback(const CVector& z, const CVector& w) const {
  const CMatrix A = left_frame(model_, z, frame_scheme_);
  const CMatrix B = A.inverse();
  return B.transpose() * norm_.hessian_matrix(B * w) * B.conjugate();
}

namespace {

struct MixedBlock {
  // accumulators for d^2/(d z-part, d w-part) with all four real pairings
  double aa = 0, bb = 0, ba = 0, ab = 0;  // (w-part, z-part)
};

// (j,k) entry of d/dwbar^j d/dz^k G from four tensor-product stencils:
//   M = ( D_{wa,za} + D_{wb,zb} + i (D_{wb,za} - D_{wa,zb}) ) / 4
CMatrix mixed_fiber_base_once(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s,
                              double h) {
  const int n = G.dim();
  const auto nodes = stencil::d1(s.order);
  CMatrix M(n, n);

  for (int k = 0; k < n; ++k) {
    std::vector<MixedBlock> acc(n);
    for (int z_im = 0; z_im <= 1; ++z_im) {
      for (const auto& nz : stencil::d1(s.order)) {
        const Complex dz = z_im ? Complex(0, nz.offset * h) : Complex(nz.offset * h, 0);
        const auto fib = G.fiber(shifted(p.z, k, dz));
        for (int j = 0; j < n; ++j) {
          for (int w_im = 0; w_im <= 1; ++w_im) {
            double d = 0;
            for (const auto& nw : nodes) {
              const Complex dw = w_im ? Complex(0, nw.offset * h) : Complex(nw.offset * h, 0);
              const double v = fib(shifted(p.w, j, dw));
              if (!std::isfinite(v)) throw NonFiniteEvaluation("metric stencil sample");
              d += nw.weight * v;
            }
            d *= nz.weight;
            MixedBlock& b = acc[j];
            if (!w_im && !z_im) b.aa += d;
            if (w_im && z_im) b.bb += d;
            if (w_im && !z_im) b.ba += d;
            if (!w_im && z_im) b.ab += d;
          }
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      const MixedBlock& b = acc[j];
      M(j, k) = 0.25 * Complex(b.aa + b.bb, b.ba - b.ab) / (h * h);
    }
  }
  return M;
}

// Always Richardson-extrapolated: the cross stencil is the accuracy-critical
// input to the connection, and for non-quadratic norms its plain h^2
// truncation error is w-dependent, which would contaminate the Gamma stencil
// (differences of N across the fiber) well above tolerance.
CMatrix mixed_fiber_base(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s) {
  const double h = s.second_step();
  const CMatrix coarse = mixed_fiber_base_once(G, p, s, h);
  const CMatrix fine = mixed_fiber_base_once(G, p, s, h / 2);
  const double c = s.order == 4 ? 16.0 : 4.0;
  return (c * fine - coarse) / (c - 1.0);
}

struct ConnectionParts {
  double G;
  CVector G_w;
  CMatrix H, Hinv, M, N;
};

ConnectionParts connection_parts(const MetricFunction& G, const FiberPoint& p,
                                 const DiffScheme& s) {
  ConnectionParts out;
  const auto fib = G.fiber(p.z);
  out.G = fib(p.w);

  const int n = G.dim();
  out.G_w = CVector(n);
  RealField fib_field = fib;
  for (int i = 0; i < n; ++i) {
    const Complex dx =
        diff1([&](double t) { return Complex(fib(shifted(p.w, i, Complex(t, 0))), 0); }, s.step,
              s.order);
    const Complex dy =
        diff1([&](double t) { return Complex(fib(shifted(p.w, i, Complex(0, t))), 0); }, s.step,
              s.order);
    out.G_w[i] = 0.5 * (dx - Complex(0, 1) * dy);
  }

  // Richardson here as well: H feeds N through its inverse, and for
  // non-quadratic norms the h^2 Hessian truncation varies across the fiber
  DiffScheme hs = s;
  hs.richardson = true;
  out.H = wirtinger_hessian_mixed(fib_field, p.w, hs);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(out.H, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0))
    throw NotPseudoConvex("fiber Hessian of the metric degenerates at this point");
  out.Hinv = out.H.inverse();

  out.M = mixed_fiber_base(G, p, s);
  out.N = out.Hinv.transpose() * out.M;
  return out;
}

}  // namespace

CMatrix connection_direct(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s) {
  s.validate();
  p.validate(G.w_min());
  return connection_parts(G, p, s).N;
}

MetricJet jet_direct(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s) {
  s.validate();
  p.validate(G.w_min());
  const int n = G.dim();

  ConnectionParts parts = connection_parts(G, p, s);
  MetricJet jet;
  jet.G = parts.G;
  jet.G_w = parts.G_w;
  jet.G_wbar = parts.G_w.conjugate();
  jet.G_ww = parts.H;
  jet.G_ww_inv = parts.Hinv;
  jet.G_wbar_z = parts.M;
  jet.N = parts.N;

  jet.Gamma = Tensor3(n);
  jet.Gamma_conj = Tensor3(n);
  for (int j = 0; j < n; ++j) {
    auto n_at = [&](Complex delta) {
      return connection_parts(G, FiberPoint{p.z, shifted(p.w, j, delta)}, s).N;
    };
    CMatrix dx = CMatrix::Zero(n, n), dy = CMatrix::Zero(n, n);
    for (const auto& node : stencil::d1(kGammaOrder)) {
      dx += node.weight * n_at(Complex(node.offset * kGammaStep, 0));
      dy += node.weight * n_at(Complex(0, node.offset * kGammaStep));
    }
    dx /= kGammaStep;
    dy /= kGammaStep;
    const CMatrix dW = 0.5 * (dx - Complex(0, 1) * dy);
    const CMatrix dWbar = 0.5 * (dx + Complex(0, 1) * dy);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        jet.Gamma(i, j, k) = dW(i, k);
        jet.Gamma_conj(i, j, k) = dWbar(i, k);
      }
    }
  }
  return jet;
}

FrameJet jet_frame(const GroupModel& m, const FiberPoint& p, const DiffScheme& s) {
  s.validate();
  p.validate();
  const int n = m.n;
  const FrameData F = frame_data(m, p.z, s);
  const CVector v = F.D * p.w;

  // W_a(b,k) = V_a(D^b_k), a directional derivative of the inverse right
  // frame along the right frame column
  VectorField d_flat = [&m, &s, n](const CVector& q) -> CVector {
    const CMatrix C = right_frame(m, q, s);
    if (std::abs(C.determinant()) < 1e-10) throw SingularFrame("right frame singular");
    const CMatrix D = C.inverse();
    return CVector(Eigen::Map<const CVector>(D.data(), n * n));
  };

  std::vector<CMatrix> W(n);
  for (int a = 0; a < n; ++a) {
    const CVector d = wirtinger_dir(d_flat, p.z, F.C.col(a), s, s.frame_step()).dz;
    W[a] = Eigen::Map<const CMatrix>(d.data(), n, n);
  }

  FrameJet out;
  CMatrix Wv = CMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) Wv += v[a] * W[a];
  out.N = F.C * Wv;

  out.Gamma = Tensor3(n);
  for (int j = 0; j < n; ++j) {
    CMatrix Wj = CMatrix::Zero(n, n);
    for (int a = 0; a < n; ++a) Wj += F.D(a, j) * W[a];
    const CMatrix Gj = F.C * Wj;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out.Gamma(i, j, k) = Gj(i, k);
  }
  return out;
}

BerwaldCheck berwald_check(const MetricFunction& G, const CVector& z,
                           std::span<const CVector> fibers, const DiffScheme& s) {
  std::vector<Tensor3> gammas;
  gammas.reserve(fibers.size());
  for (const CVector& w : fibers) gammas.push_back(jet_direct(G, {z, w}, s).Gamma);

  BerwaldCheck out{0, fibers.empty() ? CVector() : CVector(fibers[0])};
  for (size_t a = 0; a < gammas.size(); ++a) {
    for (size_t b = a + 1; b < gammas.size(); ++b) {
      const double d = (gammas[a] - gammas[b]).max_abs();
      if (d > out.spread) {
        out.spread = d;
        out.worst_w = fibers[b];
      }
    }
  }
  return out;
}

SprayValue spray(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s) {
  const CMatrix N = connection_direct(G, p, s);
  return {p.w, -(N * p.w)};
}

Tensor3 vertical_coefficients(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s) {
  s.validate();
  p.validate(G.w_min());
  const int n = G.dim();
  const ConnectionParts parts = connection_parts(G, p, s);

  // T(j,k,l) = d/dw^k G_{j lbar}. Unlike the connection matrix, the fiber
  // Hessian is not polynomial in w for non-quadratic norms, so this stencil
  // must stay narrow: order 4 at 3e-3 balances Hessian noise (~1e-8 / h)
  // against genuine third-derivative truncation.
  constexpr double kVerticalStep = 3e-3;
  Tensor3 T(n);
  const RealField fib = G.fiber(p.z);
  for (int k = 0; k < n; ++k) {
    auto hess_at = [&](Complex delta) {
      return wirtinger_hessian_mixed(fib, shifted(p.w, k, delta), s);
    };
    CMatrix dx = CMatrix::Zero(n, n), dy = CMatrix::Zero(n, n);
    for (const auto& node : stencil::d1(4)) {
      dx += node.weight * hess_at(Complex(node.offset * kVerticalStep, 0));
      dy += node.weight * hess_at(Complex(0, node.offset * kVerticalStep));
    }
    const CMatrix d = 0.5 * (dx - Complex(0, 1) * dy) / kVerticalStep;
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) T(j, k, l) = d(j, l);
  }

  Tensor3 C(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Complex acc(0, 0);
        for (int l = 0; l < n; ++l) acc += parts.Hinv(l, i) * T(j, k, l);
        C(i, j, k) = acc;
      }
  return C;
}

double right_lift_metric_residual(const LeftInvariantMetric& G, const FiberPoint& p,
                                  const DiffScheme& s) {
  const int n = G.dim();
  ScalarField value = [&G, n](const CVector& packed) {
    return Complex(G.value(packed.head(n), packed.tail(n)), 0);
  };
  double r = 0;
  for (int i = 0; i < n; ++i) {
    const LiftedField V = lift_field(G.model(), FrameSide::Right, i, p, s);
    r = std::max(r, std::abs(apply_lift(V, value, p, s)));
  }
  return r;
}

double right_lift_algebra_hessian_residual(const LeftInvariantMetric& G, const FiberPoint& p,
                                           const DiffScheme& s) {
  const int n = G.dim();
  ScalarField entry;
  double r = 0;
  for (int i = 0; i < n; ++i) {
    const LiftedField V = lift_field(G.model(), FrameSide::Right, i, p, s);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        ScalarField f = [&G, &s, j, k, n](const CVector& packed) {
          const CVector z = packed.head(n), w = packed.tail(n);
          const CMatrix B = left_frame(G.model(), z, s).inverse();
          return G.norm().hessian_matrix(B * w)(j, k);
        };
        r = std::max(r, std::abs(apply_lift(V, f, p, s)));
      }
    }
  }
  return r;
}

double metric_invariance_residual(const LeftInvariantMetric& G, const CVector& g,
                                  const FiberPoint& p, const DiffScheme& s) {
  const CMatrix J = translation_jacobian(G.model(), g, p.z, s);
  const double lhs = G.value(G.model().multiply(g, p.z), J * p.w);
  const double rhs = G.value(p.z, p.w);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace lfv
