#include "core/curvature.hpp"

#include <cmath>

namespace lfv {

namespace {

constexpr int kBaseOrder = 4;

double base_step(const CVector& z) { return 1e-3 * (1.0 + sup_norm(z)); }

}  // namespace

CurvatureSample curvature(const MetricFunction& G, const FiberPoint& p, const DiffScheme& s) {
  s.validate();
  p.validate(G.w_min());
  const int n = G.dim();
  const double hz = base_step(p.z);

  RealField along_base = [&G, &p](const CVector& z) { return G.value(z, p.w); };
  const double term1 = dzdzbar_dir(along_base, p.z, p.w, hz, kBaseOrder, true);

  // S_q = d/dzeta conj(G_q)(z + zeta w, w): the fiber gradient re-evaluated
  // along the base direction, then one first-order stencil in zeta
  auto grad_bar_at = [&](Complex zeta) -> CVector {
    const auto fib = G.fiber(p.z + zeta * p.w);
    CVector g(n);
    for (int q = 0; q < n; ++q) {
      auto sh = [&](Complex d) {
        CVector w = p.w;
        w[q] += d;
        return fib(w);
      };
      const Complex dx = diff1([&](double t) { return Complex(sh(Complex(t, 0)), 0); }, s.step,
                               s.order);
      const Complex dy = diff1([&](double t) { return Complex(sh(Complex(0, t)), 0); }, s.step,
                               s.order);
      g[q] = 0.5 * (dx + Complex(0, 1) * dy);  // d/dwbar^q
    }
    return g;
  };
  const CVector dxi =
      diff1_vec([&](double t) { return grad_bar_at(Complex(t, 0)); }, hz, kBaseOrder);
  const CVector deta =
      diff1_vec([&](double t) { return grad_bar_at(Complex(0, t)); }, hz, kBaseOrder);
  const CVector S = 0.5 * (dxi - Complex(0, 1) * deta);

  const auto fib = G.fiber(p.z);
  const double g0 = fib(p.w);
  const CMatrix H = wirtinger_hessian_mixed(fib, p.w, s);
  const Complex term2 = (S.transpose() * H.inverse() * S.conjugate()).value();

  CurvatureSample out;
  out.point = p;
  out.R_contracted = -term1 + term2;
  out.K = 2.0 * out.R_contracted.real() / (g0 * g0);
  out.imag_ratio = std::abs(out.R_contracted.imag()) / (1.0 + std::abs(out.R_contracted));
  return out;
}

TorsionReport torsions(const MetricFunction& G, const GroupModel& m, const FiberPoint& p,
                       const DiffScheme& s) {
  const int n = m.n;
  const MetricJet jet = jet_direct(G, p, s);
  const FrameData F = frame_data(m, p.z, s);

  TorsionReport out;
  out.strong = Tensor3(n);
  out.contracted = CMatrix::Zero(n, n);
  out.weak = CVector::Zero(n);
  out.predicted = Tensor3(n);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Complex t = jet.Gamma(i, j, k) - jet.Gamma(i, k, j);
        out.strong(i, j, k) = t;
        out.contracted(i, j) += p.w[k] * t;
      }
      out.weak[j] += out.contracted(i, j) * jet.G_w[i];
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Complex acc(0, 0);
        for (int r = 0; r < n; ++r)
          for (int pp = 0; pp < n; ++pp)
            for (int q = 0; q < n; ++q)
              acc += F.C(i, r) * F.D(pp, j) * F.D(q, k) * m.constants(r, pp, q);
        out.predicted(i, j, k) = acc;
      }

  out.strong_vs_predicted = (out.strong - out.predicted).max_abs();
  return out;
}

KahlerVerdict kahler_verdict(const MetricFunction& G, const GroupModel& m,
                             std::span<const FiberPoint> samples, double tol,
                             const DiffScheme& s) {
  KahlerVerdict v;
  for (const FiberPoint& p : samples) {
    const TorsionReport t = torsions(G, m, p, s);
    if (t.strong.max_abs() >= v.strong_residual) {
      v.strong_residual = t.strong.max_abs();
      v.worst_strong = p;
    }
    if (sup_norm(t.contracted) >= v.kahler_residual) {
      v.kahler_residual = sup_norm(t.contracted);
      v.worst_kahler = p;
    }
    if (sup_norm(t.weak) >= v.weak_residual) {
      v.weak_residual = sup_norm(t.weak);
      v.worst_weak = p;
    }
    v.strong_vs_predicted = std::max(v.strong_vs_predicted, t.strong_vs_predicted);
  }
  v.strongly = v.strong_residual <= tol;
  v.kahler = v.kahler_residual <= tol;
  v.weakly = v.weak_residual <= tol;
  return v;
}

LiftedSprays spray_via_lift(const GroupModel& m, const FiberPoint& p, const DiffScheme& s) {
  const int n = m.n;
  const FrameData F = frame_data(m, p.z, s);
  const CVector u = F.B * p.w;
  const CVector v = F.D * p.w;

  LiftedSprays out;
  out.via_left = {F.A * u, CVector::Zero(n)};
  out.via_right = {F.C * v, CVector::Zero(n)};
  for (int a = 0; a < n; ++a) {
    out.via_left.fiber += u[a] * lift_field(m, FrameSide::Left, a, p, s).fiber;
    out.via_right.fiber += v[a] * lift_field(m, FrameSide::Right, a, p, s).fiber;
  }
  return out;
}

}  // namespace lfv
