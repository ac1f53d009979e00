#include "core/wirtinger.hpp"

#include <array>
#include <cmath>

namespace lfv {

namespace stencil {

namespace {
constexpr std::array<Node, 2> kD1Order2{{{-1, -0.5}, {1, 0.5}}};
constexpr std::array<Node, 4> kD1Order4{
    {{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}}};
constexpr std::array<Node, 3> kD2Order2{{{-1, 1.0}, {0, -2.0}, {1, 1.0}}};
constexpr std::array<Node, 5> kD2Order4{
    {{-2, -1.0 / 12}, {-1, 16.0 / 12}, {0, -30.0 / 12}, {1, 16.0 / 12}, {2, -1.0 / 12}}};
}  // namespace

std::span<const Node> d1(int order) {
  return order == 4 ? std::span<const Node>(kD1Order4) : std::span<const Node>(kD1Order2);
}

std::span<const Node> d2(int order) {
  return order == 4 ? std::span<const Node>(kD2Order4) : std::span<const Node>(kD2Order2);
}

}  // namespace stencil

namespace {

void require_finite(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonFiniteEvaluation("stencil sample is not finite");
}

void require_finite(double v) {
  if (!std::isfinite(v)) throw NonFiniteEvaluation("stencil sample is not finite");
}

}  // namespace

Complex diff1(const std::function<Complex(double)>& g, double h, int order) {
  Complex acc(0, 0);
  for (const auto& n : stencil::d1(order)) {
    Complex v = g(n.offset * h);
    require_finite(v);
    acc += n.weight * v;
  }
  return acc / h;
}

CVector diff1_vec(const std::function<CVector(double)>& g, double h, int order) {
  CVector acc;
  for (const auto& n : stencil::d1(order)) {
    CVector v = g(n.offset * h);
    if (!all_finite(v)) throw NonFiniteEvaluation("stencil sample is not finite");
    if (acc.size() == 0) acc = CVector::Zero(v.size());
    acc += n.weight * v;
  }
  return acc / h;
}

namespace {

double diff2_once(const std::function<double(double)>& g, double h, int order) {
  // weights sum to zero, so accumulating differences against the center value
  // makes a constant function differentiate to exactly zero instead of
  // roundoff-of-weights times f
  const double center = g(0.0);
  require_finite(center);
  double acc = 0;
  for (const auto& n : stencil::d2(order)) {
    if (n.offset == 0) continue;
    double v = g(n.offset * h);
    require_finite(v);
    acc += n.weight * (v - center);
  }
  return acc / (h * h);
}

}  // namespace

double diff2(const std::function<double(double)>& g, double h, int order, bool richardson) {
  const double coarse = diff2_once(g, h, order);
  if (!richardson) return coarse;
  const double fine = diff2_once(g, h / 2, order);
  const double c = order == 4 ? 16.0 : 4.0;
  return (c * fine - coarse) / (c - 1.0);
}

WirtingerGrad wirtinger_grad(const ScalarField& f, const CVector& p, const DiffScheme& s) {
  s.validate();
  const int n = static_cast<int>(p.size());
  WirtingerGrad g{CVector(n), CVector(n)};
  for (int i = 0; i < n; ++i) {
    auto shifted = [&](Complex delta) {
      CVector q = p;
      q[i] += delta;
      return f(q);
    };
    const Complex dx = diff1([&](double t) { return shifted(Complex(t, 0)); }, s.step, s.order);
    const Complex dy = diff1([&](double t) { return shifted(Complex(0, t)); }, s.step, s.order);
    g.dz[i] = 0.5 * (dx - Complex(0, 1) * dy);
    g.dzbar[i] = 0.5 * (dx + Complex(0, 1) * dy);
  }
  return g;
}

WirtingerDir wirtinger_dir(const ScalarField& f, const CVector& p, const CVector& dir,
                           const DiffScheme& s, double step_override) {
  s.validate();
  const double h = step_override > 0 ? step_override : s.step;
  auto along = [&](Complex zeta) { return f(p + zeta * dir); };
  const Complex dxi = diff1([&](double t) { return along(Complex(t, 0)); }, h, s.order);
  const Complex deta = diff1([&](double t) { return along(Complex(0, t)); }, h, s.order);
  return {0.5 * (dxi - Complex(0, 1) * deta), 0.5 * (dxi + Complex(0, 1) * deta)};
}

WirtingerDirVec wirtinger_dir(const VectorField& f, const CVector& p, const CVector& dir,
                              const DiffScheme& s, double step_override) {
  s.validate();
  const double h = step_override > 0 ? step_override : s.step;
  auto along = [&](Complex zeta) { return f(p + zeta * dir); };
  const CVector dxi = diff1_vec([&](double t) { return along(Complex(t, 0)); }, h, s.order);
  const CVector deta = diff1_vec([&](double t) { return along(Complex(0, t)); }, h, s.order);
  return {0.5 * (dxi - Complex(0, 1) * deta), 0.5 * (dxi + Complex(0, 1) * deta)};
}

namespace {

// mixed second derivative d^2/(ds dt) f(p + s*da + t*db) via the tensor
// product of two first-difference stencils
double mixed2_once(const RealField& f, const CVector& p, const CVector& da, const CVector& db,
                   double h, int order) {
  double acc = 0;
  for (const auto& na : stencil::d1(order)) {
    for (const auto& nb : stencil::d1(order)) {
      double v = f(p + (na.offset * h) * da + (nb.offset * h) * db);
      require_finite(v);
      acc += na.weight * nb.weight * v;
    }
  }
  return acc / (h * h);
}

double mixed2(const RealField& f, const CVector& p, const CVector& da, const CVector& db,
              double h, int order, bool richardson) {
  const double coarse = mixed2_once(f, p, da, db, h, order);
  if (!richardson) return coarse;
  const double fine = mixed2_once(f, p, da, db, h / 2, order);
  const double c = order == 4 ? 16.0 : 4.0;
  return (c * fine - coarse) / (c - 1.0);
}

}  // namespace

CMatrix wirtinger_hessian_mixed(const RealField& f, const CVector& w, const DiffScheme& s) {
  s.validate();
  const int n = static_cast<int>(w.size());
  const double h = s.second_step();
  CMatrix H(n, n);
  for (int i = 0; i < n; ++i) {
    // diagonal: d/dw^i d/dwbar^i = (d^2/da^2 + d^2/db^2) / 4
    auto along = [&](int re, double t) {
      CVector q = w;
      q[i] += re ? Complex(t, 0) : Complex(0, t);
      return f(q);
    };
    const double daa = diff2([&](double t) { return along(1, t); }, h, s.order, s.richardson);
    const double dbb = diff2([&](double t) { return along(0, t); }, h, s.order, s.richardson);
    H(i, i) = 0.25 * (daa + dbb);

    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      CVector ai = CVector::Zero(n), bi = CVector::Zero(n);
      CVector aj = CVector::Zero(n), bj = CVector::Zero(n);
      ai[i] = Complex(1, 0);
      bi[i] = Complex(0, 1);
      aj[j] = Complex(1, 0);
      bj[j] = Complex(0, 1);
      const double daa_ = mixed2(f, w, ai, aj, h, s.order, s.richardson);
      const double dbb_ = mixed2(f, w, bi, bj, h, s.order, s.richardson);
      const double dab = mixed2(f, w, ai, bj, h, s.order, s.richardson);
      const double dba = mixed2(f, w, bi, aj, h, s.order, s.richardson);
      H(i, j) = 0.25 * Complex(daa_ + dbb_, dab - dba);
    }
  }
  return 0.5 * (H + H.adjoint().eval());
}

double dzdzbar_dir(const RealField& f, const CVector& p, const CVector& dir, double step,
                   int order, bool richardson) {
  auto along = [&](Complex zeta) { return f(p + zeta * dir); };
  const double dxx =
      diff2([&](double t) { return along(Complex(t, 0)); }, step, order, richardson);
  const double dyy =
      diff2([&](double t) { return along(Complex(0, t)); }, step, order, richardson);
  return 0.25 * (dxx + dyy);
}

HolomorphyCheck check_holomorphic(const VectorField& f, const CVector& p, double tol,
                                  const DiffScheme& s) {
  s.validate();
  double residual = 0;
  CVector dir = CVector::Zero(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    dir.setZero();
    dir[i] = Complex(1, 0);
    const auto d = wirtinger_dir(f, p, dir, s);
    residual = std::max(residual, sup_norm(d.dzbar));
  }
  return {residual <= tol, residual};
}

CVector directional_bracket(const VectorField& X, const VectorField& Y, const CVector& p,
                            const DiffScheme& s) {
  const CVector x0 = X(p), y0 = Y(p);
  const CVector dy_along_x = wirtinger_dir(Y, p, x0, s).dz;
  const CVector dx_along_y = wirtinger_dir(X, p, y0, s).dz;
  return dy_along_x - dx_along_y;
}

}  // namespace lfv
