#pragma once

// Wirtinger calculus on numerically evaluated fields:
//   d/dz    = (d/dx - i d/dy) / 2
//   d/dzbar = (d/dx + i d/dy) / 2
// so f is holomorphic iff d/dzbar f = 0. All derivatives are central
// differences on the underlying real coordinates; nothing here assumes
// holomorphy (complex-step differentiation would, and the metrics we
// differentiate are real-valued in the fiber).

#include <functional>
#include <span>

#include "core/types.hpp"

namespace lfv {

struct DiffScheme {
  double step = 1e-5;       // first-derivative step
  int order = 2;            // 2 or 4
  bool richardson = false;  // extrapolate second-derivative stencils

  // Second-derivative stencils divide by step^2, so the roundoff term
  // eps*|f|/h^2 forces a wider step than the first-derivative optimum.
  double second_step() const { return std::max(step, 3e-4); }

  // Frame matrices come out of first differences of polynomial group laws
  // and are exact to roundoff; differentiating them again favors a wider
  // step (noise/h beats the vanishing truncation term).
  double frame_step() const { return std::max(step, 1e-4); }

  void validate() const {
    if (step < 1e-9) throw StepUnderflow("differentiation step below 1e-9");
    if (step > 1e-2) throw ValidationError("differentiation step above 1e-2");
    if (order != 2 && order != 4) throw ValidationError("stencil order must be 2 or 4");
  }
};

namespace stencil {

struct Node {
  int offset;     // in units of the step
  double weight;  // in units of 1/h (d1) or 1/h^2 (d2)
};

std::span<const Node> d1(int order);
std::span<const Node> d2(int order);

}  // namespace stencil

using ScalarField = std::function<Complex(const CVector&)>;
using RealField = std::function<double(const CVector&)>;
using VectorField = std::function<CVector(const CVector&)>;

// first derivative of a 1-real-parameter curve, with finiteness checks
Complex diff1(const std::function<Complex(double)>& g, double h, int order);
CVector diff1_vec(const std::function<CVector(double)>& g, double h, int order);
double diff2(const std::function<double(double)>& g, double h, int order, bool richardson);

struct WirtingerGrad {
  CVector dz, dzbar;
};

struct WirtingerDir {
  Complex dz;     // sum_i dir^i d/dz^i f
  Complex dzbar;  // sum_i conj(dir^i) d/dzbar^i f
};

struct WirtingerDirVec {
  CVector dz, dzbar;
};

WirtingerGrad wirtinger_grad(const ScalarField& f, const CVector& p, const DiffScheme& s);

// derivative along a complex direction: d/dzeta f(p + zeta*dir) at 0, plus
// the conjugate part; two 1d stencils regardless of the ambient dimension
WirtingerDir wirtinger_dir(const ScalarField& f, const CVector& p, const CVector& dir,
                           const DiffScheme& s, double step_override = 0);
WirtingerDirVec wirtinger_dir(const VectorField& f, const CVector& p, const CVector& dir,
                              const DiffScheme& s, double step_override = 0);

// mixed fiber Hessian (d/dw^i d/dwbar^j f) of a real-valued f, Hermitized
CMatrix wirtinger_hessian_mixed(const RealField& f, const CVector& w, const DiffScheme& s);

// d/dzeta d/dzetabar f(p + zeta*dir) at 0 for real f; equals one quarter of
// the 2d Laplacian in zeta = xi + i eta, so two pure second derivatives
double dzdzbar_dir(const RealField& f, const CVector& p, const CVector& dir, double step,
                   int order, bool richardson);

struct HolomorphyCheck {
  bool ok;
  double residual;  // max |d/dzbar component|
};

HolomorphyCheck check_holomorphic(const VectorField& f, const CVector& p, double tol,
                                  const DiffScheme& s);

// [X, Y]^j = X^i d/dz^i Y^j - Y^i d/dz^i X^j for holomorphic fields
CVector directional_bracket(const VectorField& X, const VectorField& Y, const CVector& p,
                            const DiffScheme& s);

}  // namespace lfv
