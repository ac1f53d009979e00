#pragma once

// Strongly pseudo-convex complex Minkowski norms on the Lie algebra, the
// fiber-model data every invariant metric restricts to. Two families:
//
//   hermitian  G(u) = sum_{p,q} H(p,q) u^p conj(u^q),   H Hermitian > 0
//   power      G(u) = (sum_q  w_q (u^q conj(u^q))^p)^(1/p),  p > 1, w_q > 0
//
// Both satisfy G(lambda u) = |lambda|^2 G(u). The power family's fiber
// Hessian is the closed two-term form
//
//   G_{q rbar} = p s^{1/p-1} w_q sigma_q^{p-1} delta_{qr}
//                - (p-1) s^{1/p-2} t_q conj(t_r)
//
// with sigma_q = |u^q|^2, s = sum w_q sigma_q^p, t_q = w_q sigma_q^{p-1}
// conj(u^q). It is positive definite except where some component u^q = 0
// (Cauchy-Schwarz gives H >= s^{1/p-1} diag(w_q sigma_q^{p-1})), so the
// hessian call rejects axis points and the sampling scan gates the rest.

#include <span>
#include <variant>

#include "core/types.hpp"
#include "core/wirtinger.hpp"

namespace lfv {

class MinkowskiNorm {
 public:
  // validates Hermitian positive-definiteness (Hermitizes the input first)
  static MinkowskiNorm hermitian(CMatrix H);
  static MinkowskiNorm pnorm(double p, RVector weights);

  int dim() const;
  bool is_hermitian() const { return std::holds_alternative<Hermitian>(form_); }
  std::string describe() const;

  double evaluate(const CVector& u) const;
  CVector gradient(const CVector& u) const;  // (d/du^q) G, closed form

  struct Hessian {
    CMatrix H;     // (d/du^q d/dubar^r) G
    CMatrix Hinv;
  };
  // closed form; throws NotPseudoConvex if the Hessian degenerates at u
  Hessian hessian(const CVector& u) const;

  // hermitian: H itself; power family: the closed two-term form
  CMatrix hessian_matrix(const CVector& u) const;

 private:
  struct Hermitian {
    CMatrix H;
  };
  struct Power {
    double p;
    RVector weights;
  };
  std::variant<Hermitian, Power> form_;

  explicit MinkowskiNorm(std::variant<Hermitian, Power> f) : form_(std::move(f)) {}
};

// Euler-type identities forced by |lambda|^2-homogeneity:
//   G_q u^q = G          and   u^p (d/du^p) G_{q rbar} = 0
// plus exact scaling for a fixed set of complex lambdas. Returns residual rows
// with the measured maxima over the samples.
std::vector<CheckRow> verify_homogeneity_identities(const MinkowskiNorm& nm,
                                                    std::span<const CVector> samples,
                                                    const DiffScheme& s);

struct PseudoConvexScan {
  bool ok;
  double min_eigenvalue;
  CVector worst;
};

// samples should lie on (or near) the unit sphere; used as a rejection gate
// before a norm enters any metric-level suite
PseudoConvexScan verify_pseudo_convex(const MinkowskiNorm& nm, std::span<const CVector> samples,
                                      double tol);

}  // namespace lfv
