#include "core/minkowski.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace lfv {

MinkowskiNorm MinkowskiNorm::hermitian(CMatrix H) {
  if (H.rows() != H.cols() || H.rows() == 0)
    throw ValidationError("hermitian norm: matrix must be square and nonempty");
  CMatrix sym = 0.5 * (H + H.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0)
    throw NotPseudoConvex("hermitian norm: matrix is not positive definite");
  return MinkowskiNorm(Hermitian{std::move(sym)});
}

MinkowskiNorm MinkowskiNorm::pnorm(double p, RVector weights) {
  if (!(p > 1.0)) throw ValidationError("power norm: p must exceed 1");
  if (weights.size() == 0) throw ValidationError("power norm: weights must be nonempty");
  if (weights.minCoeff() <= 0) throw ValidationError("power norm: weights must be positive");
  return MinkowskiNorm(Power{p, std::move(weights)});
}

int MinkowskiNorm::dim() const {
  if (const auto* h = std::get_if<Hermitian>(&form_)) return static_cast<int>(h->H.rows());
  return static_cast<int>(std::get<Power>(form_).weights.size());
}

std::string MinkowskiNorm::describe() const {
  if (is_hermitian()) return "hermitian";
  std::ostringstream os;
  os << "pnorm(p=" << std::get<Power>(form_).p << ")";
  return os.str();
}

namespace {

void check_dim(const MinkowskiNorm& nm, const CVector& u) {
  if (static_cast<int>(u.size()) != nm.dim())
    throw ValidationError("norm evaluated at vector of wrong dimension");
}

}  // namespace

double MinkowskiNorm::evaluate(const CVector& u) const {
  check_dim(*this, u);
  if (const auto* h = std::get_if<Hermitian>(&form_)) {
    return (u.transpose() * h->H * u.conjugate()).value().real();
  }
  const auto& pw = std::get<Power>(form_);
  double s = 0;
  for (int q = 0; q < u.size(); ++q) s += pw.weights[q] * std::pow(std::norm(u[q]), pw.p);
  return std::pow(s, 1.0 / pw.p);
}

CVector MinkowskiNorm::gradient(const CVector& u) const {
  check_dim(*this, u);
  if (const auto* h = std::get_if<Hermitian>(&form_)) return h->H * u.conjugate();
  const auto& pw = std::get<Power>(form_);
  const int n = static_cast<int>(u.size());
  double s = 0;
  CVector t(n);
  for (int q = 0; q < n; ++q) {
    const double sigma = std::norm(u[q]);
    s += pw.weights[q] * std::pow(sigma, pw.p);
    t[q] = pw.weights[q] * std::pow(sigma, pw.p - 1.0) * std::conj(u[q]);
  }
  return std::pow(s, 1.0 / pw.p - 1.0) * t;
}

CMatrix MinkowskiNorm::hessian_matrix(const CVector& u) const {
  check_dim(*this, u);
  if (const auto* h = std::get_if<Hermitian>(&form_)) return h->H;
  const auto& pw = std::get<Power>(form_);
  const int n = static_cast<int>(u.size());
  double s = 0;
  CVector t(n);
  RVector diag(n);
  for (int q = 0; q < n; ++q) {
    const double sigma = std::norm(u[q]);
    const double sig_pm1 = std::pow(sigma, pw.p - 1.0);
    s += pw.weights[q] * sig_pm1 * sigma;
    t[q] = pw.weights[q] * sig_pm1 * std::conj(u[q]);
    diag[q] = pw.weights[q] * sig_pm1;
  }
  const double s1 = std::pow(s, 1.0 / pw.p - 1.0);
  const double s2 = std::pow(s, 1.0 / pw.p - 2.0);
  CMatrix H = (-(pw.p - 1.0) * s2) * (t * t.adjoint());
  for (int q = 0; q < n; ++q) H(q, q) += pw.p * s1 * diag[q];
  return H;
}

MinkowskiNorm::Hessian MinkowskiNorm::hessian(const CVector& u) const {
  CMatrix H = hessian_matrix(u);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0))
    throw NotPseudoConvex("norm Hessian degenerates at the given fiber vector");
  return {H, H.inverse()};
}

std::vector<CheckRow> verify_homogeneity_identities(const MinkowskiNorm& nm,
                                                    std::span<const CVector> samples,
                                                    const DiffScheme& s) {
  const int n = nm.dim();
  const Complex lambdas[] = {{2, 0}, {0, 1}, {1, 1}, {-3, 0}};

  double scaling = 0, euler = 0, hess_contraction = 0;
  CVector worst_scaling, worst_euler, worst_contraction;

  for (const CVector& u : samples) {
    const double g = nm.evaluate(u);

    for (Complex lam : lambdas) {
      const double lhs = nm.evaluate(lam * u);
      const double rel = std::abs(lhs - std::norm(lam) * g) / std::max(1.0, std::abs(g));
      if (rel >= scaling) scaling = rel, worst_scaling = u;
    }

    // G_q u^q = G, gradient from the closed form
    const Complex contracted = (nm.gradient(u).transpose() * u).value();
    const double eul = std::abs(contracted - g) / std::max(1.0, std::abs(g));
    if (eul >= euler) euler = eul, worst_euler = u;

    // u^p (d/du^p) G_{q rbar} = 0: differentiate each Hessian entry along u
    auto entry_field = [&](int q, int r) {
      return ScalarField([&nm, q, r](const CVector& v) { return nm.hessian_matrix(v)(q, r); });
    };
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        const Complex d = wirtinger_dir(entry_field(q, r), u, u, s).dz;
        if (std::abs(d) >= hess_contraction) hess_contraction = std::abs(d), worst_contraction = u;
      }
    }
  }

  auto row = [](std::string id, double v, double tol, CVector at) {
    CheckRow r{std::move(id), v, tol, CheckRow::Cmp::LE, std::nullopt};
    if (at.size()) r.worst = FiberPoint{CVector::Zero(at.size()), at};
    return r;
  };
  return {
      row("minkowski.scaling", scaling, 1e-12, worst_scaling),
      row("minkowski.euler-gradient", euler, 1e-8, worst_euler),
      row("minkowski.hessian-zero-degree", hess_contraction, 1e-5, worst_contraction),
  };
}

PseudoConvexScan verify_pseudo_convex(const MinkowskiNorm& nm, std::span<const CVector> samples,
                                      double tol) {
  double min_eig = std::numeric_limits<double>::infinity();
  CVector worst;
  for (const CVector& u : samples) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(nm.hessian_matrix(u), Eigen::EigenvaluesOnly);
    const double m = es.eigenvalues().minCoeff();
    if (m < min_eig) {
      min_eig = m;
      worst = u;
    }
  }
  return {min_eig > tol, min_eig, worst};
}

}  // namespace lfv
