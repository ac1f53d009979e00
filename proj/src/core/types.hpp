#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfv {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteEvaluation : Error { using Error::Error; };
struct StepUnderflow : Error { using Error::Error; };
struct UnknownModel : Error { using Error::Error; };
struct SingularFrame : Error { using Error::Error; };
struct NotPseudoConvex : Error { using Error::Error; };
struct DegenerateFiber : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// points

inline bool all_finite(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

inline bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

inline double sup_norm(const CVector& v) {
  double m = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

inline double sup_norm(const CMatrix& a) {
  double m = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

// a base point z together with a nonzero fiber vector w in T^{1,0}
struct FiberPoint {
  CVector z;
  CVector w;

  static constexpr double default_w_min = 1e-3;

  // metrics are smooth only away from the zero section; reject fibers that
  // are numerically too close to it instead of regularizing
  void validate(double w_min = default_w_min) const {
    if (z.size() != w.size())
      throw ValidationError("fiber point: base and fiber dimension mismatch");
    if (!all_finite(z) || !all_finite(w))
      throw NonFiniteEvaluation("fiber point: non-finite coordinates");
    if (sup_norm(w) < w_min)
      throw DegenerateFiber("fiber vector below w_min = " + std::to_string(w_min));
  }
};

// ---------------------------------------------------------------------------
// rank-3 tensor with n^3 complex entries, index order chosen per use site

class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), v_(static_cast<size_t>(n) * n * n, Complex(0, 0)) {}

  int dim() const { return n_; }

  Complex& operator()(int a, int b, int c) { return v_[idx(a, b, c)]; }
  const Complex& operator()(int a, int b, int c) const { return v_[idx(a, b, c)]; }

  double max_abs() const {
    double m = 0;
    for (const auto& x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  Tensor3& operator-=(const Tensor3& o) {
    for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }

  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }

 private:
  size_t idx(int a, int b, int c) const {
    return (static_cast<size_t>(a) * n_ + b) * n_ + c;
  }
  int n_ = 0;
  std::vector<Complex> v_;
};

// ---------------------------------------------------------------------------
// one measured residual with its pass criterion

struct CheckRow {
  enum class Cmp { LE, GT };  // pass iff value <= tol, resp. value > tol

  std::string id;
  double value = 0;
  double tolerance = 0;
  Cmp cmp = Cmp::LE;
  std::optional<FiberPoint> worst;  // sample attaining `value`, if sampled

  bool pass() const { return cmp == Cmp::LE ? value <= tolerance : value > tolerance; }
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRow> rows;
  std::string error;  // non-empty if the suite aborted with an exception
  double runtime_ms = 0;

  bool pass() const {
    if (!error.empty()) return false;
    for (const auto& r : rows)
      if (!r.pass()) return false;
    return true;
  }
};

}  // namespace lfv
