#include "core/group_model.hpp"

#include <cmath>

namespace lfv {

void StructureConstants::validate(double jacobi_tol) const {
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (c(k, i, j) != -c(k, j, i))
          throw ValidationError("structure constants: antisymmetry violated");

  // sum over cyclic (i,j,l): c^m_{ij} c^k_{ml} + cyc = 0
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
          Complex acc(0, 0);
          for (int m = 0; m < n; ++m)
            acc += c(m, i, j) * c(k, m, l) + c(m, j, l) * c(k, m, i) + c(m, l, i) * c(k, m, j);
          if (std::abs(acc) > jacobi_tol)
            throw ValidationError("structure constants: Jacobi identity violated");
        }
      }
    }
  }
}

namespace {

GroupModel make_abelian(int n) {
  if (n < 1) throw ValidationError("abelian model needs dimension >= 1");
  GroupModel m;
  m.name = "abelian(" + std::to_string(n) + ")";
  m.n = n;
  m.identity = CVector::Zero(n);
  m.multiply = [](const CVector& a, const CVector& b) -> CVector { return a + b; };
  m.inverse = [](const CVector& z) -> CVector { return -z; };
  m.constants = StructureConstants(n);
  m.analytic_left = [n](const CVector&) -> CMatrix { return CMatrix::Identity(n, n); };
  m.analytic_right = m.analytic_left;
  return m;
}

GroupModel make_heisenberg3() {
  GroupModel m;
  m.name = "heisenberg3";
  m.n = 3;
  m.identity = CVector::Zero(3);
  m.multiply = [](const CVector& a, const CVector& b) -> CVector {
    CVector r(3);
    r[0] = a[0] + b[0];
    r[1] = a[1] + b[1];
    r[2] = a[2] + b[2] + a[0] * b[1];
    return r;
  };
  m.inverse = [](const CVector& z) -> CVector {
    CVector r(3);
    r[0] = -z[0];
    r[1] = -z[1];
    r[2] = -z[2] + z[0] * z[1];
    return r;
  };
  m.constants = StructureConstants(3);
  m.constants.c(2, 0, 1) = Complex(1, 0);   // [e_1, e_2] = e_3
  m.constants.c(2, 1, 0) = Complex(-1, 0);
  m.analytic_left = [](const CVector& z) -> CMatrix {
    CMatrix A = CMatrix::Identity(3, 3);
    A(2, 1) = z[0];
    return A;
  };
  m.analytic_right = [](const CVector& z) -> CMatrix {
    CMatrix C = CMatrix::Identity(3, 3);
    C(2, 0) = z[1];
    return C;
  };
  return m;
}

GroupModel make_affine1() {
  GroupModel m;
  m.name = "affine1";
  m.n = 2;
  m.identity = CVector::Zero(2);
  m.multiply = [](const CVector& x, const CVector& y) -> CVector {
    CVector r(2);
    r[0] = (x[0] + 1.0) * (y[0] + 1.0) - 1.0;
    r[1] = (x[0] + 1.0) * y[1] + x[1];
    return r;
  };
  m.inverse = [](const CVector& z) -> CVector {
    CVector r(2);
    r[0] = 1.0 / (z[0] + 1.0) - 1.0;
    r[1] = -z[1] / (z[0] + 1.0);
    return r;
  };
  m.constants = StructureConstants(2);
  m.constants.c(1, 0, 1) = Complex(1, 0);   // [e_1, e_2] = e_2
  m.constants.c(1, 1, 0) = Complex(-1, 0);
  m.analytic_left = [](const CVector& z) -> CMatrix {
    return (z[0] + 1.0) * CMatrix::Identity(2, 2);
  };
  m.analytic_right = [](const CVector& z) -> CMatrix {
    CMatrix C = CMatrix::Identity(2, 2);
    C(0, 0) = z[0] + 1.0;
    C(1, 0) = z[1];
    return C;
  };
  m.require_chart = [](const CVector& z) {
    if (std::abs(z[0] + 1.0) < 1e-3)
      throw SingularFrame("affine1: left chart boundary, |z1 + 1| below 1e-3");
  };
  return m;
}

}  // namespace

GroupModel builtin_model(const std::string& name, int n_for_abelian) {
  if (name == "heisenberg3") return make_heisenberg3();
  if (name == "affine1") return make_affine1();
  if (name == "abelian") return make_abelian(n_for_abelian);
  if (name.rfind("abelian(", 0) == 0 && name.back() == ')') {
    const std::string inner = name.substr(8, name.size() - 9);
    try {
      return make_abelian(std::stoi(inner));
    } catch (const std::invalid_argument&) {
      throw UnknownModel("bad abelian dimension: " + name);
    }
  }
  throw UnknownModel("unknown group model: " + name +
                     " (known: abelian(n), heisenberg3, affine1)");
}

}  // namespace lfv
