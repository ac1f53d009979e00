#pragma once

// Concrete complex Lie groups in a single holomorphic chart centered at the
// identity (identity coordinates are the origin in every built-in model).
//
//   abelian(n)    componentwise addition on C^n
//   heisenberg3   (a,b)(a',b') with the single quadratic term a^1 b'^2
//   affine1       z . w = az + b in the chart (a-1, b), so the identity
//                 lands at the origin; valid while |z^1 + 1| stays away
//                 from zero

#include <functional>
#include <string>

#include "core/types.hpp"
#include "core/wirtinger.hpp"

namespace lfv {

// c(k,i,j) = c^k_{ij} from [e_i, e_j] = c^k_{ij} e_k
struct StructureConstants {
  int n = 0;
  Tensor3 c;

  explicit StructureConstants(int dim) : n(dim), c(dim) {}

  Complex operator()(int k, int i, int j) const { return c(k, i, j); }

  // antisymmetry must hold exactly, the Jacobi identity to roundoff
  void validate(double jacobi_tol = 1e-12) const;
  bool is_abelian() const { return c.max_abs() == 0.0; }
};

using MultiplyMap = std::function<CVector(const CVector&, const CVector&)>;

struct GroupModel {
  std::string name;
  int n = 0;
  CVector identity;
  MultiplyMap multiply;
  std::function<CVector(const CVector&)> inverse;
  StructureConstants constants{0};
  // closed-form frames; when provided they are used directly so frame values
  // carry only roundoff error, and the numeric path becomes a cross-check
  std::function<CMatrix(const CVector&)> analytic_left;
  std::function<CMatrix(const CVector&)> analytic_right;
  // chart-domain gate; throws SingularFrame when violated
  std::function<void(const CVector&)> require_chart;

  void check_chart(const CVector& z) const {
    if (static_cast<int>(z.size()) != n)
      throw ValidationError(name + ": point of wrong dimension");
    if (require_chart) require_chart(z);
  }

  bool is_abelian() const { return constants.is_abelian(); }
};

// "abelian" (with n_for_abelian), "abelian(k)", "heisenberg3", "affine1"
GroupModel builtin_model(const std::string& name, int n_for_abelian = 2);

// structural sanity of a model's data: identity laws, inverse law,
// associativity on seeded triples, holomorphy of the product, agreement of
// declared structure constants with left-frame brackets at the identity
std::vector<CheckRow> validate_model(const GroupModel& m, std::uint64_t seed,
                                     const DiffScheme& s);

}  // namespace lfv
