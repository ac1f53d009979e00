#include "core/frames.hpp"

#include <cmath>

#include "core/rng.hpp"

namespace lfv {

namespace {

// holomorphic products have no truncation concerns worth a small h, so the
// numeric frame path pins a wide high-order scheme to keep roundoff near
// machine level; frame noise feeds every metric evaluation downstream
DiffScheme frame_numeric_scheme(const DiffScheme& s) {
  DiffScheme wide = s;
  wide.step = std::max(s.step, 1e-3);
  wide.order = 4;
  wide.richardson = true;
  return wide;
}

CMatrix frame_by_differentiation(const GroupModel& m, const CVector& z, const DiffScheme& s,
                                 bool left) {
  m.check_chart(z);
  const int n = m.n;
  const DiffScheme wide = frame_numeric_scheme(s);
  CMatrix F(n, n);
  CVector dir = CVector::Zero(n);
  for (int j = 0; j < n; ++j) {
    dir.setZero();
    dir[j] = Complex(1, 0);
    VectorField f = left ? VectorField([&m, &z](const CVector& zeta) { return m.multiply(z, zeta); })
                         : VectorField([&m, &z](const CVector& zeta) { return m.multiply(zeta, z); });
    F.col(j) = wirtinger_dir(f, m.identity, dir, wide).dz;
  }
  return F;
}

CMatrix checked_inverse(const CMatrix& M, const std::string& what) {
  if (std::abs(M.determinant()) < 1e-10)
    throw SingularFrame(what + " is numerically singular");
  return M.inverse();
}

// fixed generic fibers for the identities that are linear in w
std::vector<CVector> generic_fibers(int n) {
  CVector w1 = CVector::Ones(n);
  CVector w2(n);
  for (int j = 0; j < n; ++j) w2[j] = Complex(0.4 + 0.1 * j, 0.3 - 0.07 * j);
  return {w1, w2};
}

}  // namespace

CMatrix left_frame(const GroupModel& m, const CVector& z, const DiffScheme& s) {
  if (m.analytic_left) {
    m.check_chart(z);
    return m.analytic_left(z);
  }
  return frame_by_differentiation(m, z, s, true);
}

CMatrix left_frame_numeric(const GroupModel& m, const CVector& z, const DiffScheme& s) {
  return frame_by_differentiation(m, z, s, true);
}

CMatrix right_frame_numeric(const GroupModel& m, const CVector& z, const DiffScheme& s) {
  return frame_by_differentiation(m, z, s, false);
}

CMatrix right_frame(const GroupModel& m, const CVector& z, const DiffScheme& s) {
  if (m.analytic_right) {
    m.check_chart(z);
    return m.analytic_right(z);
  }
  return frame_by_differentiation(m, z, s, false);
}

FrameData frame_data(const GroupModel& m, const CVector& z, const DiffScheme& s) {
  FrameData f;
  f.A = left_frame(m, z, s);
  f.C = right_frame(m, z, s);
  f.B = checked_inverse(f.A, "left frame at " + m.name);
  f.D = checked_inverse(f.C, "right frame at " + m.name);
  f.psi = f.C * f.B;
  f.phi = checked_inverse(f.psi, "frame change at " + m.name);
  return f;
}

LiftedField lift_field(const GroupModel& m, FrameSide side, int j, const FiberPoint& p,
                       const DiffScheme& s) {
  p.validate();
  m.check_chart(p.z);
  const bool left = side == FrameSide::Left;
  VectorField column = [&m, &s, j, left](const CVector& z) -> CVector {
    return (left ? left_frame(m, z, s) : right_frame(m, z, s)).col(j);
  };
  LiftedField X;
  X.base = column(p.z);
  // w^i d/dz^i of the frame column; the column entries are exact to roundoff,
  // so differentiate with the wide frame step
  X.fiber = wirtinger_dir(column, p.z, p.w, s, s.frame_step()).dz;
  return X;
}

Complex apply_lift(const LiftedField& X, const ScalarField& f_of_zw, const FiberPoint& p,
                   const DiffScheme& s) {
  const int n = static_cast<int>(p.z.size());
  CVector packed(2 * n), dir(2 * n);
  packed << p.z, p.w;
  dir << X.base, X.fiber;
  return wirtinger_dir(f_of_zw, packed, dir, s).dz;
}

CMatrix translation_jacobian(const GroupModel& m, const CVector& g, const CVector& z,
                             const DiffScheme& s) {
  m.check_chart(z);
  const int n = m.n;
  CMatrix J(n, n);
  CVector dir = CVector::Zero(n);
  VectorField f = [&m, &g](const CVector& zeta) { return m.multiply(g, zeta); };
  for (int j = 0; j < n; ++j) {
    dir.setZero();
    dir[j] = Complex(1, 0);
    J.col(j) = wirtinger_dir(f, z, dir, s).dz;
  }
  return J;
}

StructureConstants derived_constants(const GroupModel& m, const DiffScheme& s) {
  const int n = m.n;
  StructureConstants out(n);
  auto field = [&m, &s](int i) {
    return VectorField(
        [&m, &s, i](const CVector& z) -> CVector { return left_frame(m, z, s).col(i); });
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const CVector br = directional_bracket(field(i), field(j), m.identity, s);
      for (int k = 0; k < n; ++k) {
        out.c(k, i, j) = br[k];
        out.c(k, j, i) = -br[k];
      }
    }
  }
  return out;
}

CMatrix adjoint_inverse_matrix(const GroupModel& m, const CVector& g, const DiffScheme& s) {
  // (R_g)_* at the identity is the right frame at g; then push forward with
  // the Jacobian of left translation by g^{-1}, evaluated at g
  const CMatrix Rg = right_frame(m, g, s);
  const CMatrix Lginv = translation_jacobian(m, m.inverse(g), g, s);
  return Lginv * Rg;
}

VerificationReport verify_frame_identities(const GroupModel& m, const CVector& z, double tol,
                                           const DiffScheme& s) {
  VerificationReport rep;
  rep.suite = "frame-identities";
  const int n = m.n;
  const FrameData F = frame_data(m, z, s);
  const auto& c = m.constants;
  const auto fibers = generic_fibers(n);

  auto add = [&](std::string id, double value, std::optional<CVector> w = std::nullopt) {
    CheckRow r{std::move(id), value, tol, CheckRow::Cmp::LE, std::nullopt};
    r.worst = FiberPoint{z, w ? *w : CVector::Zero(n)};
    rep.rows.push_back(std::move(r));
  };

  add("frames.left-right-change",
      std::max(sup_norm(CMatrix(F.A - F.C * F.phi)), sup_norm(CMatrix(F.C - F.A * F.psi))));

  auto left_col = [&](int i) {
    return VectorField(
        [&m, &s, i](const CVector& q) -> CVector { return left_frame(m, q, s).col(i); });
  };
  auto right_col = [&](int i) {
    return VectorField(
        [&m, &s, i](const CVector& q) -> CVector { return right_frame(m, q, s).col(i); });
  };

  double left_br = 0, right_br = 0, mixed_br = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i < j) {
        CVector lhs = directional_bracket(left_col(i), left_col(j), z, s);
        for (int k = 0; k < n; ++k) lhs -= c(k, i, j) * F.A.col(k);
        left_br = std::max(left_br, sup_norm(lhs));

        CVector rhs = directional_bracket(right_col(i), right_col(j), z, s);
        for (int k = 0; k < n; ++k) rhs += c(k, i, j) * F.C.col(k);
        right_br = std::max(right_br, sup_norm(rhs));
      }
      mixed_br = std::max(
          mixed_br, sup_norm(directional_bracket(left_col(i), right_col(j), z, s)));
    }
  }
  add("frames.left-bracket", left_br);
  add("frames.right-bracket", right_br);
  add("frames.left-right-commute", mixed_br);

  // U_i(psi^k_j) = psi^l_j c^k_{li}; psi entries are ratios of exact frames,
  // so the wide frame step applies
  VectorField psi_flat = [&m, &s, n](const CVector& q) -> CVector {
    const CMatrix A = left_frame(m, q, s);
    const CMatrix psi = right_frame(m, q, s) * checked_inverse(A, "left frame");
    return CVector(Eigen::Map<const CVector>(psi.data(), n * n));
  };
  double chg = 0;
  for (int i = 0; i < n; ++i) {
    const CVector dpsi = wirtinger_dir(psi_flat, z, F.A.col(i), s, s.frame_step()).dz;
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        Complex want(0, 0);
        for (int l = 0; l < n; ++l) want += F.psi(l, j) * c(k, l, i);
        chg = std::max(chg, std::abs(dpsi[k + n * j] - want));  // column-major map
      }
    }
  }
  add("frames.change-derivative", chg);

  double split = 0, lift_u = 0, lift_v = 0;
  for (const CVector& w : fibers) {
    const FiberPoint p{z, w};
    const CVector v = F.D * w;

    std::vector<LiftedField> lifted_left(n), lifted_right(n);
    for (int i = 0; i < n; ++i) {
      lifted_left[i] = lift_field(m, FrameSide::Left, i, p, s);
      lifted_right[i] = lift_field(m, FrameSide::Right, i, p, s);
    }

    for (int i = 0; i < n; ++i) {
      // V~_i = psi^j_i U~_j - c^k_{li} v^l d/dv^k with d/dv^k = C^p_k d/dw^p
      CVector base = -lifted_right[i].base;
      CVector fiber = -lifted_right[i].fiber;
      for (int j = 0; j < n; ++j) {
        base += F.psi(j, i) * lifted_left[j].base;
        fiber += F.psi(j, i) * lifted_left[j].fiber;
      }
      for (int k = 0; k < n; ++k) {
        Complex coef(0, 0);
        for (int l = 0; l < n; ++l) coef += c(k, l, i) * v[l];
        fiber -= coef * F.C.col(k);
      }
      split = std::max({split, sup_norm(base), sup_norm(fiber)});

      // lifted frames acting on the algebra coordinates u = B w, v = D w
      for (int j = 0; j < n; ++j) {
        ScalarField u_j = [&m, &s, j, n](const CVector& packed) {
          const CVector zz = packed.head(n), ww = packed.tail(n);
          const CMatrix B = checked_inverse(left_frame(m, zz, s), "left frame");
          return Complex((B * ww)[j]);
        };
        ScalarField v_j = [&m, &s, j, n](const CVector& packed) {
          const CVector zz = packed.head(n), ww = packed.tail(n);
          const CMatrix D = checked_inverse(right_frame(m, zz, s), "right frame");
          return Complex((D * ww)[j]);
        };
        const CVector u = F.B * w;
        Complex want_u(0, 0), want_v(0, 0);
        for (int l = 0; l < n; ++l) {
          want_u += c(j, l, i) * u[l];
          want_v -= c(j, l, i) * v[l];
        }
        lift_u = std::max(lift_u, std::abs(apply_lift(lifted_left[i], u_j, p, s) - want_u));
        lift_v = std::max(lift_v, std::abs(apply_lift(lifted_right[i], v_j, p, s) - want_v));
      }
    }
  }
  add("frames.right-lift-split", split, fibers[1]);
  add("frames.lift-left-coordinates", lift_u, fibers[1]);
  add("frames.lift-right-coordinates", lift_v, fibers[1]);

  return rep;
}

std::vector<CheckRow> validate_model(const GroupModel& m, std::uint64_t seed,
                                     const DiffScheme& s) {
  const int n = m.n;
  SampleStream stream(seed, "model-validation");
  std::vector<CVector> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(stream.complex_ball(n, m.identity, 0.5));

  double id_left = 0, id_right = 0, inverse_law = 0, assoc = 0, holo = 0;
  for (const CVector& z : pts) {
    id_left = std::max(id_left, sup_norm(CVector(m.multiply(m.identity, z) - z)));
    id_right = std::max(id_right, sup_norm(CVector(m.multiply(z, m.identity) - z)));
    const CVector zi = m.inverse(z);
    inverse_law = std::max({inverse_law,
                            sup_norm(CVector(m.multiply(z, zi) - m.identity)),
                            sup_norm(CVector(m.multiply(zi, z) - m.identity))});

    VectorField in_second = [&m, &z](const CVector& q) { return m.multiply(z, q); };
    VectorField in_first = [&m, &z](const CVector& q) { return m.multiply(q, z); };
    holo = std::max({holo, check_holomorphic(in_second, z, 1.0, s).residual,
                     check_holomorphic(in_first, z, 1.0, s).residual});
  }
  for (size_t i = 0; i + 2 < pts.size(); i += 3) {
    const CVector &a = pts[i], &b = pts[i + 1], &cc = pts[i + 2];
    assoc = std::max(assoc, sup_norm(CVector(m.multiply(m.multiply(a, b), cc) -
                                             m.multiply(a, m.multiply(b, cc)))));
  }

  const StructureConstants derived = derived_constants(m, s);
  double cdiff = 0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        cdiff = std::max(cdiff, std::abs(derived(k, i, j) - m.constants(k, i, j)));

  // right-invariant frame bracket at the identity carries the opposite sign
  double right_at_e = 0;
  auto right_col = [&](int i) {
    return VectorField(
        [&m, &s, i](const CVector& q) -> CVector { return right_frame(m, q, s).col(i); });
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      CVector br = directional_bracket(right_col(i), right_col(j), m.identity, s);
      for (int k = 0; k < n; ++k) br[k] += m.constants(k, i, j);
      right_at_e = std::max(right_at_e, sup_norm(br));
    }
  }

  auto row = [](std::string id, double v, double tol) {
    return CheckRow{std::move(id), v, tol, CheckRow::Cmp::LE, std::nullopt};
  };
  std::vector<CheckRow> rows = {
      row("model.identity-left", id_left, 1e-12),
      row("model.identity-right", id_right, 1e-12),
      row("model.inverse-law", inverse_law, 1e-10),
      row("model.associativity", assoc, 1e-8),
      row("model.multiply-holomorphic", holo, 1e-6),
      row("model.derived-constants", cdiff, 1e-6),
      row("model.right-bracket-at-identity", right_at_e, 1e-6),
  };
  if (m.analytic_left || m.analytic_right) {
    double frame_gap = 0;
    for (const CVector& z : pts) {
      if (m.analytic_left)
        frame_gap = std::max(
            frame_gap, sup_norm(CMatrix(m.analytic_left(z) - left_frame_numeric(m, z, s))));
      if (m.analytic_right)
        frame_gap = std::max(
            frame_gap, sup_norm(CMatrix(m.analytic_right(z) - right_frame_numeric(m, z, s))));
    }
    rows.push_back(row("model.analytic-frames", frame_gap, 1e-8));
  }
  return rows;
}

}  // namespace lfv
