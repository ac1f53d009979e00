#pragma once

// Invariant frames on a group model and their complete lifts to T^{1,0}G.
//
// Columns of A(z) are the left-invariant frame U_j = A^i_j d/dz^i obtained by
// pushing the basis e_j forward along left translation; columns of C(z) give
// the right-invariant frame V_j the same way. B = A^{-1}, D = C^{-1}. The
// change of frame is V_j = psi^i_j U_i with psi = C B and phi = psi^{-1}.
//
// The complete lift of a holomorphic field X = f^i d/dz^i is
//   X~ = f^i d/dz^i + w^i (d/dz^i f^k) d/dw^k
// viewed at the fiber point (z, w).

#include "core/group_model.hpp"

namespace lfv {

// A^i_j(z) = d/dzeta^j [ multiply(z, zeta) ]^i at zeta = identity.
// Uses the model's closed-form frame when one is provided; otherwise
// differentiates the product with a pinned wide-step high-order scheme
// (the product is holomorphic, so only roundoff is at stake).
CMatrix left_frame(const GroupModel& m, const CVector& z, const DiffScheme& s);
// C^i_j(z) = d/dzeta^j [ multiply(zeta, z) ]^i at zeta = identity
CMatrix right_frame(const GroupModel& m, const CVector& z, const DiffScheme& s);

// the differentiation path unconditionally, as an oracle for the closed forms
CMatrix left_frame_numeric(const GroupModel& m, const CVector& z, const DiffScheme& s);
CMatrix right_frame_numeric(const GroupModel& m, const CVector& z, const DiffScheme& s);

struct FrameData {
  CMatrix A, B, C, D, psi, phi;
};

// throws SingularFrame if either frame fails to invert cleanly
FrameData frame_data(const GroupModel& m, const CVector& z, const DiffScheme& s);

enum class FrameSide { Left, Right };

struct LiftedField {
  CVector base;   // coefficients of d/dz^i
  CVector fiber;  // coefficients of d/dw^k
};

LiftedField lift_field(const GroupModel& m, FrameSide side, int j, const FiberPoint& p,
                       const DiffScheme& s);

// apply a lifted field to a scalar on T^{1,0}G (holomorphic components only)
Complex apply_lift(const LiftedField& X, const ScalarField& f_of_zw, const FiberPoint& p,
                   const DiffScheme& s);

// Jacobian of left translation by g at z: d/dz^j [ multiply(g, z) ]^i
CMatrix translation_jacobian(const GroupModel& m, const CVector& g, const CVector& z,
                             const DiffScheme& s);

// structure constants recovered from left-frame brackets at the identity
StructureConstants derived_constants(const GroupModel& m, const DiffScheme& s);

// independent oracle for psi = C B: the adjoint action
// Ad(g^{-1}) e_j = (L_{g^{-1}})_* (R_g)_* e_j via numerical pushforwards
CMatrix adjoint_inverse_matrix(const GroupModel& m, const CVector& g, const DiffScheme& s);

// The structural identities tying the two frames, their lifts and the
// structure constants together; each row is the max residual at z over the
// identity's free indices (fiber-dependent ones use two fixed generic fibers,
// the identities being linear in w):
//   frames.left-right-change       A = C phi and C = A psi
//   frames.left-bracket            [U_i, U_j] = c^k_{ij} U_k
//   frames.right-bracket           [V_i, V_j] = -c^k_{ij} V_k
//   frames.left-right-commute      [U_i, V_j] = 0
//   frames.change-derivative       U_i(psi^k_j) = psi^l_j c^k_{li}
//   frames.right-lift-split        V~_i = psi^j_i U~_j - c^k_{li} v^l d/dv^k
//   frames.lift-left-coordinates   U~_i u^j = c^j_{li} u^l,  u = B w
//   frames.lift-right-coordinates  V~_i v^j = -c^j_{li} v^l,  v = D w
VerificationReport verify_frame_identities(const GroupModel& m, const CVector& z, double tol,
                                           const DiffScheme& s);

}  // namespace lfv
