#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/curvature.hpp"
#include "core/rng.hpp"

using namespace lfv;

namespace {

CVector cvec(std::initializer_list<Complex> entries) {
  CVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const Complex& e : entries) v[i++] = e;
  return v;
}

const DiffScheme kScheme;

LeftInvariantMetric make_metric(const char* model, MinkowskiNorm nm) {
  return LeftInvariantMetric(builtin_model(model), std::move(nm), kScheme);
}

MinkowskiNorm identity_norm(int n) { return MinkowskiNorm::hermitian(CMatrix::Identity(n, n)); }

std::vector<FiberPoint> sample_points(const GroupModel& m, int count, std::uint64_t seed) {
  SampleStream st(seed, "curvature-samples");
  std::vector<FiberPoint> out;
  out.push_back({m.identity, st.fiber_sample(m.n)});
  while (static_cast<int>(out.size()) < count)
    out.push_back({st.complex_ball(m.n, m.identity, 0.5), st.fiber_sample(m.n)});
  return out;
}

}  // namespace

TEST_CASE("holomorphic sectional curvature vanishes on every builtin model") {
  struct Case {
    const char* model;
    bool quadratic;
  };
  for (const Case c : {Case{"abelian(2)", true}, Case{"abelian(2)", false},
                       Case{"heisenberg3", true}, Case{"heisenberg3", false},
                       Case{"affine1", true}, Case{"affine1", false}}) {
    CAPTURE(c.model);
    CAPTURE(c.quadratic);
    const GroupModel m = builtin_model(c.model);
    const LeftInvariantMetric g =
        c.quadratic ? make_metric(c.model, identity_norm(m.n))
                    : make_metric(c.model, MinkowskiNorm::pnorm(1.5, RVector::Ones(m.n)));
    const bool abelian = m.is_abelian();
    for (const FiberPoint& p : sample_points(m, 8, 7001)) {
      const CurvatureSample cs = curvature(g, p, kScheme);
      // the base fiber function over an abelian group is constant along the
      // probe line, so the stencils cancel to (near-exact) zero
      CHECK(std::abs(cs.K) < (abelian ? 1e-13 : 1e-4));
      CHECK(cs.imag_ratio < 1e-4);

      // K is assembled from R and the metric value
      const double G = g.value(p.z, p.w);
      CHECK(std::abs(cs.K - 2.0 * cs.R_contracted.real() / (G * G)) < 1e-12);
    }
  }
}

TEST_CASE("curvature is invariant under complex scaling of the fiber vector") {
  const LeftInvariantMetric g = make_metric("heisenberg3",
                                            MinkowskiNorm::pnorm(1.5, RVector::Ones(3)));
  SampleStream st(7002, "scale");
  const FiberPoint p{st.complex_ball(3, CVector::Zero(3), 0.5), st.fiber_sample(3)};
  const double k0 = curvature(g, p, kScheme).K;
  for (Complex lam : {Complex(2, 0), Complex(0, 1), Complex(0.5, 0.5)}) {
    const double k1 = curvature(g, FiberPoint{p.z, lam * p.w}, kScheme).K;
    CHECK(std::abs(k1 - k0) < 1e-4);
  }
}

TEST_CASE("torsion tensors at frozen points") {
  SUBCASE("heisenberg at the identity reproduces the structure constants") {
    const LeftInvariantMetric g = make_metric("heisenberg3", identity_norm(3));
    const FiberPoint p{CVector::Zero(3), cvec({Complex(2), Complex(3), Complex(4)})};
    const TorsionReport t = torsions(g, g.model(), p, kScheme);

    CHECK(std::abs(t.strong(2, 0, 1) - Complex(1)) < 1e-5);
    CHECK(std::abs(t.strong(2, 1, 0) + Complex(1)) < 1e-5);
    CHECK(std::abs(t.strong(0, 0, 1)) < 1e-5);
    // at the identity the frames are trivial and predicted = c^i_{jk}
    CHECK(std::abs(t.predicted(2, 0, 1) - Complex(1)) == 0.0);
    CHECK(t.strong_vs_predicted < 1e-5);

    // contracted = w^k (...): row i=2, column j=0 picks up w^1 * c(2,0,1)
    CHECK(std::abs(t.contracted(2, 0) - p.w[1]) < 1e-5);
    CHECK(std::abs(t.contracted(2, 1) + p.w[0]) < 1e-5);
    // weak = contracted against G_i: G_i = conj(w_i) for the identity form
    CHECK(std::abs(t.weak[0] - p.w[1] * std::conj(p.w[2])) < 1e-4);
  }

  SUBCASE("affine group carries the pole of its frame") {
    const LeftInvariantMetric g = make_metric("affine1", identity_norm(2));
    SampleStream st(7003, "affine-torsion");
    const FiberPoint p{st.complex_ball(2, CVector::Zero(2), 0.5), st.fiber_sample(2)};
    const TorsionReport t = torsions(g, g.model(), p, kScheme);
    const Complex pole = p.z[0] + 1.0;
    CHECK(std::abs(t.strong(1, 0, 1) - 1.0 / pole) < 1e-6);
    CHECK(std::abs(t.strong(1, 1, 0) + 1.0 / pole) < 1e-6);
    CHECK(std::abs(t.strong(0, 0, 1)) < 1e-6);
    CHECK(t.strong_vs_predicted < 1e-6);
  }

  SUBCASE("abelian torsions vanish identically") {
    const LeftInvariantMetric g = make_metric("abelian(2)", identity_norm(2));
    const FiberPoint p{cvec({Complex(0.2, 0.1), Complex(-0.1, 0.3)}),
                       cvec({Complex(1), Complex(1, 1)})};
    const TorsionReport t = torsions(g, g.model(), p, kScheme);
    CHECK(t.strong.max_abs() < 1e-12);
    CHECK(t.predicted.max_abs() == 0.0);
    CHECK(sup_norm(t.weak) < 1e-12);
  }
}

TEST_CASE("the torsion-flatness verdict separates abelian from non-abelian") {
  SUBCASE("abelian: all three flags hold with tiny residuals") {
    const GroupModel m = builtin_model("abelian(3)");
    const LeftInvariantMetric g = make_metric("abelian(3)",
                                              MinkowskiNorm::pnorm(1.5, RVector::Ones(3)));
    const auto pts = sample_points(m, 10, 7004);
    const KahlerVerdict v = kahler_verdict(g, m, pts, 1e-8, kScheme);
    CHECK(v.strongly);
    CHECK(v.kahler);
    CHECK(v.weakly);
    CHECK(v.flags_agree());
    CHECK(v.strong_residual < 1e-10);
    CHECK(v.kahler_residual < 1e-10);
    CHECK(v.weak_residual < 1e-10);
  }

  SUBCASE("non-abelian: all three fail together, with an order-one witness") {
    for (const char* name : {"heisenberg3", "affine1"}) {
      CAPTURE(name);
      const GroupModel m = builtin_model(name);
      const LeftInvariantMetric g = make_metric(name, identity_norm(m.n));
      const auto pts = sample_points(m, 10, 7005);
      const KahlerVerdict v = kahler_verdict(g, m, pts, 1e-4, kScheme);
      CHECK_FALSE(v.strongly);
      CHECK_FALSE(v.kahler);
      CHECK_FALSE(v.weakly);
      CHECK(v.flags_agree());
      CHECK(v.strong_residual > 0.1);
      CHECK(v.weak_residual > 1e-3);
      CHECK(v.strong_vs_predicted < 1e-4);
      CHECK(v.worst_weak.w.size() == m.n);
    }
  }
}

TEST_CASE("spray through either lifted frame matches the direct spray") {
  std::vector<LeftInvariantMetric> metrics;
  metrics.push_back(make_metric("heisenberg3", identity_norm(3)));
  metrics.push_back(make_metric("affine1", MinkowskiNorm::pnorm(1.5, RVector::Ones(2))));

  SampleStream st(7006, "lift-spray");
  for (const LeftInvariantMetric& g : metrics) {
    CAPTURE(g.model().name);
    const int n = g.dim();
    for (int rep = 0; rep < 3; ++rep) {
      const FiberPoint p{st.complex_ball(n, g.model().identity, 0.5), st.fiber_sample(n)};
      const SprayValue direct = spray(g, p, kScheme);
      const LiftedSprays lifted = spray_via_lift(g.model(), p, kScheme);

      CHECK(sup_norm(CVector(lifted.via_left.base - p.w)) < 1e-7);
      CHECK(sup_norm(CVector(lifted.via_right.base - p.w)) < 1e-7);
      CHECK(sup_norm(CVector(lifted.via_left.fiber - direct.fiber)) < 1e-5);
      CHECK(sup_norm(CVector(lifted.via_right.fiber - direct.fiber)) < 1e-5);
      CHECK(sup_norm(CVector(lifted.via_left.fiber - lifted.via_right.fiber)) < 1e-5);
    }
  }

  // frozen heisenberg value: fiber = (0, 0, w1 w2)
  const FiberPoint p{CVector::Zero(3), cvec({Complex(2), Complex(3), Complex(4)})};
  const LiftedSprays lifted = spray_via_lift(builtin_model("heisenberg3"), p, kScheme);
  CHECK(std::abs(lifted.via_left.fiber[2] - Complex(6)) < 1e-6);
  CHECK(std::abs(lifted.via_right.fiber[2] - Complex(6)) < 1e-6);
}
