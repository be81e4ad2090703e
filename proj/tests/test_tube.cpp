#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gcurv/gcurv.hpp"

using namespace gcurv;

namespace {

constexpr double kPi = std::numbers::pi;

NormalDirection radial_direction(const Immersion& base, const std::vector<double>& u, double sign) {
  const FrameData fd = fundamental_forms(evaluate_jet2(base, u));
  const Eigen::VectorXd p = evaluate_jet2(base, u).point;
  return NormalDirection::normalized(sign * (fd.normal_frame.transpose() * p));
}

}  // namespace

TEST(TubeBoundary, SphereSheetsAreConcentricSpheres) {
  const TubeBoundary tube = tube_boundary_immersion({sphere2_r3(), 0.1});
  ASSERT_EQ(tube.sheets.size(), 2u);
  Rng rng(1);
  std::vector<double> radii;
  for (const Immersion& sheet : tube.sheets) {
    EXPECT_EQ(sheet.m, 2);
    EXPECT_EQ(sheet.k, 3);
    const double r0 = evaluate_jet2(sheet, sample_point(sheet, rng)).point.norm();
    for (int s = 0; s < 10; ++s) EXPECT_NEAR(evaluate_jet2(sheet, sample_point(sheet, rng)).point.norm(), r0, 1e-14);
    radii.push_back(r0);
  }
  std::sort(radii.begin(), radii.end());
  EXPECT_NEAR(radii[0], 0.9, 1e-14);
  EXPECT_NEAR(radii[1], 1.1, 1e-14);
}

TEST(TubeBoundary, CircleTubeIsTorusOfRevolution) {
  const TubeBoundary tube = tube_boundary_immersion({circle_r3(), 0.1});
  ASSERT_EQ(tube.sheets.size(), 1u);
  const Immersion& t = tube.sheets[0];
  EXPECT_EQ(t.m, 2);
  EXPECT_EQ(t.k, 3);
  Rng rng(2);
  for (int s = 0; s < 20; ++s) {
    const Eigen::VectorXd p = evaluate_jet2(t, sample_point(t, rng)).point;
    const double ring = std::hypot(p[0], p[1]);
    EXPECT_NEAR(std::hypot(ring - 1.0, p[2]), 0.1, 1e-14);
  }
}

TEST(TubeBoundary, Sphere2R4TubeIsThreeDimensional) {
  const TubeBoundary tube = tube_boundary_immersion({sphere2_r4(), 0.05});
  ASSERT_EQ(tube.sheets.size(), 1u);
  EXPECT_EQ(tube.sheets[0].m, 3);
  EXPECT_EQ(tube.sheets[0].k, 4);
}

TEST(TubeBoundary, ReachAndSupportErrors) {
  EXPECT_THROW(tube_boundary_immersion({sphere2_r3(), 0.6}), ReachError);
  EXPECT_THROW(tube_boundary_immersion({sphere2_r3(), 0.0}), ReachError);
  EXPECT_THROW(tube_boundary_immersion({paraboloid_graph(), 0.1}), ReachError);
}

TEST(TubePoint, OuterSphereSheet) {
  const TubeBoundary tube = tube_boundary_immersion({sphere2_r3(), 0.1});
  const std::vector<double> u{1.0, 0.5};
  const TubePoint out = tube_point(tube, u, radial_direction(sphere2_r3(), u, 1.0));
  EXPECT_NEAR(out.point.norm(), 1.1, 1e-14);
  EXPECT_NEAR(out.classical_k, 1 / (1.1 * 1.1), 1e-13);
  EXPECT_NEAR(out.normal_jacobian, 1 / 1.21, 1e-14);
  const TubePoint in = tube_point(tube, u, radial_direction(sphere2_r3(), u, -1.0));
  EXPECT_NEAR(in.point.norm(), 0.9, 1e-14);
  EXPECT_NEAR(in.normal_jacobian, 1 / 0.81, 1e-14);
}

TEST(TubePoint, CircleTubeOutermostPoint) {
  const TubeBoundary tube = tube_boundary_immersion({circle_r3(), 0.1});
  const std::vector<double> u{0.8};
  const FrameData fd = fundamental_forms(evaluate_jet2(circle_r3(), u));
  const Eigen::VectorXd p = evaluate_jet2(circle_r3(), u).point;
  const TubePoint tp = tube_point(tube, u, NormalDirection::normalized(fd.normal_frame.transpose() * p));
  EXPECT_NEAR(tp.point.norm(), 1.1, 1e-14);
  EXPECT_NEAR(tp.classical_k, 1 / (0.1 * 1.1), 1e-10);
}

TEST(NormalJacobian, SmallEpsLimit) {
  Rng rng(3);
  const Immersion t = torus_rev_r3();
  const auto u = sample_point(t, rng);
  const NormalDirection nu = sample_normal_direction(1, rng);
  EXPECT_NEAR(normal_jacobian(TubeConfig{t, 1e-9}, u, nu), 1.0, 1e-8);
}

TEST(TubeIdentity, HypersurfaceReducesToBaseCurvature) {
  const TubeBoundary tube = tube_boundary_immersion({sphere2_r3(), 0.25});
  Rng rng(4);
  for (int s = 0; s < 10; ++s) {
    const IdentityCheck c = tube_identity_check(tube, sample_point(sphere2_r3(), rng), sample_normal_direction(1, rng));
    EXPECT_NEAR(c.rhs, 1.0, 1e-13);
    EXPECT_LT(c.residual, 1e-10);
  }
}

TEST(TubeIdentity, RandomPointsAtHalfReach) {
  Rng rng(5);
  for (const Immersion& base : {sphere2_r4(), circle_r3(), clifford_torus_r4(), torus_rev_r3(), sphere4_r5()}) {
    const TubeBoundary tube = tube_boundary_immersion({base, base.max_eps});
    for (int s = 0; s < 20; ++s) {
      const auto u = sample_point(base, rng);
      const NormalDirection nu = sample_normal_direction(base.codim(), rng);
      const IdentityCheck c = tube_identity_check(tube, u, nu);
      EXPECT_LT(c.relative(), 1e-6) << base.name;
      const SpectrumCheck sp = tube_spectrum_check(tube, u, nu);
      EXPECT_LT(sp.residual, 1e-6) << base.name;
    }
  }
}

TEST(TubeIdentity, CircleBothSidesNonzero) {
  const TubeBoundary tube = tube_boundary_immersion({circle_r3(), 0.1});
  const NormalDirection nu = NormalDirection::normalized(Eigen::Vector2d(0.6, 0.8));
  const IdentityCheck c = tube_identity_check(tube, std::vector<double>{1.3}, nu);
  EXPECT_GT(std::abs(c.lhs), 1.0);
  EXPECT_LT(c.residual, 1e-8);
}

TEST(TubeIdentity, CliffordFlatDirection) {
  // The radial direction of the first circle factor has det(Pi^nu) = 0.
  const Immersion c = clifford_torus_r4();
  const TubeBoundary tube = tube_boundary_immersion({c, 0.2});
  const FrameData fd = fundamental_forms(evaluate_jet2(c, std::vector<double>{0.0, 0.0}));
  const Eigen::Vector4d a(1, 0, 0, 0);
  const NormalDirection nu = NormalDirection::normalized(fd.normal_frame.transpose() * a);
  const IdentityCheck ch = tube_identity_check(tube, std::vector<double>{0.0, 0.0}, nu);
  EXPECT_NEAR(ch.rhs, 0.0, 1e-12);
  EXPECT_NEAR(ch.lhs, 0.0, 1e-10);
}

TEST(TubeSpectrum, Examples) {
  const TubeBoundary s4 = tube_boundary_immersion({sphere2_r4(), 0.05});
  Rng rng(6);
  const SpectrumCheck sp = tube_spectrum_check(s4, sample_point(sphere2_r4(), rng), sample_normal_direction(2, rng));
  int hits = 0;
  for (double e : sp.computed) hits += std::abs(e + 20.0) < 1e-6;
  EXPECT_EQ(hits, 1);

  const TubeBoundary s3 = tube_boundary_immersion({sphere2_r3(), 0.1});
  const std::vector<double> u{1.2, 2.0};
  const SpectrumCheck outer = tube_spectrum_check(s3, u, radial_direction(sphere2_r3(), u, 1.0));
  ASSERT_EQ(outer.computed.size(), 2u);
  for (double e : outer.computed) EXPECT_NEAR(e, -1 / 1.1, 1e-13);
}

TEST(TubeSpectrum, TangentialEigenvaluesConvergeLinearly) {
  const Immersion c = clifford_torus_r4();
  const std::vector<double> u{0.4, 1.3};
  const NormalDirection nu = NormalDirection::normalized(Eigen::Vector2d(0.8, -0.6));
  const FrameData fd = fundamental_forms(evaluate_jet2(c, u));
  const auto pi = orthonormal_second_form(fd);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(directional_form(pi, {nu.coeffs().data(), 2}));
  std::vector<double> errs;
  for (double eps : {0.1, 0.05, 0.025}) {
    const SpectrumCheck sp = tube_spectrum_check(tube_boundary_immersion({c, eps}), u, nu);
    std::vector<double> tangential;
    for (double e : sp.computed)
      if (std::abs(e + 1 / eps) > 1e-6) tangential.push_back(e);
    ASSERT_EQ(tangential.size(), 2u);
    std::sort(tangential.begin(), tangential.end());
    double err = 0.0;
    for (int i = 0; i < 2; ++i) err = std::max(err, std::abs(tangential[i] - eig.eigenvalues()[i]));
    errs.push_back(err);
  }
  EXPECT_NEAR(errs[0] / errs[1], 2.0, 0.3);
  EXPECT_NEAR(errs[1] / errs[2], 2.0, 0.3);
}

TEST(TubeTotal, Examples) {
  const TubeTotal s3 = tube_total_curvature(tube_boundary_immersion({sphere2_r3(), 0.1}));
  EXPECT_NEAR(s3.integral, 8 * kPi, 8 * kPi * 1e-3);
  EXPECT_NEAR(s3.expected, 8 * kPi, 1e-12);
  ASSERT_EQ(s3.sheet_integrals.size(), 2u);
  for (double v : s3.sheet_integrals) EXPECT_NEAR(v, 4 * kPi, 1e-8);

  const TubeTotal c3 = tube_total_curvature(tube_boundary_immersion({circle_r3(), 0.1}));
  EXPECT_NEAR(c3.integral, 0.0, 1e-6);
  EXPECT_EQ(c3.expected, 0.0);

  const TubeTotal s4 = tube_total_curvature(tube_boundary_immersion({sphere2_r4(), 0.05}), Resolution{24, 32});
  EXPECT_NEAR(s4.integral, -4 * kPi * kPi, 4 * kPi * kPi * 1e-3);
}

TEST(TubeTotal, DeterminantConsistencyOnSphere2R4) {
  // With nu = cos a x + sin a e4 the base factor is det(1 - eps Pi^nu) =
  // (1 + eps cos a)^2, so K^g sqrt(det g_tube) must equal
  // -eps^{-1} cos^2 a * eps * sin(theta) in the (theta, phi, a) chart.
  const double eps = 0.05;
  const TubeBoundary tube = tube_boundary_immersion({sphere2_r4(), eps});
  Rng rng(7);
  for (int s = 0; s < 10; ++s) {
    const auto u = sample_point(sphere2_r4(), rng);
    const NormalDirection nu = sample_normal_direction(2, rng);
    const TubePoint tp = tube_point(tube, u, nu);
    const double cos_a = tp.gauss_normal.head<3>().dot(tp.base_point.head<3>());
    const double njac = std::pow(1 + eps * cos_a, 2);
    EXPECT_NEAR(1 / tp.normal_jacobian, njac, 1e-13);
    const double vol = std::sqrt(tp.tube_fd.metric.determinant());
    EXPECT_NEAR(vol, eps * njac * std::sin(u[0]), 1e-12);
    EXPECT_NEAR(tp.classical_k * vol, -cos_a * cos_a * std::sin(u[0]), 1e-10);
  }
}

TEST(TubeTotal, UnknownChiUnsupported) {
  Immersion s = sphere2_r3();
  s.euler_char.reset();
  EXPECT_THROW(tube_total_curvature(tube_boundary_immersion({s, 0.1})), UnsupportedError);
}
