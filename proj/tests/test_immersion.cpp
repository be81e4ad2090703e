#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <nlohmann/json.hpp>

#include "gcurv/gcurv.hpp"
#include "oracles.hpp"

using namespace gcurv;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Immersion> all_entries() {
  std::vector<Immersion> out;
  for (const auto& name : catalog_names()) out.push_back(catalog_get(name));
  return out;
}

}  // namespace

TEST(Jet, CircleAtZero) {
  const Jet2 j = evaluate_jet2(circle_r2(), std::vector<double>{0.0});
  EXPECT_NEAR(j.point[0], 1.0, 1e-15);
  EXPECT_NEAR(j.point[1], 0.0, 1e-15);
  EXPECT_NEAR(j.d1(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(j.d1(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(j.d2[0](0, 0), -1.0, 1e-15);
  EXPECT_NEAR(j.d2[1](0, 0), 0.0, 1e-15);
}

TEST(Jet, SphereEquator) {
  const Jet2 j = evaluate_jet2(sphere2_r3(), std::vector<double>{kPi / 2, 0.0});
  EXPECT_NEAR((j.point - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(j.d1.col(0).dot(j.d1.col(1)), 0.0, 1e-15);
  EXPECT_NEAR(j.d1.col(0).norm(), 1.0, 1e-15);
  EXPECT_NEAR(j.d1.col(1).norm(), 1.0, 1e-15);
}

TEST(Jet, ParaboloidAtOrigin) {
  const Jet2 j = evaluate_jet2(paraboloid_graph(), std::vector<double>{0.0, 0.0});
  EXPECT_NEAR(j.point.norm(), 0.0, 1e-15);
  Eigen::MatrixXd d1(3, 2);
  d1 << 1, 0, 0, 1, 0, 0;
  EXPECT_NEAR((j.d1 - d1).norm(), 0.0, 1e-15);
  EXPECT_NEAR((j.d2[2] - 2.0 * Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-15);
}

TEST(Jet, MatchesFiniteDifferencesOnEveryEntry) {
  Rng rng(11);
  for (const Immersion& imm : all_entries()) {
    for (int s = 0; s < 5; ++s) {
      const auto u = sample_point(imm, rng, 0.1);
      const Jet2 j = evaluate_jet2(imm, u);
      auto point = [&](const std::vector<double>& v) -> Eigen::VectorXd { return imm.jet2(v).point; };
      auto col = [&](int i) {
        return [&, i](const std::vector<double>& v) -> Eigen::VectorXd { return imm.jet2(v).d1.col(i); };
      };
      for (int i = 0; i < imm.m; ++i) {
        EXPECT_LT((oracle::central_diff(point, u, i, 1e-5) - j.d1.col(i)).norm(), 1e-6) << imm.name;
        const Eigen::VectorXd d2i = oracle::central_diff(col(i), u, i, 1e-5);
        for (int a = 0; a < imm.k; ++a) EXPECT_NEAR(d2i[a], j.d2[a](i, i), 1e-5) << imm.name;
      }
    }
  }
}

TEST(Jet, ThirdDerivativesMatchFiniteDifferences) {
  Rng rng(12);
  for (const Immersion& imm : {sphere2_r3(), torus_rev_r3(), sphere4_r5()}) {
    const auto u = sample_point(imm, rng, 0.1);
    const Jet3 j = evaluate_jet3(imm, u);
    for (int i = 0; i < imm.m; ++i) {
      for (int a = 0; a < imm.k; ++a) {
        auto hess_entry = [&](const std::vector<double>& v) -> Eigen::VectorXd {
          const Jet2 jj = imm.jet2(v);
          Eigen::VectorXd out(imm.m * imm.m);
          for (int p = 0; p < imm.m; ++p)
            for (int q = 0; q < imm.m; ++q) out[p * imm.m + q] = jj.d2[a](p, q);
          return out;
        };
        const Eigen::VectorXd fd = oracle::central_diff(hess_entry, u, i, 1e-5);
        for (int p = 0; p < imm.m; ++p)
          for (int q = 0; q < imm.m; ++q) EXPECT_NEAR(j.third(a, i, p, q), fd[p * imm.m + q], 1e-5) << imm.name;
      }
    }
  }
}

TEST(Jet, OutsideIntervalIsDomainError) {
  EXPECT_THROW(evaluate_jet2(sphere2_r3(), std::vector<double>{-0.5, 0.0}), DomainError);
  EXPECT_THROW(evaluate_jet2(paraboloid_graph(), std::vector<double>{0.5, 1.1}), DomainError);
  EXPECT_NO_THROW(evaluate_jet2(sphere2_r3(), std::vector<double>{1.0, 10.0}));
}

TEST(Jet, PeriodicAxesWrap) {
  const Immersion t = torus_rev_r3();
  const Jet2 a = evaluate_jet2(t, std::vector<double>{0.3, 1.0});
  const Jet2 b = evaluate_jet2(t, std::vector<double>{0.3 + 2 * kPi, 1.0 - 4 * kPi});
  EXPECT_NEAR((a.point - b.point).norm(), 0.0, 1e-12);
}

TEST(FundamentalForms, GraphOriginMetricIsIdentity) {
  const FrameData fd = fundamental_forms(evaluate_jet2(paraboloid_graph(), std::vector<double>{0.0, 0.0}));
  EXPECT_NEAR((fd.metric - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-15);
}

TEST(FundamentalForms, UnitSphereEquator) {
  const FrameData fd = fundamental_forms(evaluate_jet2(sphere2_r3(), std::vector<double>{kPi / 2, 0.0}));
  EXPECT_NEAR((fd.metric - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-15);
  // Second form with respect to the outward radial normal is -I.
  const double orient = fd.normal_frame.col(0).dot(Eigen::Vector3d(1, 0, 0));
  EXPECT_NEAR(std::abs(orient), 1.0, 1e-15);
  EXPECT_NEAR((orient * fd.second_form[0] + Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-14);
}

TEST(FundamentalForms, CliffordMetricIsHalfIdentity) {
  Rng rng(3);
  const Immersion c = clifford_torus_r4();
  for (int s = 0; s < 5; ++s) {
    const FrameData fd = fundamental_forms(evaluate_jet2(c, sample_point(c, rng)));
    EXPECT_NEAR((fd.metric - 0.5 * Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-15);
  }
}

TEST(FundamentalForms, FrameInvariantsOnRandomPoints) {
  Rng rng(5);
  for (const Immersion& imm : all_entries()) {
    for (int s = 0; s < 100; ++s) {
      const FrameData fd = fundamental_forms(evaluate_jet2(imm, sample_point(imm, rng)));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fd.metric);
      EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0) << imm.name;
      const Eigen::MatrixXd gram = fd.normal_frame.transpose() * fd.normal_frame;
      EXPECT_LT((gram - Eigen::MatrixXd::Identity(fd.n(), fd.n())).norm(), 1e-12) << imm.name;
      EXPECT_LT((fd.tangent.transpose() * fd.normal_frame).norm(), 1e-12) << imm.name;
      for (const auto& p : fd.second_form) EXPECT_LT((p - p.transpose()).norm(), 1e-12) << imm.name;
    }
  }
}

TEST(FundamentalForms, PoleIsDegenerate) {
  EXPECT_THROW(fundamental_forms(evaluate_jet2(sphere2_r3(), std::vector<double>{0.0, 0.3})),
               DegenerateImmersionError);
  EXPECT_THROW(fundamental_forms(evaluate_jet2(sphere4_r5(), std::vector<double>{1.0, kPi, 1.0, 0.0})),
               DegenerateImmersionError);
}

TEST(Catalog, DeclaredInvariants) {
  struct Row {
    const char* name;
    int m, k;
    std::optional<int> chi;
  };
  const Row rows[] = {{"circle_r2", 1, 2, 0},         {"circle_r3", 1, 3, 0},  {"sphere2_r3", 2, 3, 2},
                      {"sphere2_r4", 2, 4, 2},        {"torus_rev_r3", 2, 3, 0}, {"clifford_torus_r4", 2, 4, 0},
                      {"sphere4_r5", 4, 5, 2},        {"product_s2s2_r6", 4, 6, 4}, {"graph_poly", 2, 3, std::nullopt}};
  for (const Row& r : rows) {
    const Immersion imm = catalog_get(r.name);
    EXPECT_EQ(imm.name, r.name);
    EXPECT_EQ(imm.m, r.m) << r.name;
    EXPECT_EQ(imm.k, r.k) << r.name;
    EXPECT_EQ(imm.euler_char, r.chi) << r.name;
  }
}

TEST(Catalog, UnknownNameIsLookupError) { EXPECT_THROW(catalog_get("klein_bottle"), LookupError); }

TEST(Catalog, FamilyParameters) {
  const std::vector<double> p{3.0, 1.0};
  const Immersion t = catalog_get("torus_rev_r3", p);
  const Jet2 j = evaluate_jet2(t, std::vector<double>{0.0, 0.0});
  EXPECT_NEAR(j.point[0], 4.0, 1e-15);
  const std::vector<double> r{2.5};
  EXPECT_NEAR(evaluate_jet2(catalog_get("sphere2_r3", r), std::vector<double>{kPi / 2, 0.0}).point[0], 2.5, 1e-15);
}

TEST(TermFile, ParsesAndMatchesCatalogSphere) {
  const Immersion f = load_immersion_file(GCURV_DATA_DIR "/sphere_r3.json");
  const Immersion c = sphere2_r3();
  EXPECT_EQ(f.m, 2);
  EXPECT_EQ(f.k, 3);
  EXPECT_EQ(f.euler_char, 2);
  Rng rng(9);
  for (int s = 0; s < 10; ++s) {
    const auto u = sample_point(c, rng);
    const Jet2 a = evaluate_jet2(f, u);
    const Jet2 b = evaluate_jet2(c, u);
    EXPECT_LT((a.point - b.point).norm(), 1e-14);
    EXPECT_LT((a.d1 - b.d1).norm(), 1e-14);
    for (int k = 0; k < 3; ++k) EXPECT_LT((a.d2[k] - b.d2[k]).norm(), 1e-14);
    const Jet3 a3 = evaluate_jet3(f, u);
    const Jet3 b3 = evaluate_jet3(c, u);
    for (std::size_t i = 0; i < a3.d3.size(); ++i) EXPECT_NEAR(a3.d3[i], b3.d3[i], 1e-14);
  }
}

TEST(TermFile, ErrorsNameTheField) {
  const nlohmann::json good = nlohmann::json::parse(R"({
    "name": "line", "m": 1, "k": 2,
    "domain": [{"min": 0, "max": 1, "periodic": false}],
    "coordinates": [[{"coeff": 1, "factors": [1]}], [{"coeff": 2, "factors": [{"cos": 3}]}]]
  })");
  EXPECT_NO_THROW(parse_term_spec(good));

  auto expect_field = [](nlohmann::json j, const std::string& field) {
    try {
      parse_term_spec(j);
      ADD_FAILURE() << "expected a parse error at " << field;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.field(), field) << e.what();
    }
  };
  auto j = good;
  j.erase("m");
  expect_field(j, "m");
  j = good;
  j["coordinates"][1][0]["factors"][0] = {{"tan", 1}};
  expect_field(j, "coordinates[1][0].factors[0]");
  j = good;
  j["coordinates"].erase(1);
  expect_field(j, "coordinates");
  j = good;
  j["domain"][0]["max"] = "one";
  expect_field(j, "domain[0].max");
}
