#pragma once

// The boundary of an eps-tube around a submanifold as a hypersurface
// immersion F(u, y) = X(u) + eps * sum_i y_i nu_i(u), y in S^{n-1}, and the
// pointwise identities relating its Gauss-map curvature to the base.
//
// The normal frame nu_i is rebuilt at every base point with the greedy pivot
// rule and then differentiated through Gram-Schmidt with the pivots held
// fixed, so jets are exact derivatives of a locally smooth parametrization.
// Pivots may switch between nodes; the fibre integral is unaffected because
// a change of frame only rotates the fibre sphere.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "gcurv/curvature.hpp"
#include "gcurv/errors.hpp"
#include "gcurv/frame.hpp"
#include "gcurv/immersion.hpp"
#include "gcurv/integrate.hpp"
#include "gcurv/quadrature.hpp"
#include "gcurv/sphere.hpp"

namespace gcurv {

struct TubeConfig {
  Immersion base;
  double eps = 0.0;
};

inline void validate_tube_config(const TubeConfig& cfg) {
  const int n = cfg.base.codim();
  if (n < 1 || n > 3) throw UnsupportedError("tube: codimension " + std::to_string(n) + " unsupported");
  if (!cfg.base.jet3) throw UnsupportedError("tube: base immersion has no third-order jets");
  if (!(cfg.eps > 0.0)) throw ReachError("tube: eps must be positive");
  if (cfg.eps > cfg.base.max_eps) {
    throw ReachError("tube: eps " + std::to_string(cfg.eps) + " exceeds the reach bound " +
                     std::to_string(cfg.base.max_eps) + " of " + cfg.base.name);
  }
}

// One immersion per sheet: n = 1 gives the +nu and -nu sheets, n >= 2 a
// single sheet with extra fibre coordinates (n = 2: angle; n = 3: polar,
// azimuth).
struct TubeBoundary {
  TubeConfig cfg;
  std::vector<Immersion> sheets;
};

namespace detail {

using J2 = Taylor2<double>;

struct TubeBaseJets {
  std::uint64_t owner = 0;
  std::array<double, kMaxVars> u{};
  AmbientVec<J2> point;
  std::vector<AmbientVec<J2>> normals;
};

inline std::uint64_t next_tube_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter++;
}

// Jets of X and of the normal frame at a base point, as functions of all
// `num_vars` sheet variables (the first m being the base parameters).
inline const TubeBaseJets& tube_base_jets(const Immersion& base, std::uint64_t owner, std::span<const double> ub,
                                          int num_vars) {
  thread_local TubeBaseJets cache;
  const int m = base.m;
  const int k = base.k;
  if (cache.owner == owner && std::equal(ub.begin(), ub.end(), cache.u.begin())) return cache;

  const Jet3 jet = base.jet3(ub);
  cache.owner = owner;
  std::copy(ub.begin(), ub.end(), cache.u.begin());
  for (int a = 0; a < k; ++a) {
    J2 p(jet.point[a]);
    p.nv = static_cast<std::uint8_t>(num_vars);
    for (int i = 0; i < m; ++i) {
      p.g[i] = jet.d1(a, i);
      for (int j = 0; j < m; ++j) p.hess(i, j) = jet.d2[a](i, j);
    }
    cache.point[a] = p;
  }
  std::vector<AmbientVec<J2>> tangents(m);
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < k; ++a) {
      J2 t(jet.d1(a, j));
      t.nv = static_cast<std::uint8_t>(num_vars);
      for (int i = 0; i < m; ++i) {
        t.g[i] = jet.d2[a](j, i);
        for (int l = 0; l < m; ++l) t.hess(i, l) = jet.third(a, j, i, l);
      }
      tangents[j][a] = t;
    }
  }
  const auto pivots = choose_normal_pivots(jet.d1);
  cache.normals = normal_frame_from_pivots(std::move(tangents), k, pivots);
  return cache;
}

// Fibre point y(theta) in R^n as jets in the fibre variables.
inline std::vector<J2> fibre_point(int n, int sheet_sign, std::span<const double> theta, int first_var, int num_vars) {
  using std::cos;
  using std::sin;
  if (n == 1) return {J2(static_cast<double>(sheet_sign))};
  if (n == 2) {
    const J2 t = J2::variable(theta[0], first_var, num_vars);
    return {cos(t), sin(t)};
  }
  const J2 a = J2::variable(theta[0], first_var, num_vars);
  const J2 b = J2::variable(theta[1], first_var + 1, num_vars);
  const J2 sa = sin(a);
  return {sa * cos(b), sa * sin(b), cos(a)};
}

}  // namespace detail

inline TubeBoundary tube_boundary_immersion(const TubeConfig& cfg) {
  validate_tube_config(cfg);
  const Immersion& base = cfg.base;
  const int m = base.m;
  const int k = base.k;
  const int n = base.codim();
  const int dim = m + n - 1;
  if (dim > kMaxVars) throw UnsupportedError("tube: too many parameters");
  const double eps = cfg.eps;
  const std::uint64_t owner = detail::next_tube_id();
  auto base_ptr = std::make_shared<const Immersion>(base);

  TubeBoundary tube;
  tube.cfg = cfg;
  const std::vector<int> signs = n == 1 ? std::vector<int>{1, -1} : std::vector<int>{1};
  for (int sign : signs) {
    Immersion sheet;
    sheet.name = base.name + "_tube" + (n == 1 ? (sign > 0 ? "_plus" : "_minus") : "");
    sheet.m = dim;
    sheet.k = k;
    sheet.domain = base.domain;
    if (n == 2) sheet.domain.push_back({0.0, 2.0 * std::numbers::pi, true});
    if (n == 3) {
      sheet.domain.push_back({0.0, std::numbers::pi, false});
      sheet.domain.push_back({0.0, 2.0 * std::numbers::pi, true});
    }
    sheet.params = {{"eps", eps}};
    sheet.jet2 = [base_ptr, owner, sign, m, k, n, dim, eps](std::span<const double> u) {
      using detail::J2;
      const auto& bj = detail::tube_base_jets(*base_ptr, owner, u.subspan(0, m), dim);
      const auto y = detail::fibre_point(n, sign, u.subspan(m), m, dim);
      Jet2 jet;
      jet.point.resize(k);
      jet.d1.resize(k, dim);
      jet.d2.assign(k, Eigen::MatrixXd(dim, dim));
      for (int a = 0; a < k; ++a) {
        J2 offset(0.0);
        for (int i = 0; i < n; ++i) offset = offset + y[i] * bj.normals[i][a];
        const J2 f = bj.point[a] + eps * offset;
        jet.point[a] = f.v;
        for (int i = 0; i < dim; ++i) {
          jet.d1(a, i) = f.g[i];
          for (int j = 0; j < dim; ++j) jet.d2[a](i, j) = f.hess(i, j);
        }
      }
      return jet;
    };
    tube.sheets.push_back(std::move(sheet));
  }
  return tube;
}

// Hypersurface curvature K^g = det(Pi^g) / det(I) of a tube sheet, with g the
// unit normal given in ambient coordinates.
inline double classical_curvature(const FrameData& tube_fd, const Eigen::VectorXd& gauss_normal) {
  Eigen::VectorXd c = tube_fd.normal_frame.transpose() * gauss_normal;
  return directional_curvature(tube_fd, NormalDirection::normalized(c));
}

// 1 / det(1 - eps Pi^nu) with Pi^nu in an orthonormal tangent basis.
inline double normal_jacobian(const FrameData& base_fd, const NormalDirection& nu, double eps) {
  const auto pi = orthonormal_second_form(base_fd);
  const Eigen::MatrixXd p = directional_form(pi, {nu.coeffs().data(), static_cast<std::size_t>(nu.n())});
  const double det = (Eigen::MatrixXd::Identity(p.rows(), p.cols()) - eps * p).determinant();
  if (!(det > 1e-12)) throw ReachError("normal jacobian: 1 - eps Pi^nu is singular (eps beyond reach)");
  return 1.0 / det;
}

inline double normal_jacobian(const TubeConfig& cfg, std::span<const double> u, const NormalDirection& nu) {
  return normal_jacobian(fundamental_forms(evaluate_jet2(cfg.base, u)), nu, cfg.eps);
}

struct TubePoint {
  std::vector<double> u;            // base parameters
  Eigen::VectorXd nu_hat;           // normal-frame coordinates of nu
  int sheet = 0;
  std::vector<double> sheet_params;  // (u, fibre chart coordinates)
  Eigen::VectorXd point;            // p + eps nu
  Eigen::VectorXd base_point;
  Eigen::VectorXd gauss_normal;     // nu in ambient coordinates
  double classical_k = 0.0;         // K^g of the tube
  double normal_jacobian = 0.0;
  FrameData base_fd;
  FrameData tube_fd;
};

inline TubePoint tube_point(const TubeBoundary& tube, std::span<const double> u, const NormalDirection& nu) {
  const Immersion& base = tube.cfg.base;
  const int n = base.codim();
  if (nu.n() != n) throw std::invalid_argument("tube_point: normal direction has wrong size");
  TubePoint tp;
  tp.u = wrap_point(base, u);
  tp.nu_hat = nu.coeffs();
  const Jet2 bj = evaluate_jet2(base, tp.u);
  tp.base_fd = fundamental_forms(bj);
  tp.base_point = bj.point;
  tp.gauss_normal = nu.ambient(tp.base_fd);

  tp.sheet_params = tp.u;
  const auto& c = tp.nu_hat;
  if (n == 1) {
    tp.sheet = c[0] > 0 ? 0 : 1;
  } else if (n == 2) {
    tp.sheet_params.push_back(std::atan2(c[1], c[0]));
  } else {
    tp.sheet_params.push_back(std::acos(std::clamp(c[2], -1.0, 1.0)));
    tp.sheet_params.push_back(std::atan2(c[1], c[0]));
  }
  const Jet2 tj = evaluate_jet2(tube.sheets[tp.sheet], tp.sheet_params);
  tp.point = tj.point;
  tp.tube_fd = fundamental_forms(tj);
  tp.classical_k = classical_curvature(tp.tube_fd, tp.gauss_normal);
  tp.normal_jacobian = normal_jacobian(tp.base_fd, nu, tube.cfg.eps);
  return tp;
}

struct IdentityCheck {
  double lhs = 0.0;  // K^g / NJ
  double rhs = 0.0;  // (-1)^{n-1} eps^{-(n-1)} K^nu
  double residual = 0.0;

  double relative() const { return residual / std::max({1.0, std::abs(lhs), std::abs(rhs)}); }
};

inline IdentityCheck tube_identity_check(const TubeBoundary& tube, std::span<const double> u,
                                         const NormalDirection& nu) {
  const TubePoint tp = tube_point(tube, u, nu);
  const int n = tube.cfg.base.codim();
  IdentityCheck out;
  out.lhs = tp.classical_k / tp.normal_jacobian;
  const double sign = (n - 1) % 2 ? -1.0 : 1.0;
  out.rhs = sign * directional_curvature(tp.base_fd, nu) / std::pow(tube.cfg.eps, n - 1);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

struct SpectrumCheck {
  std::vector<double> computed;   // shape-operator eigenvalues of the tube, ascending
  std::vector<double> predicted;  // lambda_i / (1 - eps lambda_i) and -1/eps (n-1 times)
  double residual = 0.0;          // max |computed_i - predicted_i| after sorting
};

inline SpectrumCheck tube_spectrum_check(const TubeBoundary& tube, std::span<const double> u,
                                         const NormalDirection& nu) {
  const TubePoint tp = tube_point(tube, u, nu);
  const double eps = tube.cfg.eps;
  const int n = tube.cfg.base.codim();

  const double orient = tp.tube_fd.normal_frame.col(0).dot(tp.gauss_normal) > 0 ? 1.0 : -1.0;
  const Eigen::MatrixXd w = whitening(tp.tube_fd.metric);
  const Eigen::MatrixXd shape = orient * (w * tp.tube_fd.second_form[0] * w.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tube_eig(shape);

  const auto pi = orthonormal_second_form(tp.base_fd);
  const Eigen::MatrixXd pnu = directional_form(pi, {nu.coeffs().data(), static_cast<std::size_t>(n)});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> base_eig(pnu);

  SpectrumCheck out;
  for (int i = 0; i < tube_eig.eigenvalues().size(); ++i) out.computed.push_back(tube_eig.eigenvalues()[i]);
  for (int i = 0; i < base_eig.eigenvalues().size(); ++i) {
    const double lam = base_eig.eigenvalues()[i];
    out.predicted.push_back(lam / (1.0 - eps * lam));
  }
  for (int i = 0; i < n - 1; ++i) out.predicted.push_back(-1.0 / eps);
  std::sort(out.computed.begin(), out.computed.end());
  std::sort(out.predicted.begin(), out.predicted.end());
  for (std::size_t i = 0; i < out.computed.size(); ++i) {
    out.residual = std::max(out.residual, std::abs(out.computed[i] - out.predicted[i]));
  }
  return out;
}

struct TubeTotal {
  std::vector<double> sheet_integrals;
  double integral = 0.0;  // integral of K^g over all sheets
  double expected = 0.0;  // (-1)^{k-1} omega_{k-1} chi
  double residual = 0.0;
};

// The Gauss normal at a sheet node is (F - X(u)) / eps, pointing away from
// the base; for odd k-1 the sign of K^g depends on this choice, which is the
// one the (-1)^{k-1} factor assumes.
inline TubeTotal tube_total_curvature(const TubeBoundary& tube, std::optional<Resolution> resolution = std::nullopt,
                                      int workers = 0) {
  const Immersion& base = tube.cfg.base;
  if (!base.euler_char) throw UnsupportedError("tube total curvature needs a known Euler characteristic");
  const double eps = tube.cfg.eps;
  const int m = base.m;
  auto base_ptr = std::make_shared<const Immersion>(base);
  NodeFn field = [base_ptr, eps, m](std::span<const double> u, const Jet2& jet) {
    const Jet2 bj = base_ptr->jet2(u.subspan(0, m));
    const Eigen::VectorXd g = (jet.point - bj.point) / eps;
    return classical_curvature(fundamental_forms(jet), g);
  };
  TubeTotal out;
  for (const Immersion& sheet : tube.sheets) {
    const QuadratureGrid grid = make_grid(sheet, resolution.value_or(default_resolution(sheet.m)));
    out.sheet_integrals.push_back(integrate_scalar(sheet, field, grid, workers));
    out.integral += out.sheet_integrals.back();
  }
  const double sign = (base.k - 1) % 2 ? -1.0 : 1.0;
  out.expected = sign * sphere_volume(base.k - 1) * *base.euler_char;
  out.residual = std::abs(out.integral - out.expected);
  return out;
}

}  // namespace gcurv
