#pragma once

// Directional and generalized Gaussian curvature, the Gauss-equation Riemann
// tensor, its finite-difference intrinsic counterpart, and the Pfaffian
// density of the curvature forms.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gcurv/errors.hpp"
#include "gcurv/frame.hpp"
#include "gcurv/immersion.hpp"
#include "gcurv/quadrature.hpp"
#include "gcurv/sphere.hpp"

namespace gcurv {

// Unit vector in the normal space, in coordinates of a FrameData normal frame.
class NormalDirection {
 public:
  explicit NormalDirection(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 1 || std::abs(coeffs_.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("NormalDirection: coefficients must have unit norm");
    }
  }

  static NormalDirection normalized(const Eigen::VectorXd& v) { return NormalDirection(v / v.norm()); }

  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  int n() const { return static_cast<int>(coeffs_.size()); }

  Eigen::VectorXd ambient(const FrameData& fd) const { return fd.normal_frame * coeffs_; }

 private:
  Eigen::VectorXd coeffs_;
};

// Pi^nu = sum_s nu_s Pi^s in whatever tangent basis the forms are given.
inline Eigen::MatrixXd directional_form(std::span<const Eigen::MatrixXd> forms,
                                        std::span<const double> nu) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(forms[0].rows(), forms[0].cols());
  for (std::size_t s = 0; s < forms.size(); ++s) p += nu[s] * forms[s];
  return p;
}

// K^nu = det(Pi^nu) / det(I).
inline double directional_curvature(const FrameData& fd, const NormalDirection& nu) {
  if (nu.n() != fd.n()) throw std::invalid_argument("directional_curvature: codimension mismatch");
  const Eigen::MatrixXd p = directional_form(fd.second_form, {nu.coeffs().data(), static_cast<std::size_t>(nu.n())});
  return p.determinant() / fd.metric.determinant();
}

// (1 / omega_{n-1}) * sum_q w_q K^{nu_q}.
inline double generalized_curvature_quadrature(const FrameData& fd, const SphereRule& rule) {
  if (rule.n != fd.n()) throw std::invalid_argument("generalized_curvature_quadrature: rule/codimension mismatch");
  const double det_metric = fd.metric.determinant();
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::MatrixXd p = directional_form(fd.second_form, rule.node(q));
    sum += rule.weights[q] * p.determinant();
  }
  return sum / (det_metric * sphere_volume(fd.n() - 1));
}

// ---- permutation and moment tables -----------------------------------------

struct PermutationTable {
  std::vector<std::array<int, kMaxVars>> perms;
  std::vector<int> signs;
};

inline const PermutationTable& permutations(int m) {
  static const std::array<PermutationTable, kMaxVars + 1> tables = [] {
    std::array<PermutationTable, kMaxVars + 1> t;
    for (int mm = 1; mm <= kMaxVars; ++mm) {
      std::array<int, kMaxVars> p{};
      for (int i = 0; i < mm; ++i) p[i] = i;
      do {
        int inversions = 0;
        for (int i = 0; i < mm; ++i)
          for (int j = i + 1; j < mm; ++j) inversions += p[i] > p[j];
        t[mm].perms.push_back(p);
        t[mm].signs.push_back(inversions % 2 ? -1 : 1);
      } while (std::next_permutation(p.begin(), p.begin() + mm));
    }
    return t;
  }();
  if (m < 1 || m > kMaxVars) throw UnsupportedError("permutations: dimension out of range");
  return tables[m];
}

// Index tuples alpha in {0..n-1}^m whose monomial nu_{alpha_1}...nu_{alpha_m}
// has only even exponents, paired with its sphere integral.
struct MomentTerm {
  std::array<int, kMaxVars> alpha{};
  double moment = 0.0;
};

inline const std::vector<MomentTerm>& moment_terms(int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<MomentTerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({m, n});
  if (it != cache.end()) return it->second;

  std::vector<MomentTerm> terms;
  std::array<int, kMaxVars> alpha{};
  std::vector<int> exps(n);
  while (true) {
    std::fill(exps.begin(), exps.end(), 0);
    for (int t = 0; t < m; ++t) ++exps[alpha[t]];
    bool even = true;
    for (int e : exps) even = even && (e % 2 == 0);
    if (even) {
      std::vector<int> half(n);
      for (int s = 0; s < n; ++s) half[s] = exps[s] / 2;
      terms.push_back({alpha, sphere_moment(half)});
    }
    int t = 0;
    while (t < m && ++alpha[t] == n) alpha[t++] = 0;
    if (t == m) break;
  }
  return cache.emplace(std::make_pair(m, n), std::move(terms)).first->second;
}

// Permutation expansion of K_M in an orthonormal tangent basis:
//   K_M = (1/omega_{n-1}) sum_sigma sum_alpha (-1)^sigma prod_t Pi^{alpha_t}_{t sigma(t)} moment(alpha).
// Odd m has no even-exponent tuples, so the sum is exactly zero.
inline double generalized_curvature_moments(const FrameData& fd) {
  const int m = fd.m();
  const int n = fd.n();
  const auto& terms = moment_terms(m, n);
  if (terms.empty()) return 0.0;
  const auto pi = orthonormal_second_form(fd);
  const auto& perms = permutations(m);
  double sum = 0.0;
  for (const auto& term : terms) {
    double expansion = 0.0;
    for (std::size_t p = 0; p < perms.perms.size(); ++p) {
      double prod = perms.signs[p];
      for (int t = 0; t < m; ++t) prod *= pi[term.alpha[t]](t, perms.perms[p][t]);
      expansion += prod;
    }
    sum += term.moment * expansion;
  }
  return sum / sphere_volume(n - 1);
}

// ---- Riemann tensor --------------------------------------------------------

struct CurvatureTensor {
  int m = 0;
  std::vector<double> r;

  explicit CurvatureTensor(int dim = 0) : m(dim), r(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  double& operator()(int i, int j, int k, int l) { return r[((i * m + j) * m + k) * m + l]; }
  double operator()(int i, int j, int k, int l) const { return r[((i * m + j) * m + k) * m + l]; }

  double max_abs() const {
    double mx = 0.0;
    for (double v : r) mx = std::max(mx, std::abs(v));
    return mx;
  }
};

inline double max_abs_difference(const CurvatureTensor& a, const CurvatureTensor& b) {
  if (a.m != b.m) throw std::invalid_argument("max_abs_difference: dimension mismatch");
  double mx = 0.0;
  for (std::size_t i = 0; i < a.r.size(); ++i) mx = std::max(mx, std::abs(a.r[i] - b.r[i]));
  return mx;
}

// Gauss equation in the whitened orthonormal basis:
//   R_ijkl = sum_s Pi^s_il Pi^s_jk - Pi^s_ik Pi^s_jl.
inline CurvatureTensor gauss_equation_tensor(const FrameData& fd) {
  const int m = fd.m();
  const auto pi = orthonormal_second_form(fd);
  CurvatureTensor t(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double s = 0.0;
          for (const auto& p : pi) s += p(i, l) * p(j, k) - p(i, k) * p(j, l);
          t(i, j, k, l) = s;
        }
  return t;
}

// Rewrites coordinate components R(d_i, d_j, d_k, d_l) in the basis
// E_i = sum_j w(i, j) d_j.
inline CurvatureTensor change_basis(const CurvatureTensor& coord, const Eigen::MatrixXd& w) {
  const int m = coord.m;
  CurvatureTensor cur = coord;
  for (int slot = 0; slot < 4; ++slot) {
    CurvatureTensor next(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            std::array<int, 4> idx{i, j, k, l};
            double s = 0.0;
            for (int q = 0; q < m; ++q) {
              std::array<int, 4> src = idx;
              src[slot] = q;
              s += w(idx[slot], q) * cur(src[0], src[1], src[2], src[3]);
            }
            next(i, j, k, l) = s;
          }
    cur = std::move(next);
  }
  return cur;
}

inline constexpr double kFdStepFraction = 1e-4;

// Riemann tensor from the metric alone: metric from 1-jets on a stencil,
// Christoffel symbols by 5-point central differences of the metric, and R by
// 5-point central differences of the Christoffel symbols.
inline CurvatureTensor intrinsic_curvature_fd(const Immersion& imm, std::span<const double> u0) {
  const int m = imm.m;
  const std::vector<double> u = wrap_point(imm, u0);
  std::vector<double> h(m);
  for (int i = 0; i < m; ++i) {
    const Axis& ax = imm.domain[i];
    h[i] = kFdStepFraction * ax.length();
    if (!ax.periodic && (u[i] - 4 * h[i] <= ax.lo || u[i] + 4 * h[i] >= ax.hi)) {
      throw DomainError(imm.name + ": finite-difference stencil leaves the domain on axis " + std::to_string(i));
    }
  }

  using Point = std::vector<double>;
  auto metric_at = [&](const Point& x) -> Eigen::MatrixXd {
    const Jet2 jet = evaluate_jet2(imm, x);
    return jet.d1.transpose() * jet.d1;
  };
  auto shifted = [](Point x, int axis, double off) {
    x[axis] += off;
    return x;
  };
  // 5-point central difference of a vector-valued function along one axis.
  auto diff5 = [&](auto&& f, const Point& x, int axis) {
    const double hh = h[axis];
    auto a = f(shifted(x, axis, 2 * hh));
    auto b = f(shifted(x, axis, hh));
    auto c = f(shifted(x, axis, -hh));
    auto d = f(shifted(x, axis, -2 * hh));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (-a[i] + 8 * b[i] - 8 * c[i] + d[i]) / (12 * hh);
    return a;
  };
  auto metric_flat = [&](const Point& x) {
    const Eigen::MatrixXd g = metric_at(x);
    return std::vector<double>(g.data(), g.data() + g.size());
  };
  // gamma[(a * m + b) * m + c] = Gamma^a_{bc}
  auto christoffel = [&](const Point& x) {
    const Eigen::MatrixXd g = metric_at(x);
    const Eigen::MatrixXd ginv = g.inverse();
    std::vector<Eigen::MatrixXd> dg(m);
    for (int c = 0; c < m; ++c) {
      const auto flat = diff5(metric_flat, x, c);
      dg[c] = Eigen::Map<const Eigen::MatrixXd>(flat.data(), m, m);
    }
    std::vector<double> gamma(static_cast<std::size_t>(m) * m * m, 0.0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          double s = 0.0;
          for (int d = 0; d < m; ++d) s += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
          gamma[(a * m + b) * m + c] = 0.5 * s;
        }
    return gamma;
  };

  const auto gamma = christoffel(u);
  std::vector<std::vector<double>> dgamma(m);
  for (int c = 0; c < m; ++c) dgamma[c] = diff5(christoffel, u, c);
  auto G = [&](int a, int b, int c) { return gamma[(a * m + b) * m + c]; };
  auto dG = [&](int e, int a, int b, int c) { return dgamma[e][(a * m + b) * m + c]; };

  // R(d_c, d_d) d_b = Rup^a_{bcd} d_a
  auto rup = [&](int a, int b, int c, int d) {
    double s = dG(c, a, d, b) - dG(d, a, c, b);
    for (int e = 0; e < m; ++e) s += G(a, c, e) * G(e, d, b) - G(a, d, e) * G(e, c, b);
    return s;
  };

  const Eigen::MatrixXd g = metric_at(u);
  CurvatureTensor coord(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double s = 0.0;
          for (int a = 0; a < m; ++a) s += g(l, a) * rup(a, k, i, j);
          coord(i, j, k, l) = s;
        }
  return change_basis(coord, whitening(g));
}

// Coefficient of dV_M in Pff(-Omega / 2 pi) for an orthonormal-basis tensor:
//   (-1)^r sum_{tau, eta} (-1)^eta (-1)^tau / (2^{m+r} pi^r r!)
//          prod_t R_{eta(2t-1) eta(2t) tau(2t-1) tau(2t)}
inline double pfaffian_density(const CurvatureTensor& R) {
  const int m = R.m;
  if (m % 2 != 0) throw UnsupportedError("Pfaffian undefined for odd dimension");
  const int r = m / 2;
  const auto& perms = permutations(m);
  double sum = 0.0;
  for (std::size_t a = 0; a < perms.perms.size(); ++a) {
    const auto& eta = perms.perms[a];
    for (std::size_t b = 0; b < perms.perms.size(); ++b) {
      const auto& tau = perms.perms[b];
      double prod = perms.signs[a] * perms.signs[b];
      for (int t = 0; t < r; ++t) prod *= R(eta[2 * t], eta[2 * t + 1], tau[2 * t], tau[2 * t + 1]);
      sum += prod;
    }
  }
  double r_factorial = 1.0;
  for (int i = 2; i <= r; ++i) r_factorial *= i;
  const double coef = (r % 2 ? -1.0 : 1.0) /
                      (std::pow(2.0, m + r) * std::pow(std::numbers::pi, r) * r_factorial);
  return coef * sum;
}

struct CurvatureReport {
  double k_moments = 0.0;
  double k_quadrature = 0.0;
  double pfaffian_density = 0.0;
  double egregium_lhs = 0.0;  // (omega_{n-1} / omega_{k-1}) * k_moments
  double residual_moments_quadrature = 0.0;
  double residual_egregium = 0.0;             // |egregium_lhs - pfaffian_density|
  double residual_quadrature_pfaffian = 0.0;  // same with k_quadrature
};

// omega_{n-1} / omega_{k-1}
inline double egregium_factor(int m, int k) { return sphere_volume(k - m - 1) / sphere_volume(k - 1); }

inline CurvatureReport egregium_report(const FrameData& fd, int sphere_order = kDefaultSphereOrder) {
  if (fd.m() % 2 != 0) throw UnsupportedError("Pfaffian undefined for odd dimension");
  CurvatureReport rep;
  rep.k_moments = generalized_curvature_moments(fd);
  rep.k_quadrature = generalized_curvature_quadrature(fd, normal_sphere_rule(fd.n(), sphere_order));
  rep.pfaffian_density = pfaffian_density(gauss_equation_tensor(fd));
  const double factor = egregium_factor(fd.m(), fd.k());
  rep.egregium_lhs = factor * rep.k_moments;
  rep.residual_moments_quadrature = std::abs(rep.k_moments - rep.k_quadrature);
  rep.residual_egregium = std::abs(rep.egregium_lhs - rep.pfaffian_density);
  rep.residual_quadrature_pfaffian = std::abs(factor * rep.k_quadrature - rep.pfaffian_density);
  return rep;
}

inline CurvatureReport egregium_report(const Immersion& imm, std::span<const double> u,
                                       int sphere_order = kDefaultSphereOrder) {
  if (imm.m % 2 != 0) throw UnsupportedError("Pfaffian undefined for odd dimension");
  return egregium_report(fundamental_forms(evaluate_jet2(imm, u)), sphere_order);
}

}  // namespace gcurv
