#pragma once

// Parametrized closed submanifolds of R^k and their exact jets.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcurv/errors.hpp"
#include "gcurv/taylor.hpp"

namespace gcurv {

inline constexpr int kMaxAmbient = 8;

// Point, first partials (k x m) and second partials of a parametrization.
// d2[a] is the m x m Hessian of ambient coordinate a.
struct Jet2 {
  Eigen::VectorXd point;
  Eigen::MatrixXd d1;
  std::vector<Eigen::MatrixXd> d2;

  int m() const { return static_cast<int>(d1.cols()); }
  int k() const { return static_cast<int>(d1.rows()); }
};

// Jet2 plus third partials, needed to differentiate the normal frame.
struct Jet3 : Jet2 {
  std::vector<double> d3;  // k * m * m * m, row-major in (a, i, j, l)

  double third(int a, int i, int j, int l) const {
    const int mm = m();
    return d3[((a * mm + i) * mm + j) * mm + l];
  }
};

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  double length() const { return hi - lo; }
};

using Jet2Fn = std::function<Jet2(std::span<const double>)>;
using Jet3Fn = std::function<Jet3(std::span<const double>)>;
using ScalarFieldFn = std::function<double(std::span<const double>)>;

struct Immersion {
  std::string name;
  int m = 0;
  int k = 0;
  std::vector<Axis> domain;
  Jet2Fn jet2;
  Jet3Fn jet3;  // empty when third derivatives are unavailable
  std::optional<int> euler_char;
  ScalarFieldFn reference_curvature;  // closed-form K_M, if known
  double max_eps = 0.0;               // safe tube radius; 0 disables tubes
  std::vector<std::pair<std::string, double>> params;

  int codim() const { return k - m; }
};

// Wraps periodic axes into [lo, hi) and rejects points outside the
// non-periodic intervals.
inline std::vector<double> wrap_point(const Immersion& imm, std::span<const double> u) {
  if (static_cast<int>(u.size()) != imm.m) {
    throw DomainError(imm.name + ": expected " + std::to_string(imm.m) +
                      " parameters, got " + std::to_string(u.size()));
  }
  std::vector<double> w(u.begin(), u.end());
  for (int i = 0; i < imm.m; ++i) {
    const Axis& ax = imm.domain[i];
    if (!std::isfinite(w[i])) throw DomainError(imm.name + ": non-finite parameter");
    if (ax.periodic) {
      double t = std::fmod(w[i] - ax.lo, ax.length());
      if (t < 0) t += ax.length();
      w[i] = ax.lo + t;
    } else {
      const double slack = 1e-12 * ax.length();
      if (w[i] < ax.lo - slack || w[i] > ax.hi + slack) {
        throw DomainError(imm.name + ": parameter " + std::to_string(i) + " = " +
                          std::to_string(w[i]) + " outside [" + std::to_string(ax.lo) +
                          ", " + std::to_string(ax.hi) + "]");
      }
    }
  }
  return w;
}

inline Jet2 evaluate_jet2(const Immersion& imm, std::span<const double> u) {
  const auto w = wrap_point(imm, u);
  return imm.jet2(w);
}

inline Jet3 evaluate_jet3(const Immersion& imm, std::span<const double> u) {
  if (!imm.jet3) throw UnsupportedError(imm.name + ": third derivatives unavailable");
  const auto w = wrap_point(imm, u);
  return imm.jet3(w);
}

namespace detail {

// Runs a generic evaluator `f(span<const T> u, span<T> x)` on second-order
// jets seeded at u.
template <class F>
Jet2 jet2_from(const F& f, int m, int k, std::span<const double> u) {
  using T = Taylor2<double>;
  std::array<T, kMaxVars> vars;
  for (int i = 0; i < m; ++i) vars[i] = T::variable(u[i], i, m);
  std::array<T, kMaxAmbient> x;
  f(std::span<const T>(vars.data(), m), std::span<T>(x.data(), k));

  Jet2 jet;
  jet.point.resize(k);
  jet.d1.resize(k, m);
  jet.d2.assign(k, Eigen::MatrixXd(m, m));
  for (int a = 0; a < k; ++a) {
    jet.point[a] = x[a].v;
    for (int i = 0; i < m; ++i) {
      jet.d1(a, i) = x[a].g[i];
      for (int j = 0; j < m; ++j) jet.d2[a](i, j) = x[a].hess(i, j);
    }
  }
  return jet;
}

// Third-order jets via Taylor1<Taylor2>: the outer gradient entry i is the
// second-order jet of the partial derivative along axis i.
template <class F>
Jet3 jet3_from(const F& f, int m, int k, std::span<const double> u) {
  using Inner = Taylor2<double>;
  using T = Taylor1<Inner>;
  std::array<T, kMaxVars> vars;
  for (int i = 0; i < m; ++i) {
    vars[i] = T(Inner::variable(u[i], i, m), static_cast<std::uint8_t>(m));
    vars[i].g[i] = Inner(1.0);
  }
  std::array<T, kMaxAmbient> x;
  f(std::span<const T>(vars.data(), m), std::span<T>(x.data(), k));

  Jet3 jet;
  jet.point.resize(k);
  jet.d1.resize(k, m);
  jet.d2.assign(k, Eigen::MatrixXd(m, m));
  jet.d3.assign(static_cast<std::size_t>(k) * m * m * m, 0.0);
  for (int a = 0; a < k; ++a) {
    jet.point[a] = x[a].v.v;
    for (int i = 0; i < m; ++i) {
      jet.d1(a, i) = x[a].v.g[i];
      for (int j = 0; j < m; ++j) {
        jet.d2[a](i, j) = x[a].v.hess(i, j);
        for (int l = 0; l < m; ++l) {
          jet.d3[((a * m + i) * m + j) * m + l] = x[a].g[i].hess(j, l);
        }
      }
    }
  }
  return jet;
}

}  // namespace detail

// Builds an immersion from a generic evaluator. `f` must accept
// (std::span<const T>, std::span<T>) for T = double and the Taylor types.
template <class F>
Immersion make_immersion(std::string name, int m, int k, std::vector<Axis> domain, F f) {
  if (m < 1 || m > kMaxVars) throw UnsupportedError(name + ": intrinsic dimension out of range");
  if (k <= m || k > kMaxAmbient) throw UnsupportedError(name + ": ambient dimension out of range");
  if (static_cast<int>(domain.size()) != m) throw UnsupportedError(name + ": domain has wrong arity");
  Immersion imm;
  imm.name = std::move(name);
  imm.m = m;
  imm.k = k;
  imm.domain = std::move(domain);
  imm.jet2 = [f, m, k](std::span<const double> u) { return detail::jet2_from(f, m, k, u); };
  imm.jet3 = [f, m, k](std::span<const double> u) { return detail::jet3_from(f, m, k, u); };
  return imm;
}

}  // namespace gcurv
