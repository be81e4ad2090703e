#pragma once

// Axis rules, tensor-product chart grids and normal-sphere rules.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "gcurv/immersion.hpp"
#include "gcurv/sphere.hpp"

namespace gcurv {

enum class RuleKind { Trapezoid, GaussLegendre };

struct AxisRule {
  RuleKind kind = RuleKind::GaussLegendre;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n-1.
// Nodes by Newton iteration on P_n from the Tricomi initial guess.
inline AxisRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  AxisRule rule;
  rule.kind = RuleKind::GaussLegendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

// Equispaced periodic rule on [a, b); exact for trigonometric polynomials of
// degree below n.
inline AxisRule trapezoid(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("trapezoid: need at least one node");
  AxisRule rule;
  rule.kind = RuleKind::Trapezoid;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(a + i * h);
    rule.weights.push_back(h);
  }
  return rule;
}

struct QuadratureGrid {
  std::vector<AxisRule> axes;

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& ax : axes) s *= ax.size();
    return s;
  }
};

struct Resolution {
  int interval_nodes = 96;
  int periodic_nodes = 128;
};

// Defaults keep the m = 4 runs well under a minute on one core.
inline Resolution default_resolution(int m) {
  if (m <= 2) return {96, 128};
  if (m == 3) return {48, 64};
  return {32, 48};
}

inline QuadratureGrid make_grid(const Immersion& imm, Resolution res) {
  QuadratureGrid grid;
  for (const Axis& ax : imm.domain) {
    grid.axes.push_back(ax.periodic ? trapezoid(res.periodic_nodes, ax.lo, ax.hi)
                                    : gauss_legendre(res.interval_nodes, ax.lo, ax.hi));
  }
  return grid;
}

inline QuadratureGrid make_grid(const Immersion& imm) {
  return make_grid(imm, default_resolution(imm.m));
}

// Nodes on the unit sphere S^{n-1} in R^n, weights summing to omega_{n-1}.
struct SphereRule {
  int n = 1;
  std::vector<double> nodes;  // size() * n, node-major
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t q) const {
    return {nodes.data() + q * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
};

inline constexpr int kDefaultSphereOrder = 64;
inline constexpr std::uint64_t kSphereSeed = 0x5eed5eedULL;

// n = 1: {+1, -1} with unit weights. n = 2: `order` equispaced angles.
// n = 3: order/2 Gauss-Legendre nodes in the polar cosine times `order`
// azimuths. n > 3: `order`^2 Monte Carlo samples from a fixed seed.
inline SphereRule normal_sphere_rule(int n, int order = kDefaultSphereOrder) {
  if (n < 1) throw std::invalid_argument("normal_sphere_rule: codimension must be >= 1");
  SphereRule rule;
  rule.n = n;
  if (n == 1) {
    rule.nodes = {1.0, -1.0};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (n == 2) {
    const AxisRule az = trapezoid(order, 0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < az.size(); ++i) {
      rule.nodes.push_back(std::cos(az.nodes[i]));
      rule.nodes.push_back(std::sin(az.nodes[i]));
      rule.weights.push_back(az.weights[i]);
    }
    return rule;
  }
  if (n == 3) {
    const AxisRule pol = gauss_legendre(std::max(order / 2, 1), -1.0, 1.0);
    const AxisRule az = trapezoid(order, 0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < pol.size(); ++i) {
      const double z = pol.nodes[i];
      const double r = std::sqrt(1.0 - z * z);
      for (std::size_t j = 0; j < az.size(); ++j) {
        rule.nodes.push_back(r * std::cos(az.nodes[j]));
        rule.nodes.push_back(r * std::sin(az.nodes[j]));
        rule.nodes.push_back(z);
        rule.weights.push_back(pol.weights[i] * az.weights[j]);
      }
    }
    return rule;
  }
  std::mt19937_64 rng(kSphereSeed);
  std::normal_distribution<double> normal;
  const int count = order * order;
  const double w = sphere_volume(n - 1) / count;
  for (int q = 0; q < count; ++q) {
    std::vector<double> v(n);
    double nrm = 0.0;
    for (double& x : v) {
      x = normal(rng);
      nrm += x * x;
    }
    nrm = std::sqrt(nrm);
    for (double x : v) rule.nodes.push_back(x / nrm);
    rule.weights.push_back(w);
  }
  return rule;
}

}  // namespace gcurv
