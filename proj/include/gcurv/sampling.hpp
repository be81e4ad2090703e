#pragma once

// Seeded random sample points, normal directions and polynomial graphs.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "gcurv/curvature.hpp"
#include "gcurv/immersion.hpp"
#include "gcurv/term_immersion.hpp"

namespace gcurv {

using Rng = std::mt19937_64;

// Uniform point in the chart. Non-periodic axes keep a margin of
// `margin * length` from both ends so samples stay away from chart poles.
inline std::vector<double> sample_point(const Immersion& imm, Rng& rng, double margin = 0.05) {
  std::vector<double> u(imm.m);
  for (int a = 0; a < imm.m; ++a) {
    const Axis& ax = imm.domain[a];
    const double pad = ax.periodic ? 0.0 : margin * ax.length();
    std::uniform_real_distribution<double> d(ax.lo + pad, ax.hi - pad);
    u[a] = d(rng);
  }
  return u;
}

inline NormalDirection sample_normal_direction(int n, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = g(rng);
  } while (v.norm() < 1e-8);
  return NormalDirection::normalized(v);
}

// Random graph over [-1, 1]^m: each component is a sum of `terms` monomials
// of total degree 2 or 3 with coefficients in [-1, 1].
inline Immersion random_graph_poly(int m, int n, Rng& rng, int terms = 4) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> axis(0, m - 1);
  std::uniform_int_distribution<int> degree(2, 3);
  std::vector<std::vector<Monomial>> comps(n);
  for (auto& comp : comps) {
    for (int t = 0; t < terms; ++t) {
      Monomial mono{coeff(rng), std::vector<int>(m, 0)};
      const int deg = degree(rng);
      for (int d = 0; d < deg; ++d) ++mono.exponents[axis(rng)];
      comp.push_back(std::move(mono));
    }
  }
  return graph_poly(m, n, comps);
}

}  // namespace gcurv
