#pragma once

// Chart-domain quadrature against the Riemannian density and the
// Gauss-Bonnet verification pipeline.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gcurv/curvature.hpp"
#include "gcurv/frame.hpp"
#include "gcurv/immersion.hpp"
#include "gcurv/quadrature.hpp"

namespace gcurv {

// Integrand evaluated at a grid node; receives the node's parameters and jet.
using NodeFn = std::function<double(std::span<const double>, const Jet2&)>;

inline int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// sum over nodes of f(u) * sqrt(det I(u)) * prod w. The grid is split into
// slices along the first axis; each slice is summed in a fixed order and the
// slice totals are added in index order, so the result does not depend on
// the number of workers.
inline double integrate_scalar(const Immersion& imm, const NodeFn& f, const QuadratureGrid& grid,
                               int workers = 0) {
  if (static_cast<int>(grid.axes.size()) != imm.m) {
    throw std::invalid_argument("integrate_scalar: grid has " + std::to_string(grid.axes.size()) +
                                " axes, immersion has " + std::to_string(imm.m));
  }
  const int m = imm.m;
  const std::size_t slices = grid.axes[0].size();
  std::vector<double> partial(slices, 0.0);

  auto run_slice = [&](std::size_t s) {
    std::vector<std::size_t> idx(m, 0);
    idx[0] = s;
    std::vector<double> u(m);
    double sum = 0.0;
    while (true) {
      double w = 1.0;
      for (int a = 0; a < m; ++a) {
        u[a] = grid.axes[a].nodes[idx[a]];
        w *= grid.axes[a].weights[idx[a]];
      }
      const Jet2 jet = imm.jet2(u);
      const double density = std::sqrt(std::max(0.0, (jet.d1.transpose() * jet.d1).determinant()));
      sum += w * density * f(u, jet);
      int a = m - 1;
      while (a >= 1 && ++idx[a] == grid.axes[a].size()) idx[a--] = 0;
      if (a < 1) break;
    }
    partial[s] = sum;
  };

  const int nthreads = std::max(1, std::min<int>(workers > 0 ? workers : default_workers(), static_cast<int>(slices)));
  if (nthreads == 1) {
    for (std::size_t s = 0; s < slices; ++s) run_slice(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t s = next++; s < slices; s = next++) run_slice(s);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

enum class CurvatureRoute { Moments, Quadrature, Pfaffian };

inline std::string route_name(CurvatureRoute r) {
  switch (r) {
    case CurvatureRoute::Moments: return "moments";
    case CurvatureRoute::Quadrature: return "quadrature";
    case CurvatureRoute::Pfaffian: return "pfaffian";
  }
  return "?";
}

inline CurvatureRoute parse_route(const std::string& s) {
  if (s == "moments") return CurvatureRoute::Moments;
  if (s == "quadrature") return CurvatureRoute::Quadrature;
  if (s == "pfaffian") return CurvatureRoute::Pfaffian;
  throw std::invalid_argument("unknown curvature route '" + s + "'");
}

// K_M at a node by the chosen route. The Pfaffian route rescales the density
// by omega_{k-1} / omega_{n-1}.
inline NodeFn curvature_field(const Immersion& imm, CurvatureRoute route, int sphere_order = kDefaultSphereOrder) {
  switch (route) {
    case CurvatureRoute::Moments:
      return [](std::span<const double>, const Jet2& jet) {
        return generalized_curvature_moments(fundamental_forms(jet));
      };
    case CurvatureRoute::Quadrature: {
      auto rule = std::make_shared<const SphereRule>(normal_sphere_rule(imm.codim(), sphere_order));
      return [rule](std::span<const double>, const Jet2& jet) {
        return generalized_curvature_quadrature(fundamental_forms(jet), *rule);
      };
    }
    case CurvatureRoute::Pfaffian: {
      if (imm.m % 2 != 0) throw UnsupportedError("Pfaffian undefined for odd dimension");
      const double scale = 1.0 / egregium_factor(imm.m, imm.k);
      return [scale](std::span<const double>, const Jet2& jet) {
        return scale * pfaffian_density(gauss_equation_tensor(fundamental_forms(jet)));
      };
    }
  }
  throw std::invalid_argument("curvature_field: bad route");
}

struct GaussBonnetReport {
  double integral = 0.0;               // integral of K_M dV_M
  std::optional<double> expected;      // (omega_{k-1} / omega_{n-1}) chi
  std::optional<double> residual;      // |integral - expected|
  int estimated_chi = 0;               // integral * omega_{n-1} / omega_{k-1}, rounded
  double chi_distance = 0.0;           // distance to the nearest integer before rounding

  double relative_residual() const {
    if (!residual) return 0.0;
    return *residual / std::max(1.0, std::abs(*expected));
  }
};

inline GaussBonnetReport gauss_bonnet_check(const Immersion& imm, const QuadratureGrid& grid,
                                            CurvatureRoute route = CurvatureRoute::Moments,
                                            int workers = 0, int sphere_order = kDefaultSphereOrder) {
  if (imm.m % 2 != 0 && imm.euler_char && *imm.euler_char != 0) {
    throw std::invalid_argument("gauss_bonnet_check: odd-dimensional manifold with nonzero chi");
  }
  GaussBonnetReport rep;
  rep.integral = integrate_scalar(imm, curvature_field(imm, route, sphere_order), grid, workers);
  const double factor = sphere_volume(imm.k - 1) / sphere_volume(imm.codim() - 1);
  if (imm.euler_char) {
    rep.expected = factor * *imm.euler_char;
    rep.residual = std::abs(rep.integral - *rep.expected);
  }
  const double raw_chi = rep.integral / factor;
  rep.estimated_chi = static_cast<int>(std::lround(raw_chi));
  rep.chi_distance = std::abs(raw_chi - rep.estimated_chi);
  return rep;
}

inline GaussBonnetReport gauss_bonnet_check(const Immersion& imm, CurvatureRoute route = CurvatureRoute::Moments) {
  return gauss_bonnet_check(imm, make_grid(imm), route);
}

}  // namespace gcurv
