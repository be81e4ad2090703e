#pragma once

// Named closed immersions with known Euler characteristic.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "gcurv/errors.hpp"
#include "gcurv/immersion.hpp"
#include "gcurv/term_immersion.hpp"

namespace gcurv {

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline const Axis kPolar{0.0, kPi, false};
inline const Axis kAngle{0.0, 2.0 * kPi, true};

}  // namespace detail

inline Immersion circle_r2() {
  Immersion imm = make_immersion("circle_r2", 1, 2, {detail::kAngle}, [](auto u, auto x) {
    using std::cos;
    using std::sin;
    x[0] = cos(u[0]);
    x[1] = sin(u[0]);
  });
  imm.euler_char = 0;
  imm.max_eps = 0.5;
  imm.reference_curvature = [](std::span<const double>) { return 0.0; };
  return imm;
}

inline Immersion circle_r3() {
  Immersion imm = make_immersion("circle_r3", 1, 3, {detail::kAngle}, [](auto u, auto x) {
    using std::cos;
    using std::sin;
    x[0] = cos(u[0]);
    x[1] = sin(u[0]);
    x[2] = 0.0;
  });
  imm.euler_char = 0;
  imm.max_eps = 0.5;
  imm.reference_curvature = [](std::span<const double>) { return 0.0; };
  return imm;
}

// Latitude-longitude chart (theta, phi), theta in [0, pi] measured from +z.
inline Immersion sphere2_r3(double radius = 1.0) {
  Immersion imm = make_immersion("sphere2_r3", 2, 3, {detail::kPolar, detail::kAngle}, [radius](auto u, auto x) {
    using std::cos;
    using std::sin;
    const auto st = sin(u[0]);
    x[0] = radius * (st * cos(u[1]));
    x[1] = radius * (st * sin(u[1]));
    x[2] = radius * cos(u[0]);
  });
  imm.euler_char = 2;
  imm.max_eps = 0.5 * radius;
  imm.params = {{"R", radius}};
  imm.reference_curvature = [radius](std::span<const double>) { return 1.0 / (radius * radius); };
  return imm;
}

// Unit sphere in R^3 x {0}.
inline Immersion sphere2_r4() {
  Immersion imm = make_immersion("sphere2_r4", 2, 4, {detail::kPolar, detail::kAngle}, [](auto u, auto x) {
    using std::cos;
    using std::sin;
    const auto st = sin(u[0]);
    x[0] = st * cos(u[1]);
    x[1] = st * sin(u[1]);
    x[2] = cos(u[0]);
    x[3] = 0.0;
  });
  imm.euler_char = 2;
  imm.max_eps = 0.5;
  imm.reference_curvature = [](std::span<const double>) { return 0.5; };
  return imm;
}

// ((R + r cos v) cos u, (R + r cos v) sin u, r sin v).
inline Immersion torus_rev_r3(double major = 2.0, double minor = 0.5) {
  Immersion imm = make_immersion("torus_rev_r3", 2, 3, {detail::kAngle, detail::kAngle},
                                 [major, minor](auto u, auto x) {
                                   using std::cos;
                                   using std::sin;
                                   const auto ring = major + minor * cos(u[1]);
                                   x[0] = ring * cos(u[0]);
                                   x[1] = ring * sin(u[0]);
                                   x[2] = minor * sin(u[1]);
                                 });
  imm.euler_char = 0;
  imm.max_eps = 0.5 * std::min(minor, major - minor);
  imm.params = {{"R", major}, {"r", minor}};
  imm.reference_curvature = [major, minor](std::span<const double> u) {
    return std::cos(u[1]) / (minor * (major + minor * std::cos(u[1])));
  };
  return imm;
}

// (cos a, sin a, cos b, sin b) / sqrt 2.
inline Immersion clifford_torus_r4() {
  Immersion imm = make_immersion("clifford_torus_r4", 2, 4, {detail::kAngle, detail::kAngle}, [](auto u, auto x) {
    using std::cos;
    using std::sin;
    const double s = 1.0 / std::numbers::sqrt2;
    x[0] = s * cos(u[0]);
    x[1] = s * sin(u[0]);
    x[2] = s * cos(u[1]);
    x[3] = s * sin(u[1]);
  });
  imm.euler_char = 0;
  imm.max_eps = 0.35;  // focal distance 1/sqrt 2
  imm.reference_curvature = [](std::span<const double>) { return 0.0; };
  return imm;
}

// Hyperspherical chart (t1, t2, t3, phi) of the unit 4-sphere.
inline Immersion sphere4_r5() {
  Immersion imm = make_immersion("sphere4_r5", 4, 5,
                                 {detail::kPolar, detail::kPolar, detail::kPolar, detail::kAngle}, [](auto u, auto x) {
                                   using std::cos;
                                   using std::sin;
                                   const auto s1 = sin(u[0]);
                                   const auto s12 = s1 * sin(u[1]);
                                   const auto s123 = s12 * sin(u[2]);
                                   x[0] = cos(u[0]);
                                   x[1] = s1 * cos(u[1]);
                                   x[2] = s12 * cos(u[2]);
                                   x[3] = s123 * cos(u[3]);
                                   x[4] = s123 * sin(u[3]);
                                 });
  imm.euler_char = 2;
  imm.max_eps = 0.5;
  imm.reference_curvature = [](std::span<const double>) { return 1.0; };
  return imm;
}

// Product of two unit spheres, each in latitude-longitude coordinates.
inline Immersion product_s2s2_r6() {
  Immersion imm = make_immersion("product_s2s2_r6", 4, 6,
                                 {detail::kPolar, detail::kAngle, detail::kPolar, detail::kAngle}, [](auto u, auto x) {
                                   using std::cos;
                                   using std::sin;
                                   for (int f = 0; f < 2; ++f) {
                                     const auto st = sin(u[2 * f]);
                                     x[3 * f + 0] = st * cos(u[2 * f + 1]);
                                     x[3 * f + 1] = st * sin(u[2 * f + 1]);
                                     x[3 * f + 2] = cos(u[2 * f]);
                                   }
                                 });
  imm.euler_char = 4;
  imm.max_eps = 0.5;
  imm.reference_curvature = [](std::span<const double>) { return 0.125; };
  return imm;
}

// Default graph: the paraboloid X(x1, x2) = x1^2 + x2^2 over [-1, 1]^2.
inline Immersion paraboloid_graph() {
  return graph_poly(2, 1, {{{1.0, {2, 0}}, {1.0, {0, 2}}}});
}

inline std::vector<std::string> catalog_names() {
  return {"circle_r2",         "circle_r3",  "sphere2_r3",      "sphere2_r4", "torus_rev_r3",
          "clifford_torus_r4", "sphere4_r5", "product_s2s2_r6", "graph_poly"};
}

// Looks up a catalog entry. Optional numeric parameters apply to the
// parametrized families: sphere2_r3 (R) and torus_rev_r3 (R, r).
inline Immersion catalog_get(const std::string& name, std::span<const double> params = {}) {
  auto param = [&](std::size_t i, double fallback) { return i < params.size() ? params[i] : fallback; };
  if (name == "circle_r2") return circle_r2();
  if (name == "circle_r3") return circle_r3();
  if (name == "sphere2_r3") return sphere2_r3(param(0, 1.0));
  if (name == "sphere2_r4") return sphere2_r4();
  if (name == "torus_rev_r3") return torus_rev_r3(param(0, 2.0), param(1, 0.5));
  if (name == "clifford_torus_r4") return clifford_torus_r4();
  if (name == "sphere4_r5") return sphere4_r5();
  if (name == "product_s2s2_r6") return product_s2s2_r6();
  if (name == "graph_poly") return paraboloid_graph();
  throw LookupError("unknown immersion '" + name + "'");
}

}  // namespace gcurv
