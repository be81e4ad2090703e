#pragma once

// Reference computations that share no code with the library.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// Exact integral over S^{n-1} of prod nu_i^{2 a_i}, n <= 3.
// n = 1: two points. n = 2: trapezoid in the angle with more nodes than the
// trigonometric degree. n = 3: z^{2 a_3} (1 - z^2)^{a_1 + a_2} expanded and
// integrated term by term, times the same azimuthal trapezoid.
inline double sphere_monomial(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  auto azimuth = [](int p, int q) {
    const int nodes = 256;
    double s = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double t = 2.0 * kPi * i / nodes;
      s += std::pow(std::cos(t), 2 * p) * std::pow(std::sin(t), 2 * q);
    }
    return s * 2.0 * kPi / nodes;
  };
  if (n == 1) return 2.0;
  if (n == 2) return azimuth(a[0], a[1]);
  const int e = a[0] + a[1];
  double zpart = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= e; ++j) {
    const int p = 2 * a[2] + 2 * j;
    zpart += binom * ((j % 2) ? -1.0 : 1.0) * 2.0 / (p + 1);
    binom = binom * (e - j) / (j + 1);
  }
  return zpart * azimuth(a[0], a[1]);
}

// Central-difference derivative of a vector-valued function.
inline Eigen::VectorXd central_diff(const std::function<Eigen::VectorXd(const std::vector<double>&)>& f,
                                    std::vector<double> u, int axis, double h) {
  const double u0 = u[axis];
  u[axis] = u0 + h;
  const Eigen::VectorXd fp = f(u);
  u[axis] = u0 - h;
  const Eigen::VectorXd fm = f(u);
  return (fp - fm) / (2.0 * h);
}

// Determinant via cofactor expansion.
inline double cofactor_det(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (int c = 0; c < n; ++c) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = a(i, j);
    det += ((c % 2) ? -1.0 : 1.0) * a(0, c) * cofactor_det(minor);
  }
  return det;
}

// Pfaffian by recursive expansion along the first row.
inline double pfaffian(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  double s = 0.0;
  for (int j = 1; j < n; ++j) {
    std::vector<int> rest;
    for (int i = 1; i < n; ++i)
      if (i != j) rest.push_back(i);
    Eigen::MatrixXd sub(n - 2, n - 2);
    for (int p = 0; p < n - 2; ++p)
      for (int q = 0; q < n - 2; ++q) sub(p, q) = a(rest[p], rest[q]);
    s += ((j % 2) ? 1.0 : -1.0) * a(0, j) * pfaffian(sub);
  }
  return s;
}

}  // namespace oracle
