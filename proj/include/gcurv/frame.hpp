#pragma once

// First and second fundamental forms and orthonormal normal frames.
//
// Conventions: Pi(X, Y) is the normal component of the ambient derivative
// D_X Y, and second_form[s](i, j) = <d2 X / du_i du_j, nu_s>.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "gcurv/errors.hpp"
#include "gcurv/immersion.hpp"

namespace gcurv {

struct FrameData {
  Eigen::MatrixXd tangent;                 // k x m, columns d X / du_i
  Eigen::MatrixXd metric;                  // m x m
  std::vector<Eigen::MatrixXd> second_form;  // n entries, m x m
  Eigen::MatrixXd normal_frame;            // k x n, orthonormal columns

  int m() const { return static_cast<int>(metric.rows()); }
  int k() const { return static_cast<int>(tangent.rows()); }
  int n() const { return static_cast<int>(normal_frame.cols()); }
};

template <class T>
using AmbientVec = std::array<T, kMaxAmbient>;

namespace detail {

template <class T>
T dot(const AmbientVec<T>& a, const AmbientVec<T>& b, int k) {
  T s(0.0);
  for (int i = 0; i < k; ++i) s = s + a[i] * b[i];
  return s;
}

// Modified Gram-Schmidt of `vs` in place. Works on doubles and jets.
template <class T>
void orthonormalize(std::vector<AmbientVec<T>>& vs, int k) {
  using std::sqrt;
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      T c = dot(vs[j], vs[p], k);
      for (int a = 0; a < k; ++a) vs[j][a] = vs[j][a] - c * vs[p][a];
    }
    T inv = T(1.0) / sqrt(dot(vs[j], vs[j], k));
    for (int a = 0; a < k; ++a) vs[j][a] = vs[j][a] * inv;
  }
}

}  // namespace detail

// Orthonormal normal frame built from fixed pivot axes: each pivot basis
// vector e_a is projected off the tangent space and off the earlier normals,
// then normalized. Smooth in the tangents as long as the pivots stay fixed,
// which is what lets the same routine run on jets. In codimension 1 the
// result does not depend on the pivot.
template <class T>
std::vector<AmbientVec<T>> normal_frame_from_pivots(std::vector<AmbientVec<T>> tangents, int k,
                                                    std::span<const int> pivots) {
  detail::orthonormalize(tangents, k);
  std::vector<AmbientVec<T>> normals;
  normals.reserve(pivots.size());
  for (int piv : pivots) {
    AmbientVec<T> r;
    for (int a = 0; a < k; ++a) r[a] = T(a == piv ? 1.0 : 0.0);
    for (const auto& q : tangents) {
      T c = q[piv];
      for (int a = 0; a < k; ++a) r[a] = r[a] - c * q[a];
    }
    normals.push_back(r);
  }
  detail::orthonormalize(normals, k);
  if (normals.size() == 1) {
    // A hypersurface normal is oriented so that (tangents, nu) is positive;
    // otherwise its sign would follow the pivot and jump between points.
    Eigen::MatrixXd basis(k, k);
    for (int a = 0; a < k; ++a) {
      for (std::size_t j = 0; j < tangents.size(); ++j) basis(a, static_cast<int>(j)) = value_of(tangents[j][a]);
      basis(a, k - 1) = value_of(normals[0][a]);
    }
    if (basis.determinant() < 0.0)
      for (int a = 0; a < k; ++a) normals[0][a] = T(-1.0) * normals[0][a];
  }
  return normals;
}

// Greedy pivot choice: repeatedly take the ambient basis vector with the
// largest residual after removing the tangent space and the normals picked
// so far (ties go to the lowest index).
inline std::vector<int> choose_normal_pivots(const Eigen::MatrixXd& tangent) {
  const int k = static_cast<int>(tangent.rows());
  const int m = static_cast<int>(tangent.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(tangent);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, m);
  Eigen::MatrixXd resid = Eigen::MatrixXd::Identity(k, k) - q * q.transpose();

  std::vector<int> pivots;
  std::vector<bool> used(k, false);
  for (int s = 0; s < k - m; ++s) {
    int best = -1;
    double best_norm = -1.0;
    for (int a = 0; a < k; ++a) {
      if (used[a]) continue;
      const double nrm = resid.col(a).norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = a;
      }
    }
    used[best] = true;
    pivots.push_back(best);
    Eigen::VectorXd dir = resid.col(best) / best_norm;
    resid -= dir * (dir.transpose() * resid);
  }
  return pivots;
}

inline Eigen::MatrixXd normal_frame_at(const Eigen::MatrixXd& tangent, std::span<const int> pivots) {
  const int k = static_cast<int>(tangent.rows());
  const int m = static_cast<int>(tangent.cols());
  std::vector<AmbientVec<double>> tv(m);
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < k; ++a) tv[j][a] = tangent(a, j);
  auto nv = normal_frame_from_pivots(std::move(tv), k, pivots);
  Eigen::MatrixXd frame(k, static_cast<int>(nv.size()));
  for (int s = 0; s < frame.cols(); ++s)
    for (int a = 0; a < k; ++a) frame(a, s) = nv[s][a];
  return frame;
}

// Lower-triangular L^{-1} with metric = L L^T. Rows of the result give the
// orthonormal tangent basis E_i = sum_j W(i, j) d/du_j.
inline Eigen::MatrixXd whitening(const Eigen::MatrixXd& metric) {
  Eigen::LLT<Eigen::MatrixXd> llt(metric);
  if (llt.info() != Eigen::Success) throw DegenerateImmersionError("metric is not positive definite");
  Eigen::MatrixXd l = llt.matrixL();
  return l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(metric.rows(), metric.cols()));
}

inline void check_immersion_rank(const Eigen::MatrixXd& metric) {
  Eigen::LLT<Eigen::MatrixXd> llt(metric);
  const double scale = std::max(metric.trace(), 1e-300);
  if (llt.info() != Eigen::Success) throw DegenerateImmersionError("first derivatives are rank deficient");
  const Eigen::MatrixXd l = llt.matrixL();
  for (int i = 0; i < metric.rows(); ++i) {
    if (l(i, i) * l(i, i) < 1e-24 * scale) {
      throw DegenerateImmersionError("first derivatives are rank deficient");
    }
  }
}

inline FrameData fundamental_forms(const Jet2& jet) {
  const int m = jet.m();
  const int k = jet.k();
  FrameData fd;
  fd.tangent = jet.d1;
  fd.metric = jet.d1.transpose() * jet.d1;
  check_immersion_rank(fd.metric);

  const auto pivots = choose_normal_pivots(jet.d1);
  fd.normal_frame = normal_frame_at(jet.d1, pivots);

  const int n = k - m;
  fd.second_form.assign(n, Eigen::MatrixXd::Zero(m, m));
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < k; ++a) fd.second_form[s] += fd.normal_frame(a, s) * jet.d2[a];
  }
  return fd;
}

// Second fundamental form components in the Cholesky-whitened orthonormal
// tangent basis.
inline std::vector<Eigen::MatrixXd> orthonormal_second_form(const FrameData& fd) {
  const Eigen::MatrixXd w = whitening(fd.metric);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(fd.second_form.size());
  for (const auto& p : fd.second_form) out.push_back(w * p * w.transpose());
  return out;
}

}  // namespace gcurv
