#pragma once

// Truncated multivariate Taylor arithmetic (forward-mode jets).
//
// Taylor1<S> carries a value and a gradient, Taylor2<S> additionally carries
// the Hessian. Both are generic over the coefficient type, so nesting
// Taylor1<Taylor2<double>> yields derivatives up to third order.
//
// Only the first `nv` variables are active; constants have nv == 0 and skip
// the derivative loops entirely.

#include <array>
#include <cmath>
#include <cstdint>

namespace gcurv {

inline constexpr int kMaxVars = 6;

template <class S>
struct Taylor1 {
  S v{};
  std::array<S, kMaxVars> g{};
  std::uint8_t nv = 0;

  Taylor1() = default;
  Taylor1(double c) : v(c) {}  // NOLINT: implicit promotion of constants
  Taylor1(const S& c, std::uint8_t n) : v(c), nv(n) {}

  static Taylor1 variable(const S& value, int index, int num_vars) {
    Taylor1 t(value, static_cast<std::uint8_t>(num_vars));
    t.g[index] = S(1.0);
    return t;
  }
};

template <class S>
struct Taylor2 {
  S v{};
  std::array<S, kMaxVars> g{};
  std::array<S, kMaxVars * kMaxVars> h{};
  std::uint8_t nv = 0;

  Taylor2() = default;
  Taylor2(double c) : v(c) {}  // NOLINT: implicit promotion of constants

  S& hess(int i, int j) { return h[i * kMaxVars + j]; }
  const S& hess(int i, int j) const { return h[i * kMaxVars + j]; }

  static Taylor2 variable(const S& value, int index, int num_vars) {
    Taylor2 t(0.0);
    t.v = value;
    t.nv = static_cast<std::uint8_t>(num_vars);
    t.g[index] = S(1.0);
    return t;
  }
};

template <class T>
struct is_taylor : std::false_type {};
template <class S>
struct is_taylor<Taylor1<S>> : std::true_type {};
template <class S>
struct is_taylor<Taylor2<S>> : std::true_type {};

inline double value_of(double x) { return x; }
template <class S>
double value_of(const Taylor1<S>& x) { return value_of(x.v); }
template <class S>
double value_of(const Taylor2<S>& x) { return value_of(x.v); }

// ---- Taylor1 ---------------------------------------------------------------

template <class S>
Taylor1<S> operator-(const Taylor1<S>& a) {
  Taylor1<S> r(-a.v, a.nv);
  for (int i = 0; i < a.nv; ++i) r.g[i] = -a.g[i];
  return r;
}

template <class S>
Taylor1<S> operator+(const Taylor1<S>& a, const Taylor1<S>& b) {
  Taylor1<S> r(a.v + b.v, std::max(a.nv, b.nv));
  for (int i = 0; i < r.nv; ++i) r.g[i] = a.g[i] + b.g[i];
  return r;
}

template <class S>
Taylor1<S> operator-(const Taylor1<S>& a, const Taylor1<S>& b) {
  Taylor1<S> r(a.v - b.v, std::max(a.nv, b.nv));
  for (int i = 0; i < r.nv; ++i) r.g[i] = a.g[i] - b.g[i];
  return r;
}

template <class S>
Taylor1<S> operator*(const Taylor1<S>& a, const Taylor1<S>& b) {
  Taylor1<S> r(a.v * b.v, std::max(a.nv, b.nv));
  for (int i = 0; i < r.nv; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  return r;
}

// Applies a scalar function given its value and first derivative at a.v.
template <class S>
Taylor1<S> chain(const Taylor1<S>& a, const S& f0, const S& f1) {
  Taylor1<S> r(f0, a.nv);
  for (int i = 0; i < a.nv; ++i) r.g[i] = f1 * a.g[i];
  return r;
}

template <class S>
Taylor1<S> operator/(const Taylor1<S>& a, const Taylor1<S>& b) {
  S inv = S(1.0) / b.v;
  return a * chain(b, inv, -(inv * inv));
}

template <class S>
Taylor1<S> sin(const Taylor1<S>& a) {
  using std::cos;
  using std::sin;
  return chain(a, S(sin(a.v)), S(cos(a.v)));
}

template <class S>
Taylor1<S> cos(const Taylor1<S>& a) {
  using std::cos;
  using std::sin;
  return chain(a, S(cos(a.v)), S(-sin(a.v)));
}

template <class S>
Taylor1<S> sqrt(const Taylor1<S>& a) {
  using std::sqrt;
  S s = sqrt(a.v);
  return chain(a, s, S(0.5) / s);
}

// ---- Taylor2 ---------------------------------------------------------------

template <class S>
Taylor2<S> operator-(const Taylor2<S>& a) {
  Taylor2<S> r;
  r.v = -a.v;
  r.nv = a.nv;
  for (int i = 0; i < a.nv; ++i) {
    r.g[i] = -a.g[i];
    for (int j = 0; j < a.nv; ++j) r.hess(i, j) = -a.hess(i, j);
  }
  return r;
}

template <class S>
Taylor2<S> operator+(const Taylor2<S>& a, const Taylor2<S>& b) {
  Taylor2<S> r;
  r.v = a.v + b.v;
  r.nv = std::max(a.nv, b.nv);
  for (int i = 0; i < r.nv; ++i) {
    r.g[i] = a.g[i] + b.g[i];
    for (int j = 0; j < r.nv; ++j) r.hess(i, j) = a.hess(i, j) + b.hess(i, j);
  }
  return r;
}

template <class S>
Taylor2<S> operator-(const Taylor2<S>& a, const Taylor2<S>& b) {
  Taylor2<S> r;
  r.v = a.v - b.v;
  r.nv = std::max(a.nv, b.nv);
  for (int i = 0; i < r.nv; ++i) {
    r.g[i] = a.g[i] - b.g[i];
    for (int j = 0; j < r.nv; ++j) r.hess(i, j) = a.hess(i, j) - b.hess(i, j);
  }
  return r;
}

template <class S>
Taylor2<S> operator*(const Taylor2<S>& a, const Taylor2<S>& b) {
  Taylor2<S> r;
  r.v = a.v * b.v;
  r.nv = std::max(a.nv, b.nv);
  for (int i = 0; i < r.nv; ++i) {
    r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int j = 0; j < r.nv; ++j) {
      r.hess(i, j) = a.hess(i, j) * b.v + a.v * b.hess(i, j) + a.g[i] * b.g[j] +
                     a.g[j] * b.g[i];
    }
  }
  return r;
}

// Applies a scalar function given its value, first and second derivative at a.v.
template <class S>
Taylor2<S> chain(const Taylor2<S>& a, const S& f0, const S& f1, const S& f2) {
  Taylor2<S> r;
  r.v = f0;
  r.nv = a.nv;
  for (int i = 0; i < a.nv; ++i) {
    r.g[i] = f1 * a.g[i];
    for (int j = 0; j < a.nv; ++j) {
      r.hess(i, j) = f1 * a.hess(i, j) + f2 * (a.g[i] * a.g[j]);
    }
  }
  return r;
}

template <class S>
Taylor2<S> operator/(const Taylor2<S>& a, const Taylor2<S>& b) {
  S inv = S(1.0) / b.v;
  S inv2 = inv * inv;
  return a * chain(b, inv, -inv2, S(2.0) * inv2 * inv);
}

template <class S>
Taylor2<S> sin(const Taylor2<S>& a) {
  using std::cos;
  using std::sin;
  S s = sin(a.v);
  return chain(a, s, S(cos(a.v)), -s);
}

template <class S>
Taylor2<S> cos(const Taylor2<S>& a) {
  using std::cos;
  using std::sin;
  S c = cos(a.v);
  return chain(a, c, S(-sin(a.v)), -c);
}

template <class S>
Taylor2<S> sqrt(const Taylor2<S>& a) {
  using std::sqrt;
  S s = sqrt(a.v);
  S d1 = S(0.5) / s;
  return chain(a, s, d1, -(d1 / (S(2.0) * a.v)));
}

// ---- mixed-mode helpers ----------------------------------------------------

template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator+(const T& a, double b) { return a + T(b); }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator+(double a, const T& b) { return T(a) + b; }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator-(const T& a, double b) { return a - T(b); }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator-(double a, const T& b) { return T(a) - b; }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator*(const T& a, double b) { return a * T(b); }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator*(double a, const T& b) { return T(a) * b; }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator/(const T& a, double b) { return a * T(1.0 / b); }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T operator/(double a, const T& b) { return T(a) / b; }

template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T& operator+=(T& a, const T& b) { return a = a + b; }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T& operator-=(T& a, const T& b) { return a = a - b; }
template <class T, class = std::enable_if_t<is_taylor<T>::value>>
T& operator*=(T& a, const T& b) { return a = a * b; }

// Integer power by repeated multiplication; exact for polynomial evaluators.
template <class T>
T ipow(const T& x, int e) {
  T r(1.0);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

}  // namespace gcurv
