#pragma once

// Forward-mode automatic differentiation scalars. Dual<N> carries a value and
// N first partials; Dual2<N> adds the full symmetric Hessian. The dynamics
// core is templated on the scalar type, so the same code path produces plain
// values, Jacobians, and Lagrangian Hessians.

#include <Eigen/Core>
#include <cmath>

namespace revolve {

template <int N>
struct Dual {
  using Grad = Eigen::Matrix<double, 1, N>;

  double v = 0.0;
  Grad d = Grad::Zero();

  Dual() = default;
  Dual(double value) : v(value) {}  // implicit: constants carry zero derivative

  static Dual seed(double value, int slot) {
    Dual x(value);
    x.d(slot) = 1.0;
    return x;
  }

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + o.d * v; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    const double iv = 1.0 / o.v;
    v *= iv;
    d = (d - o.d * v) * iv;
    return *this;
  }
};

template <int N> Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <int N> Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }
template <int N> Dual<N> operator*(Dual<N> a, const Dual<N>& b) { return a *= b; }
template <int N> Dual<N> operator/(Dual<N> a, const Dual<N>& b) { return a /= b; }

template <int N> Dual<N> operator+(Dual<N> a, double b) { a.v += b; return a; }
template <int N> Dual<N> operator+(double a, Dual<N> b) { b.v += a; return b; }
template <int N> Dual<N> operator-(Dual<N> a, double b) { a.v -= b; return a; }
template <int N> Dual<N> operator-(double a, const Dual<N>& b) {
  Dual<N> r;
  r.v = a - b.v;
  r.d = -b.d;
  return r;
}
template <int N> Dual<N> operator*(Dual<N> a, double b) { a.v *= b; a.d *= b; return a; }
template <int N> Dual<N> operator*(double a, Dual<N> b) { return b * a; }
template <int N> Dual<N> operator/(Dual<N> a, double b) { return a * (1.0 / b); }
template <int N> Dual<N> operator/(double a, const Dual<N>& b) {
  Dual<N> r;
  r.v = a / b.v;
  r.d = b.d * (-r.v / b.v);
  return r;
}
template <int N> Dual<N> operator-(const Dual<N>& a) {
  Dual<N> r;
  r.v = -a.v;
  r.d = -a.d;
  return r;
}

template <int N> bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.v < b.v; }
template <int N> bool operator>(const Dual<N>& a, const Dual<N>& b) { return a.v > b.v; }
template <int N> bool operator<(const Dual<N>& a, double b) { return a.v < b; }
template <int N> bool operator>(const Dual<N>& a, double b) { return a.v > b; }

template <int N> Dual<N> sqrt(const Dual<N>& a) {
  Dual<N> r;
  r.v = std::sqrt(a.v);
  r.d = a.d * (0.5 / r.v);
  return r;
}
template <int N> Dual<N> sin(const Dual<N>& a) {
  Dual<N> r;
  r.v = std::sin(a.v);
  r.d = a.d * std::cos(a.v);
  return r;
}
template <int N> Dual<N> cos(const Dual<N>& a) {
  Dual<N> r;
  r.v = std::cos(a.v);
  r.d = a.d * (-std::sin(a.v));
  return r;
}
template <int N> Dual<N> atan2(const Dual<N>& y, const Dual<N>& x) {
  Dual<N> r;
  r.v = std::atan2(y.v, x.v);
  const double q = 1.0 / (x.v * x.v + y.v * y.v);
  r.d = (x.v * y.d - y.v * x.d) * q;
  return r;
}
template <int N> Dual<N> abs(const Dual<N>& a) { return a.v < 0.0 ? -a : a; }

// Second-order dual: value, gradient, full (symmetric) Hessian.
template <int N>
struct Dual2 {
  using Grad = Eigen::Matrix<double, N, 1>;
  using Hess = Eigen::Matrix<double, N, N>;

  double v = 0.0;
  Grad g = Grad::Zero();
  Hess H = Hess::Zero();

  Dual2() = default;
  Dual2(double value) : v(value) {}

  static Dual2 seed(double value, int slot) {
    Dual2 x(value);
    x.g(slot) = 1.0;
    return x;
  }

  Dual2& operator+=(const Dual2& o) { v += o.v; g += o.g; H += o.H; return *this; }
  Dual2& operator-=(const Dual2& o) { v -= o.v; g -= o.g; H -= o.H; return *this; }
};

template <int N> Dual2<N> operator+(Dual2<N> a, const Dual2<N>& b) { return a += b; }
template <int N> Dual2<N> operator-(Dual2<N> a, const Dual2<N>& b) { return a -= b; }
template <int N> Dual2<N> operator+(Dual2<N> a, double b) { a.v += b; return a; }
template <int N> Dual2<N> operator+(double a, Dual2<N> b) { b.v += a; return b; }
template <int N> Dual2<N> operator-(Dual2<N> a, double b) { a.v -= b; return a; }
template <int N> Dual2<N> operator-(const Dual2<N>& a) {
  Dual2<N> r;
  r.v = -a.v;
  r.g = -a.g;
  r.H = -a.H;
  return r;
}
template <int N> Dual2<N> operator-(double a, const Dual2<N>& b) { return -b + a; }

template <int N> Dual2<N> operator*(const Dual2<N>& a, const Dual2<N>& b) {
  Dual2<N> r;
  r.v = a.v * b.v;
  r.g = a.g * b.v + b.g * a.v;
  r.H = a.H * b.v + b.H * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}
template <int N> Dual2<N> operator*(Dual2<N> a, double b) { a.v *= b; a.g *= b; a.H *= b; return a; }
template <int N> Dual2<N> operator*(double a, Dual2<N> b) { return b * a; }

// Chain rule for a smooth univariate f applied to a: f'(a)H + f''(a) g g^T.
template <int N> Dual2<N> chain(const Dual2<N>& a, double f, double df, double ddf) {
  Dual2<N> r;
  r.v = f;
  r.g = a.g * df;
  r.H = a.H * df + ddf * (a.g * a.g.transpose());
  return r;
}

template <int N> Dual2<N> operator/(const Dual2<N>& a, const Dual2<N>& b) {
  const double iv = 1.0 / b.v;
  return a * chain(b, iv, -iv * iv, 2.0 * iv * iv * iv);
}
template <int N> Dual2<N> operator/(Dual2<N> a, double b) { return a * (1.0 / b); }
template <int N> Dual2<N> operator/(double a, const Dual2<N>& b) {
  const double iv = 1.0 / b.v;
  return chain(b, a * iv, -a * iv * iv, 2.0 * a * iv * iv * iv);
}

template <int N> Dual2<N> sqrt(const Dual2<N>& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
template <int N> Dual2<N> sin(const Dual2<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return chain(a, s, c, -s);
}
template <int N> Dual2<N> cos(const Dual2<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return chain(a, c, -s, -c);
}
template <int N> bool operator<(const Dual2<N>& a, double b) { return a.v < b; }
template <int N> bool operator>(const Dual2<N>& a, double b) { return a.v > b; }

// Uniform accessors so templated code can branch on values of any scalar kind.
inline double value(double x) { return x; }
template <int N> double value(const Dual<N>& x) { return x.v; }
template <int N> double value(const Dual2<N>& x) { return x.v; }

}  // namespace revolve
