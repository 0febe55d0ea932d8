#pragma once

// First-order jets for forward-mode differentiation. Dual<T> nests, so
// Dual<Dual<double>> provides the second derivative level needed when a
// form coefficient that internally differentiates something is itself
// differentiated once more.

#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Core>

namespace grpd {

template <typename T>
struct Dual {
  T v{};  // value
  T d{};  // directional derivative payload

  constexpr Dual() = default;
  constexpr Dual(const T& value) : v(value), d(T(0)) {}
  constexpr Dual(const T& value, const T& deriv) : v(value), d(deriv) {}
  // promote plain doubles into nested jets
  template <typename U>
    requires(!std::is_same_v<U, T> && std::is_arithmetic_v<U>)
  constexpr Dual(U value) : v(T(value)), d(T(0)) {}

  Dual& operator+=(const Dual& r) { v += r.v; d += r.d; return *this; }
  Dual& operator-=(const Dual& r) { v -= r.v; d -= r.d; return *this; }
  Dual& operator*=(const Dual& r) { d = d * r.v + v * r.d; v *= r.v; return *this; }
  Dual& operator/=(const Dual& r) {
    d = (d * r.v - v * r.d) / (r.v * r.v);
    v /= r.v;
    return *this;
  }
};

using J1 = Dual<double>;
using J2 = Dual<Dual<double>>;

template <typename T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <typename T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <typename T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <typename T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <typename T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <typename T> Dual<T> operator+(const Dual<T>& a) { return a; }

template <typename T> Dual<T> operator+(const T& a, Dual<T> b) { return Dual<T>(a) += b; }
template <typename T> Dual<T> operator+(Dual<T> a, const T& b) { return a += Dual<T>(b); }
template <typename T> Dual<T> operator-(const T& a, const Dual<T>& b) { return Dual<T>(a) -= b; }
template <typename T> Dual<T> operator-(Dual<T> a, const T& b) { return a -= Dual<T>(b); }
template <typename T> Dual<T> operator*(const T& a, Dual<T> b) { return b *= Dual<T>(a); }
template <typename T> Dual<T> operator*(Dual<T> a, const T& b) { return a *= Dual<T>(b); }
template <typename T> Dual<T> operator/(const T& a, const Dual<T>& b) { return Dual<T>(a) /= b; }
template <typename T> Dual<T> operator/(Dual<T> a, const T& b) { return a /= Dual<T>(b); }

// double mixes with nested jets as a constant
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator+(double a, Dual<T> b) { return Dual<T>(a) += b; }
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator+(Dual<T> a, double b) { return a += Dual<T>(b); }
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator-(double a, const Dual<T>& b) { return Dual<T>(a) -= b; }
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator-(Dual<T> a, double b) { return a -= Dual<T>(b); }
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator*(double a, Dual<T> b) { return b *= Dual<T>(a); }
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator*(Dual<T> a, double b) { return a *= Dual<T>(b); }
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) /= b; }
template <typename T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator/(Dual<T> a, double b) { return a /= Dual<T>(b); }

// comparisons act on values only (used by pivoting and branches)
template <typename T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return a.v < b.v; }
template <typename T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return a.v > b.v; }
template <typename T> bool operator<=(const Dual<T>& a, const Dual<T>& b) { return a.v <= b.v; }
template <typename T> bool operator>=(const Dual<T>& a, const Dual<T>& b) { return a.v >= b.v; }
template <typename T> bool operator==(const Dual<T>& a, const Dual<T>& b) { return a.v == b.v; }
template <typename T> bool operator!=(const Dual<T>& a, const Dual<T>& b) { return a.v != b.v; }

inline double value(double x) { return x; }
template <typename T> double value(const Dual<T>& x) { return value(x.v); }

using std::abs; using std::acos; using std::atan2; using std::cos;
using std::exp; using std::log; using std::sin; using std::sqrt; using std::tan;

template <typename T> Dual<T> abs(const Dual<T>& a) { return value(a) < 0.0 ? -a : a; }
template <typename T> Dual<T> sin(const Dual<T>& a) { return {sin(a.v), a.d * cos(a.v)}; }
template <typename T> Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -a.d * sin(a.v)}; }
template <typename T> Dual<T> tan(const Dual<T>& a) {
  T c = cos(a.v);
  return {tan(a.v), a.d / (c * c)};
}
template <typename T> Dual<T> exp(const Dual<T>& a) {
  T e = exp(a.v);
  return {e, a.d * e};
}
template <typename T> Dual<T> log(const Dual<T>& a) { return {log(a.v), a.d / a.v}; }
template <typename T> Dual<T> sqrt(const Dual<T>& a) {
  T s = sqrt(a.v);
  return {s, a.d / (T(2) * s)};
}
template <typename T> Dual<T> acos(const Dual<T>& a) {
  return {acos(a.v), -a.d / sqrt(T(1) - a.v * a.v)};
}
template <typename T> Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  T den = x.v * x.v + y.v * y.v;
  return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / den};
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& a) {
  return os << "(" << a.v << " + eps*" << a.d << ")";
}

template <typename T> struct ScalarDepth { static constexpr int depth = 0; };
template <typename T> struct ScalarDepth<Dual<T>> {
  static constexpr int depth = 1 + ScalarDepth<T>::depth;
};

}  // namespace grpd

namespace Eigen {

template <typename T>
struct NumTraits<grpd::Dual<T>> : NumTraits<double> {
  using Real = grpd::Dual<T>;
  using NonInteger = grpd::Dual<T>;
  using Nested = grpd::Dual<T>;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost,
  };
  static inline Real epsilon() { return Real(NumTraits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<double>::dummy_precision()); }
  static inline Real highest() { return Real(NumTraits<double>::highest()); }
  static inline Real lowest() { return Real(NumTraits<double>::lowest()); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<grpd::Dual<T>, double, BinaryOp> {
  using ReturnType = grpd::Dual<T>;
};
template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<double, grpd::Dual<T>, BinaryOp> {
  using ReturnType = grpd::Dual<T>;
};

}  // namespace Eigen

namespace grpd {

template <typename S> using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S> using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace grpd
