#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubicbir {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IVec = Vec<Integer>;
using IMat = Mat<Integer>;
using QVec = Vec<Rational>;
using QMat = Mat<Rational>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline IVec ivec(std::initializer_list<long> xs) {
  IVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

// Row-major literal, e.g. imat(2, 2, {1, 0, 0, -1}).
inline IMat imat(Eigen::Index rows, Eigen::Index cols, std::initializer_list<long> xs) {
  if (static_cast<Eigen::Index>(xs.size()) != rows * cols) throw Error("imat: size mismatch");
  IMat m(rows, cols);
  auto it = xs.begin();
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = *it++;
  return m;
}

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw Error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }
inline Integer floor(const Rational& x) {
  return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}
inline Integer ceil(const Rational& x) {
  return ceil_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}
// Largest integer m with m*m <= x (x >= 0).
inline Integer floor_sqrt(const Rational& x) {
  if (x < 0) return Integer(-1);
  Integer m = isqrt(floor(x));
  while (Rational((m + 1) * (m + 1)) <= x) ++m;
  while (Rational(m * m) > x) --m;
  return m;
}

inline int sign(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

template <typename Derived>
Integer content(const Eigen::MatrixBase<Derived>& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, Integer(v(i)));
  return g;
}

inline IVec primitive(const IVec& v) {
  Integer g = content(v);
  if (g == 0) throw Error("primitive: zero vector");
  IVec out = v;
  for (auto& x : out) x /= g;
  return out;
}

// Positive multiple of a rational vector that is a primitive integer vector.
inline IVec primitive(const QVec& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
  IVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = boost::multiprecision::numerator(Rational(v(i) * den));
  return primitive(out);
}

inline QVec to_rational(const IVec& v) { return v.cast<Rational>(); }
inline QMat to_rational(const IMat& m) { return m.cast<Rational>(); }

inline bool is_integral(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }
inline IMat to_integer(const QMat& m) {
  IMat out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!is_integral(m(r, c))) throw Error("to_integer: non-integral entry");
      out(r, c) = boost::multiprecision::numerator(m(r, c));
    }
  return out;
}

template <typename Scalar>
bool lex_less(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return a(r, c) < b(r, c);
  return false;
}
template <typename Scalar>
bool lex_less(const Vec<Scalar>& a, const Vec<Scalar>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

struct LexLess {
  template <typename T>
  bool operator()(const T& a, const T& b) const { return lex_less(a, b); }
};

template <typename Scalar>
bool equal(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}
template <typename Scalar>
bool equal(const Vec<Scalar>& a, const Vec<Scalar>& b) {
  return a.size() == b.size() && a == b;
}

inline std::string to_string(const Integer& x) { return x.str(); }
inline std::string to_string(const Rational& x) {
  const auto& d = boost::multiprecision::denominator(x);
  if (d == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + d.str();
}
template <typename Scalar>
std::string to_string(const Vec<Scalar>& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v(i));
  }
  return s + ")";
}
template <typename Scalar>
std::string to_string(const Mat<Scalar>& m) {
  std::string s = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) s += ";";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) s += ",";
      s += to_string(m(r, c));
    }
  }
  return s + "]";
}

// Accepts "7", "-3/4".
Rational parse_rational(const std::string& s);

inline long to_long(const Integer& x) {
  if (x > Integer(INT64_MAX) || x < Integer(INT64_MIN)) throw Error("to_long: overflow");
  return x.convert_to<long>();
}

}  // namespace cubicbir
