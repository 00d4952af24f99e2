#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace fn3 {

using cx = std::complex<double>;

struct Vec3 {
  std::array<cx, 3> e{};

  cx& operator[](std::size_t i) { return e[i]; }
  const cx& operator[](std::size_t i) const { return e[i]; }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}};
}
inline Vec3 operator*(const cx& s, const Vec3& v) {
  return {{s * v[0], s * v[1], s * v[2]}};
}
inline cx dot_bilinear(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
           a[0] * b[1] - a[1] * b[0]}};
}
inline double norm2(const Vec3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

// Row-major 3x3 complex matrix.
struct Mat3 {
  std::array<cx, 9> e{};

  cx& operator()(std::size_t i, std::size_t j) { return e[3 * i + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return e[3 * i + j]; }

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static Mat3 diag(const cx& a, const cx& b, const cx& c) {
    Mat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
  }
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, 0) = c0[i];
      m(i, 1) = c1[i];
      m(i, 2) = c2[i];
    }
    return m;
  }

  Vec3 row(std::size_t i) const { return {{(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}}; }
  Vec3 col(std::size_t j) const { return {{(*this)(0, j), (*this)(1, j), (*this)(2, j)}}; }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 m;
  for (std::size_t k = 0; k < 9; ++k) m.e[k] = a.e[k] + b.e[k];
  return m;
}
inline Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 m;
  for (std::size_t k = 0; k < 9; ++k) m.e[k] = a.e[k] - b.e[k];
  return m;
}
inline Mat3 operator*(const cx& s, const Mat3& a) {
  Mat3 m;
  for (std::size_t k = 0; k < 9; ++k) m.e[k] = s * a.e[k];
  return m;
}
inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      m(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return m;
}
inline Vec3 operator*(const Mat3& a, const Vec3& v) {
  Vec3 w;
  for (std::size_t i = 0; i < 3; ++i)
    w[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
  return w;
}

inline cx trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

inline Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = m(j, i);
  return t;
}

inline Mat3 conj(const Mat3& m) {
  Mat3 t;
  for (std::size_t k = 0; k < 9; ++k) t.e[k] = std::conj(m.e[k]);
  return t;
}

inline Mat3 conj_transpose(const Mat3& m) { return conj(transpose(m)); }

// adjugate: M * adj(M) = det(M) * I; rank(M) <= 1  <=>  adj(M) = 0.
inline Mat3 adjugate(const Mat3& m) {
  Mat3 a;
  a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return a;
}

inline cx det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline Mat3 inverse(const Mat3& m) {
  cx d = det(m);
  return (cx(1.0) / d) * adjugate(m);
}

// Group inverse on the det-1 locus: exact up to products, no division.
inline Mat3 inverse_unimodular(const Mat3& m) { return adjugate(m); }

inline double max_abs(const Mat3& m) {
  double r = 0.0;
  for (const auto& z : m.e) r = std::max(r, std::abs(z));
  return r;
}

inline double frobenius(const Mat3& m) {
  double s = 0.0;
  for (const auto& z : m.e) s += std::norm(z);
  return std::sqrt(s);
}

inline double max_abs_imag(const Mat3& m) {
  double r = 0.0;
  for (const auto& z : m.e) r = std::max(r, std::abs(z.imag()));
  return r;
}

inline double distance(const Mat3& a, const Mat3& b) { return max_abs(a - b); }

inline double relative_residual(const Mat3& got, const Mat3& want) {
  return max_abs(got - want) / (1.0 + max_abs(want));
}

// Frobenius condition estimate; an upper bound proxy good enough for
// well-conditioned / ill-conditioned gating.
inline double condition_estimate(const Mat3& m) {
  return frobenius(m) * frobenius(inverse(m));
}

}  // namespace fn3
