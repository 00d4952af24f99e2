#pragma once

#include <array>
#include <complex>

#include "fn3/mat3.hpp"

namespace fn3 {

// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<cx, 4> e{};

  cx& operator()(std::size_t i, std::size_t j) { return e[2 * i + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return e[2 * i + j]; }

  static Mat2 identity() {
    Mat2 m;
    m.e = {1.0, 0.0, 0.0, 1.0};
    return m;
  }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      m(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return m;
}

inline cx trace(const Mat2& m) { return m.e[0] + m.e[3]; }
inline cx det(const Mat2& m) { return m.e[0] * m.e[3] - m.e[1] * m.e[2]; }

// inverse on the det-1 locus
inline Mat2 inverse_unimodular(const Mat2& m) {
  Mat2 r;
  r.e = {m.e[3], -m.e[1], -m.e[2], m.e[0]};
  return r;
}

// [[ahat, offset],[0, 1]]: unimodular when ahat is, preserves the plane
// spanned by the first two basis vectors
inline Mat3 block_embed(const Mat2& ahat, const cx& off0 = 0.0, const cx& off1 = 0.0) {
  Mat3 m;
  m(0, 0) = ahat(0, 0);
  m(0, 1) = ahat(0, 1);
  m(1, 0) = ahat(1, 0);
  m(1, 1) = ahat(1, 1);
  m(0, 2) = off0;
  m(1, 2) = off1;
  m(2, 2) = 1.0;
  return m;
}

}  // namespace fn3
