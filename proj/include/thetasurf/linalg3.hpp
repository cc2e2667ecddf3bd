#ifndef THETASURF_LINALG3_HPP
#define THETASURF_LINALG3_HPP

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

namespace thetasurf {

template <class T>
using Vec3 = std::array<T, 3>;
template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <class T>
T det3(const Mat3<T>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class T>
Mat3<T> adj3(const Mat3<T>& m) {
  Mat3<T> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  return a;
}

template <class T>
Mat3<T> inv3(const Mat3<T>& m) {
  T d = det3(m);
  Mat3<T> a = adj3(m);
  for (auto& r : a)
    for (auto& v : r) v = v / d;
  return a;
}

template <class T>
Mat3<T> mul3(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T s = a[i][0] * b[0][j];
      for (int k = 1; k < 3; ++k) s = s + a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

template <class T>
Vec3<T> mul3(const Mat3<T>& a, const Vec3<T>& v) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return r;
}

template <class T>
Mat3<T> transpose3(const Mat3<T>& a) {
  Mat3<T> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

// Quadratic form v^T M v for a symmetric M.
template <class T, class V>
T quad3(const Mat3<T>& m, const Vec3<V>& v) {
  T s = m[0][0] * v[0] * v[0] + m[1][1] * v[1] * v[1] + m[2][2] * v[2] * v[2];
  s = s + T(2) * (m[0][1] * v[0] * v[1] + m[0][2] * v[0] * v[2] + m[1][2] * v[1] * v[2]);
  return s;
}

// Eigenvalues of a real symmetric 3x3 matrix by cyclic Jacobi sweeps.
template <class Real>
Vec3<Real> sym_eigenvalues(Mat3<Real> a) {
  using std::abs;
  using std::sqrt;
  for (int sweep = 0; sweep < 60; ++sweep) {
    Real off = abs(a[0][1]) + abs(a[0][2]) + abs(a[1][2]);
    Real scale = abs(a[0][0]) + abs(a[1][1]) + abs(a[2][2]);
    if (off == 0 || off <= scale * std::numeric_limits<Real>::epsilon() * Real(1e-3)) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0) continue;
        Real theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
        Real c = 1 / sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < 3; ++k) {
          Real akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          Real apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  Vec3<Real> ev{a[0][0], a[1][1], a[2][2]};
  if (ev[1] < ev[0]) std::swap(ev[0], ev[1]);
  if (ev[2] < ev[1]) std::swap(ev[1], ev[2]);
  if (ev[1] < ev[0]) std::swap(ev[0], ev[1]);
  return ev;
}

}  // namespace thetasurf

#endif
