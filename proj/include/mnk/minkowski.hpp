#pragma once
//
// Lorentzian linear algebra on E^{1,3} with signature (-,+,+,+).
//
// Conventions used throughout the library:
//   * x0 is the time-like coordinate; the affine chart is x0 = 1 and the
//     projective ball model is the open unit ball in that chart.
//   * Points of hyperbolic space lift to <x,x> = -1, x0 > 0.  Geodesic planes
//     (and hyperideal vertices, via their polar planes) lift to <x,x> = +1.
//   * Matrices act on row vectors: y = x * M.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "mnk/error.hpp"

namespace mnk {

struct Tolerances {
  double orthogonality = 1e-12;
  double degeneracy = 1e-10;
};

struct MinkVec {
  std::array<double, 4> x{};

  constexpr MinkVec() = default;
  constexpr MinkVec(double x0, double x1, double x2, double x3) : x{x0, x1, x2, x3} {}

  constexpr double& operator[](std::size_t i) { return x[i]; }
  constexpr double operator[](std::size_t i) const { return x[i]; }

  friend constexpr MinkVec operator+(const MinkVec& a, const MinkVec& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  }
  friend constexpr MinkVec operator-(const MinkVec& a, const MinkVec& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
  }
  friend constexpr MinkVec operator-(const MinkVec& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
  friend constexpr MinkVec operator*(double s, const MinkVec& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
  }
  friend constexpr MinkVec operator*(const MinkVec& a, double s) { return s * a; }
  friend constexpr MinkVec operator/(const MinkVec& a, double s) {
    return {a[0] / s, a[1] / s, a[2] / s, a[3] / s};
  }

  bool finite() const {
    for (double v : x)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

inline constexpr double mink_inner(const MinkVec& a, const MinkVec& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Largest absolute component.
inline double max_abs(const MinkVec& a) {
  double m = 0;
  for (double v : a.x) m = std::fmax(m, std::fabs(v));
  return m;
}

inline double max_abs_diff(const MinkVec& a, const MinkVec& b) { return max_abs(a - b); }

inline MinkVec normalize_spacelike(const MinkVec& a, const Tolerances& tol = {}) {
  const double q = mink_inner(a, a);
  if (!(q > tol.degeneracy))
    throw Error(ErrorKind::NonSpacelike, "<a,a> = " + std::to_string(q) + " is not positive");
  return a / std::sqrt(q);
}

/// The order-2n twist used to generate the fundamental polyhedron from one
/// piece: rotation by pi/n in the (x1,x2)-plane composed with x3 -> -x3.
class TwistMatrix {
 public:
  using Rows = std::array<std::array<double, 4>, 4>;

  explicit TwistMatrix(int n) : n_(n) {
    if (n < 1) throw Error(ErrorKind::UnsupportedN, "twist order must be positive");
    const double c = std::cos(M_PI / n);
    const double s = std::sin(M_PI / n);
    m_ = Rows{{{1, 0, 0, 0}, {0, c, s, 0}, {0, -s, c, 0}, {0, 0, 0, -1}}};
  }

  int n() const { return n_; }
  const Rows& entries() const { return m_; }
  double operator()(int i, int j) const { return m_[i][j]; }

  /// Block form: 1 * det(rotation) * (-1) = -1.
  double determinant() const {
    return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) * m_[3][3];
  }

  /// M^p as a plain matrix.
  Rows power(int p) const {
    Rows r{};
    for (int i = 0; i < 4; ++i) r[i][i] = 1;
    for (int step = 0; step < p; ++step) {
      Rows next{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int l = 0; l < 4; ++l) next[i][j] += r[i][l] * m_[l][j];
      r = next;
    }
    return r;
  }

 private:
  int n_;
  Rows m_{};
};

/// Row-vector convention: returns a * N.
inline MinkVec apply_twist(const MinkVec& a, const TwistMatrix& twist) {
  MinkVec out;
  for (int j = 0; j < 4; ++j) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += a[i] * twist(i, j);
    out[j] = s;
  }
  return out;
}

struct ChartPoint {
  double y1 = 0, y2 = 0, y3 = 0;

  double norm() const { return std::sqrt(y1 * y1 + y2 * y2 + y3 * y3); }
};

inline ChartPoint project_to_chart(const MinkVec& a, const Tolerances& tol = {}) {
  if (std::fabs(a[0]) <= tol.degeneracy)
    throw Error(ErrorKind::AtInfinity, "x0 vanishes; point is at infinity of the chart");
  return {a[1] / a[0], a[2] / a[0], a[3] / a[0]};
}

inline MinkVec lift_chart_point(const ChartPoint& p) { return {1.0, p.y1, p.y2, p.y3}; }

/// Extended-precision vector, used where nearly coincident rim vertices make
/// the normal computation ill conditioned.
using ExtVec = std::array<long double, 4>;

inline ExtVec extend(const MinkVec& v) { return {v[0], v[1], v[2], v[3]}; }

inline MinkVec narrow(const ExtVec& v) {
  return {static_cast<double>(v[0]), static_cast<double>(v[1]), static_cast<double>(v[2]),
          static_cast<double>(v[3])};
}

inline long double mink_inner_ext(const ExtVec& a, const ExtVec& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Unit space-like normal w of the plane spanned by p, q, r, oriented so that
/// <w, interior> < 0.
///
/// w solves <w,p> = <w,q> = <w,r> = 0; it is the generalized cross product of
/// the rows (eta p, eta q, eta r) with eta = diag(-1,1,1,1).
inline ExtVec plane_normal_ext(const ExtVec& p, const ExtVec& q, const ExtVec& r, const MinkVec& interior,
                            const Tolerances& tol = {}) {
  const std::array<ExtVec, 3> rows{ExtVec{-p[0], p[1], p[2], p[3]}, ExtVec{-q[0], q[1], q[2], q[3]},
                                   ExtVec{-r[0], r[1], r[2], r[3]}};
  auto minor = [&](int skip) {
    std::array<int, 3> c{};
    for (int j = 0, t = 0; j < 4; ++j)
      if (j != skip) c[t++] = j;
    const auto& a = rows[0];
    const auto& b = rows[1];
    const auto& d = rows[2];
    return a[c[0]] * (b[c[1]] * d[c[2]] - b[c[2]] * d[c[1]]) -
           a[c[1]] * (b[c[0]] * d[c[2]] - b[c[2]] * d[c[0]]) +
           a[c[2]] * (b[c[0]] * d[c[1]] - b[c[1]] * d[c[0]]);
  };
  const ExtVec raw{-minor(0), minor(1), -minor(2), minor(3)};

  auto amax = [](const ExtVec& v) {
    long double m = 0;
    for (auto x : v) m = std::max(m, std::fabs(x));
    return m;
  };
  const long double scale = amax(p) * amax(q) * amax(r);
  if (!(scale > 0) || amax(raw) <= tol.degeneracy * scale)
    throw Error(ErrorKind::DegenerateSpan, "spanning vectors are linearly dependent");

  const long double norm2 = mink_inner_ext(raw, raw);
  if (!(norm2 > 0))
    throw Error(ErrorKind::NonSpacelike, "plane does not meet hyperbolic space");
  const long double len = std::sqrt(norm2);
  ExtVec w{raw[0] / len, raw[1] / len, raw[2] / len, raw[3] / len};
  const double side = mink_inner(narrow(w), interior);
  if (std::fabs(side) <= tol.degeneracy * max_abs(interior))
    throw Error(ErrorKind::AmbiguousOrientation, "interior witness lies on the plane");
  if (side > 0)
    for (auto& x : w) x = -x;
  return w;
}

inline MinkVec plane_normal(const MinkVec& p, const MinkVec& q, const MinkVec& r,
                            const MinkVec& interior, const Tolerances& tol = {}) {
  return narrow(plane_normal_ext(extend(p), extend(q), extend(r), interior, tol));
}

}  // namespace mnk
