#pragma once
//
// Tilts of the four internal faces of the truncated tetrahedron Q_n.  Each
// face normal u_j is paired with the truncation pole v_j of the vertex it does
// not contain; with G the Gram matrix of the normals,
//     t = G * ( -1 / <u_j, v_j> )_j .
// All four tilts negative means the orange-segment cut is the canonical
// decomposition.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "mnk/error.hpp"
#include "mnk/realization.hpp"

namespace mnk {

using Mat4 = std::array<std::array<double, 4>, 4>;

enum class TiltMethod { GramEquation, ClosedForm };

/// DirectNormals uses the four normals as computed.  PhiEqualsEpsilon
/// substitutes phi := epsilon everywhere (the degenerate reading in which the
/// two side faces share a normal).
enum class NormalConvention { DirectNormals, PhiEqualsEpsilon };

inline const char* to_string(NormalConvention c) {
  return c == NormalConvention::DirectNormals ? "direct" : "phi_equals_epsilon";
}

struct TiltVector {
  double t_beta = 0, t_gamma = 0, t_epsilon = 0, t_phi = 0;
  double H2 = 0, H3 = 0;  // only set by the closed form
  TiltMethod method = TiltMethod::GramEquation;

  std::array<double, 4> as_array() const { return {t_beta, t_gamma, t_epsilon, t_phi}; }
  double max() const { return std::max({t_beta, t_gamma, t_epsilon, t_phi}); }
};

/// Normals in the order (beta, gamma, epsilon, phi).
inline std::array<MinkVec, 4> tilt_normals(const Realization& real,
                                           NormalConvention conv = NormalConvention::DirectNormals) {
  const MinkVec& last = conv == NormalConvention::DirectNormals ? real.phi : real.epsilon;
  return {real.beta, real.gamma, real.epsilon, last};
}

inline Mat4 gram_matrix(const Realization& real,
                        NormalConvention conv = NormalConvention::DirectNormals) {
  const auto u = tilt_normals(real, conv);
  Mat4 g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = i == j ? 1.0 : mink_inner(u[i], u[j]);
  return g;
}

/// Each face with the pole of the vertex it misses: beta-upsilon, gamma-tau,
/// epsilon-delta, phi-alpha.
inline std::array<MinkVec, 4> opposite_pairing(const Realization& real,
                                               NormalConvention conv = NormalConvention::DirectNormals) {
  const MinkVec& last = conv == NormalConvention::DirectNormals ? real.alpha : real.delta;
  return {real.upsilon, real.tau, real.delta, last};
}

/// beta-tau, gamma-upsilon, epsilon-alpha, phi-delta.  Every one of these
/// vertices lies on the paired face, so the inner products vanish.
inline std::array<MinkVec, 4> printed_pairing(const Realization& real) {
  return {real.tau, real.upsilon, real.alpha, real.delta};
}

inline constexpr double kPairingFloor = 1e-12;

inline TiltVector tilts_with_pairing(const Realization& real, const std::array<MinkVec, 4>& poles,
                                     NormalConvention conv = NormalConvention::DirectNormals) {
  const auto u = tilt_normals(real, conv);
  const Mat4 g = gram_matrix(real, conv);
  std::array<double, 4> rhs{};
  for (int j = 0; j < 4; ++j) {
    const double ip = mink_inner(u[j], poles[j]);
    if (!(std::fabs(ip) >= kPairingFloor))
      throw Error(ErrorKind::SingularPairing,
                  "face " + std::to_string(j) + " pairs with a vertex on its own plane");
    rhs[j] = -1.0 / ip;
  }
  std::array<double, 4> t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i] += g[i][j] * rhs[j];
  TiltVector out;
  out.t_beta = t[0];
  out.t_gamma = t[1];
  out.t_epsilon = t[2];
  out.t_phi = t[3];
  out.method = TiltMethod::GramEquation;
  return out;
}

inline TiltVector tilts_from_gram(const Realization& real,
                                  NormalConvention conv = NormalConvention::DirectNormals) {
  return tilts_with_pairing(real, opposite_pairing(real, conv), conv);
}

/// The printed closed forms, evaluated literally.
inline TiltVector tilts_closed_form(int n, double h) {
  if (n < 4) throw Error(ErrorKind::UnsupportedN, "closed forms need n >= 4");
  const double c = std::cos(M_PI / n);
  const double h2 = h * h;
  const double sq = std::sqrt(1 - c);
  const double H2 = (1 + c) * ((1 - c) * h2 + (1 + c) * (2 * c - 1)) +
                    h2 * (1 - c) * (1 + c - (1 - c) * (2 * c + 1) * h2);
  const double denom = (1 + c) * (1 + c) * (2 * c - 1) + (1 - c) * (1 - c) * (2 * c + 1) * h2;
  if (!(H2 > 0)) throw Error(ErrorKind::NumericalDegeneracy, "H2 is not positive");
  if (std::fabs(denom) < 1e-300) throw Error(ErrorKind::NumericalDegeneracy, "H3 denominator vanishes");
  const double H3 = (h2 - 1) / denom;
  if (!(H3 >= 0)) throw Error(ErrorKind::NumericalDegeneracy, "H3 is negative");

  TiltVector out;
  out.method = TiltMethod::ClosedForm;
  out.H2 = H2;
  out.H3 = H3;
  out.t_beta = -h * std::sqrt(H3 / H2) *
               ((1 - c) * (1 - c) * (2 * c + 1) * h2 + sq * (1 + c) * (2 * c - sq));
  out.t_gamma = out.t_beta;
  out.t_epsilon = -std::sqrt(H3) * sq * std::sqrt(1 + c) * (c - sq);
  out.t_phi = out.t_epsilon;
  return out;
}

inline double max_tilt_diff(const TiltVector& a, const TiltVector& b) {
  const auto x = a.as_array(), y = b.as_array();
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::fabs(x[i] - y[i]));
  return m;
}

struct CanonicalityVerdict {
  bool is_canonical = false;
  double margin = 0;  // largest Gram-route tilt; negative when canonical
  TiltVector gram;
  TiltVector closed_form;
  double residual_direct = 0;      // |gram(direct) - closed form|
  double residual_phi_eps = 0;     // |gram(phi := epsilon) - closed form|
  std::optional<NormalConvention> matching_convention;  // within the report tolerance
};

inline constexpr double kTiltAgreementTolerance = 1e-6;

inline CanonicalityVerdict canonicality_verdict(const Realization& real) {
  CanonicalityVerdict v;
  v.gram = tilts_from_gram(real);
  v.margin = v.gram.max();
  v.is_canonical = v.margin < 0;
  v.closed_form = tilts_closed_form(real.params.n, real.params.h);
  v.residual_direct = max_tilt_diff(v.gram, v.closed_form);
  v.residual_phi_eps =
      max_tilt_diff(tilts_from_gram(real, NormalConvention::PhiEqualsEpsilon), v.closed_form);
  if (v.residual_direct < kTiltAgreementTolerance)
    v.matching_convention = NormalConvention::DirectNormals;
  else if (v.residual_phi_eps < kTiltAgreementTolerance)
    v.matching_convention = NormalConvention::PhiEqualsEpsilon;
  return v;
}

}  // namespace mnk
