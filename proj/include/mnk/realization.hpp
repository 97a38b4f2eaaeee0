#pragma once
//
// Hyperbolic realization of the fundamental piece Q_n: the truncated
// tetrahedron with hyperideal vertices tau (top apex), upsilon (bottom apex),
// alpha and delta (consecutive rim vertices), cut out of the generalized cube
// CP_n by two half-planes through the vertical axis.
//
// The shape depends on three parameters (h, r, theta): the chart distances of
// tau and alpha from the origin and the elevation angle of alpha.  Three
// conditions pin them down:
//   * tau, alpha, delta and alpha' = delta N are coplanar,
//   * the truncated edges tau-alpha and alpha-delta have equal length,
//   * dihedral angles around every glued edge class sum to 2 pi,
// and each has a closed-form solution.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mnk/error.hpp"
#include "mnk/labels.hpp"
#include "mnk/minkowski.hpp"

namespace mnk {

enum class CaseTag { NotDivBy3, DivBy3 };

inline CaseTag case_of(int n) { return n % 3 == 0 ? CaseTag::DivBy3 : CaseTag::NotDivBy3; }

inline const char* to_string(CaseTag tag) {
  return tag == CaseTag::DivBy3 ? "DivBy3" : "NotDivBy3";
}

struct RealizationParams {
  int n = 0;
  CaseTag case_tag = CaseTag::NotDivBy3;
  double c_n = 0;
  double one_minus_c = 0;  // 2 sin^2(pi/2n), free of cancellation for large n
  double h = 0;
  double r = 0;
  double sin_theta = 0;
  double theta = 0;
};

namespace detail {

inline double checked_sqrt(double radicand, const char* what) {
  if (!(radicand > 0))
    throw Error(ErrorKind::NumericalDegeneracy, std::string(what) + " radicand is not positive");
  return std::sqrt(radicand);
}

}  // namespace detail

/// Apex height h from the angle-sum condition, case by case.
inline double one_minus_cos_pi_over(int n) {
  const double s = std::sin(M_PI / (2.0 * n));
  return 2 * s * s;
}

inline double apex_height(int n) {
  const double c = std::cos(M_PI / n), omc = one_minus_cos_pi_over(n);
  if (case_of(n) == CaseTag::NotDivBy3) {
    // sqrt(8c^2+1) - 3c rewritten as (1-c^2) / (sqrt(8c^2+1) + 3c).
    const double sum = detail::checked_sqrt(8 * c * c + 1, "8c^2+1") + 3 * c;
    return (1 + c) / detail::checked_sqrt(omc * sum, "(1-c)(sqrt(8c^2+1)+3c)");
  }
  return std::sqrt(1 + c) * detail::checked_sqrt(2 * c - 1, "2c-1") /
         (std::sqrt(omc) * std::sqrt(2 * c + 1));
}

inline RealizationParams solve_parameters(int n) {
  if (n < 4)
    throw Error(ErrorKind::UnsupportedN,
                "n = " + std::to_string(n) + " has no hyperbolic realization (need n >= 4)");
  RealizationParams p;
  p.n = n;
  p.case_tag = case_of(n);
  p.c_n = std::cos(M_PI / n);
  p.one_minus_c = one_minus_cos_pi_over(n);
  const double c = p.c_n, omc = p.one_minus_c;
  p.h = apex_height(n);
  p.r = detail::checked_sqrt(2 * c - 1 + omc * omc * p.h * p.h, "rim radius") / c;
  p.sin_theta = omc * p.h / ((1 + c) * p.r);
  p.theta = std::asin(p.sin_theta);
  if (!(p.h > 1 && p.r > 1 && p.sin_theta > 0 && p.sin_theta < 1))
    throw Error(ErrorKind::NumericalDegeneracy, "solved parameters leave the valid region");
  return p;
}

/// Residuals of the three defining relations, each written polynomially.
struct RelationResiduals {
  double coplanarity = 0;  // sin(theta) (1+c) r - (1-c) h
  double edge_length = 0;  // c^2 r^2 - (2c - 1 + (1-c)^2 h^2)
  double angle_sum = 0;    // case-specific polynomial form of the h closed form
};

inline RelationResiduals relation_residuals(const RealizationParams& p) {
  const double c = p.c_n, h = p.h, r = p.r;
  RelationResiduals out;
  out.coplanarity = p.sin_theta * (1 + c) * r - (1 - c) * h;
  out.edge_length = c * c * r * r - (2 * c - 1 + (1 - c) * (1 - c) * h * h);
  if (p.case_tag == CaseTag::NotDivBy3)
    out.angle_sum = (1 - c) * (1 - c) * h * h - (1 + c) * (std::sqrt(8 * c * c + 1) - 3 * c);
  else
    out.angle_sum = (1 - c) * (2 * c + 1) * h * h - (1 + c) * (2 * c - 1);
  return out;
}

struct Realization {
  RealizationParams params;
  // Lifted hyperideal vertices (<v,v> = 1).
  MinkVec tau, upsilon, alpha, delta, alpha_prime;
  // Outward unit normals: beta on (tau, alpha, delta), gamma on (alpha, delta,
  // upsilon), epsilon on (tau, alpha, upsilon), phi on (tau, delta, upsilon).
  MinkVec beta, gamma, epsilon, phi;
  // The same normals before rounding, indexed by opposite vertex label; all
  // zero when the realization was assembled by hand.
  std::array<ExtVec, 4> normal_ext{};
  TwistMatrix twist{4};
  double H1 = 0;
  MinkVec interior;

  const MinkVec& vertex(int label) const {
    switch (label) {
      case kTau: return tau;
      case kAlpha: return alpha;
      case kDelta: return delta;
      default: return upsilon;
    }
  }

  /// Normal of the face opposite the given vertex label.
  const MinkVec& face_normal(int opposite) const {
    switch (opposite) {
      case kTau: return gamma;
      case kAlpha: return phi;
      case kDelta: return epsilon;
      default: return beta;
    }
  }
};

/// The gamma normal's closed form (used only as a cross-check).
inline double gamma_normalizer(const RealizationParams& p) {
  const double c = p.c_n, h = p.h, r = p.r, st = p.sin_theta;
  return r * r * (1 + c) * (1 + c + (1 - c) * h * h) * st * st +
         r * r * (1 - c * c) * (1 - h * h) + 2 * (1 - c) * h * h;
}

inline MinkVec gamma_closed_form(const RealizationParams& p) {
  const double c = p.c_n, h = p.h, r = p.r;
  const double s = std::sqrt(1 - c * c);
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const MinkVec raw{h * r * s * ct, (h + r * st) * s, (1 - c) * h - r * (1 + c) * st, -r * s * ct};
  return raw / std::sqrt(gamma_normalizer(p));
}

namespace detail {

struct ExtParams {
  long double h, r, theta;
};

/// The same closed forms evaluated in long double.
inline ExtParams extended_parameters(int n) {
  using L = long double;
  const L a = std::acos(L(-1)) / n, c = std::cos(a), hs = std::sin(a / 2), omc = 2 * hs * hs;
  L h;
  if (case_of(n) == CaseTag::NotDivBy3)
    h = (1 + c) / std::sqrt(omc * (std::sqrt(8 * c * c + 1) + 3 * c));
  else
    h = std::sqrt(1 + c) * std::sqrt(2 * c - 1) / (std::sqrt(omc) * std::sqrt(2 * c + 1));
  const L r = std::sqrt(2 * c - 1 + omc * omc * h * h) / c;
  return {h, r, std::asin(omc * h / ((1 + c) * r))};
}

/// x if the double v is x rounded (within a few ulps), else v itself.
inline long double refine(double v, long double x) {
  return std::fabs(v - x) <= 8 * std::numeric_limits<double>::epsilon() * std::fabs(x) ? x : v;
}

}  // namespace detail

inline Realization build_realization(const RealizationParams& p, const Tolerances& tol = {}) {
  if (!(p.h > 1) || !(p.r > 1))
    throw Error(ErrorKind::NumericalDegeneracy, "vertices must lie outside the closed unit ball");
  Realization real;
  real.params = p;
  real.twist = TwistMatrix(p.n);
  // Built in extended precision; the normals below amplify rounding in the
  // rim vertices by roughly n^2.
  using L = long double;
  // Parameters that are the rounded canonical solution are refined first.
  const auto ext = detail::extended_parameters(p.n);
  const L h = detail::refine(p.h, ext.h), r = detail::refine(p.r, ext.r), theta = detail::refine(p.theta, ext.theta);
  const L rot = std::acos(L(-1)) / p.n;
  const L rc = std::cos(rot), rs = std::sin(rot);
  auto twist = [&](const ExtVec& a) { return ExtVec{a[0], rc * a[1] - rs * a[2], rs * a[1] + rc * a[2], -a[3]}; };
  const L ht = std::sqrt(h * h - 1), rt = std::sqrt(r * r - 1);
  const ExtVec tau{1 / ht, 0, 0, h / ht};
  const ExtVec alpha{1 / rt, r * std::cos(theta) / rt, 0, r * std::sin(theta) / rt};
  const ExtVec upsilon = twist(tau), delta = twist(alpha), alpha_prime = twist(delta);
  real.tau = narrow(tau);
  real.upsilon = narrow(upsilon);
  real.alpha = narrow(alpha);
  real.delta = narrow(delta);
  real.alpha_prime = narrow(alpha_prime);

  ChartPoint centroid;
  for (const MinkVec* v : {&real.tau, &real.upsilon, &real.alpha, &real.delta}) {
    const ChartPoint c = project_to_chart(*v, tol);
    centroid.y1 += c.y1 / 4;
    centroid.y2 += c.y2 / 4;
    centroid.y3 += c.y3 / 4;
  }
  real.interior = lift_chart_point(centroid);

  auto& ne = real.normal_ext;
  ne[kTau] = plane_normal_ext(alpha, delta, upsilon, real.interior, tol);
  ne[kUpsilon] = plane_normal_ext(delta, alpha_prime, tau, real.interior, tol);
  ne[kDelta] = plane_normal_ext(tau, alpha, upsilon, real.interior, tol);
  ne[kAlpha] = plane_normal_ext(tau, delta, upsilon, real.interior, tol);
  real.gamma = narrow(ne[kTau]);
  real.beta = narrow(ne[kUpsilon]);
  real.epsilon = narrow(ne[kDelta]);
  real.phi = narrow(ne[kAlpha]);
  real.H1 = gamma_normalizer(p);
  return real;
}

struct DihedralAngles {
  double xi = 0;        // along tau-alpha (between beta and epsilon planes)
  double zeta = 0;      // along alpha-delta (between beta and gamma planes)
  double axis = 0;      // along tau-upsilon (between epsilon and phi planes)
  double diagonal = 0;  // along tau-delta (between beta and phi planes)
  std::array<double, 6> by_edge{};  // indexed by edge_index()
};

inline double angle_between_ext(const ExtVec& u, const ExtVec& w) {
  const long double ip = mink_inner_ext(u, w);
  if (!(std::fabs(ip) < 1))
    throw Error(ErrorKind::OutOfRange, "planes do not intersect (|<u,w>| = " +
                                           std::to_string(static_cast<double>(std::fabs(ip))) + ")");
  // Half-angle form: well conditioned when the planes are nearly parallel.
  ExtVec sum, diff;
  for (int i = 0; i < 4; ++i) {
    sum[i] = u[i] + w[i];
    diff[i] = u[i] - w[i];
  }
  const long double plus = std::max(mink_inner_ext(sum, sum), 0.0L),
                   minus = std::max(mink_inner_ext(diff, diff), 0.0L);
  return static_cast<double>(2 * std::atan2(std::sqrt(plus), std::sqrt(minus)));
}

inline double angle_between(const MinkVec& u, const MinkVec& w) { return angle_between_ext(extend(u), extend(w)); }

inline DihedralAngles dihedral_angles(const Realization& real) {
  DihedralAngles out;
  for (int e = 0; e < 6; ++e) {
    const auto [f1, f2] = faces_at_edge(e);
    const bool ext = real.normal_ext[f1] != ExtVec{} && real.normal_ext[f2] != ExtVec{};
    out.by_edge[e] = ext ? angle_between_ext(real.normal_ext[f1], real.normal_ext[f2])
                         : angle_between(real.face_normal(f1), real.face_normal(f2));
  }
  out.xi = out.by_edge[edge_index(kTau, kAlpha)];
  out.zeta = out.by_edge[edge_index(kAlpha, kDelta)];
  out.axis = out.by_edge[edge_index(kTau, kUpsilon)];
  out.diagonal = out.by_edge[edge_index(kTau, kDelta)];
  return out;
}

/// Number of (2 xi + zeta) blocks around one glued edge class of P_n.
inline double angle_sum_multiplier(const RealizationParams& p) {
  return p.case_tag == CaseTag::DivBy3 ? 2.0 * p.n / 3.0 : 2.0 * p.n;
}

enum class TruncatedEdge { A0, B0 };

/// Length of a truncated edge: arccosh |<pole, pole>| of its two end poles.
inline double edge_length(const Realization& real, TruncatedEdge edge) {
  const double ip = edge == TruncatedEdge::A0 ? mink_inner(real.tau, real.alpha)
                                              : mink_inner(real.alpha, real.delta);
  if (!(std::fabs(ip) > 1))
    throw Error(ErrorKind::NotUltraparallel, "truncation planes meet");
  return std::acosh(std::fabs(ip));
}

struct ValidationTolerances {
  double residual = 1e-10;
  double unit = 1e-12;
};

struct ValidationReport {
  double planarity_residual = 0;
  double edge_length_residual = 0;
  double angle_sum_residual = 0;
  double unit_norm_residual = 0;
  double twist_residual = 0;
  double polar_residual = 0;
  double min_pole_separation = 0;  // min |<v_i, v_j>| over distinct rim/apex poles
  bool h_outside = false;
  bool r_outside = false;
  bool ultraparallel = false;
  bool polar_orthogonal = false;
  bool verdict = false;
  std::vector<std::string> failures;
};

/// Lifts of all 2n+2 vertices of CP_n: tau, upsilon, then the rim alternating
/// alpha_0, delta_0, alpha_1, delta_1, ...
inline std::vector<MinkVec> all_vertex_poles(const Realization& real) {
  std::vector<MinkVec> out{real.tau, real.upsilon};
  MinkVec v = real.alpha;
  for (int i = 0; i < 2 * real.params.n; ++i) {
    out.push_back(v);
    v = apply_twist(v, real.twist);
  }
  return out;
}

inline ValidationReport validate_realization(const Realization& real,
                                             const ValidationTolerances& tol = {}) {
  ValidationReport rep;
  const auto& p = real.params;
  rep.h_outside = p.h > 1;
  rep.r_outside = p.r > 1;
  rep.planarity_residual = std::fabs(mink_inner(real.alpha, real.beta));
  rep.edge_length_residual =
      std::fabs(mink_inner(real.tau, real.alpha) - mink_inner(real.alpha, real.delta));

  for (const MinkVec* v : {&real.tau, &real.upsilon, &real.alpha, &real.delta, &real.alpha_prime,
                           &real.beta, &real.gamma, &real.epsilon, &real.phi})
    rep.unit_norm_residual = std::max(rep.unit_norm_residual, std::fabs(mink_inner(*v, *v) - 1));

  rep.twist_residual = std::max({max_abs_diff(real.upsilon, apply_twist(real.tau, real.twist)),
                                 max_abs_diff(real.delta, apply_twist(real.alpha, real.twist)),
                                 max_abs_diff(real.alpha_prime, apply_twist(real.delta, real.twist)),
                                 max_abs_diff(real.beta, apply_twist(real.gamma, real.twist))});

  for (int v = 0; v < 4; ++v)
    for (int face = 0; face < 4; ++face)
      if (face != v)
        rep.polar_residual = std::max(
            rep.polar_residual, std::fabs(mink_inner(real.vertex(v), real.face_normal(face))));
  rep.polar_orthogonal = rep.polar_residual < tol.residual;

  try {
    const DihedralAngles ang = dihedral_angles(real);
    rep.angle_sum_residual =
        std::fabs(angle_sum_multiplier(p) * (2 * ang.xi + ang.zeta) - 2 * M_PI);
  } catch (const Error& e) {
    rep.angle_sum_residual = INFINITY;
    rep.failures.emplace_back(e.what());
  }

  const auto poles = all_vertex_poles(real);
  rep.min_pole_separation = INFINITY;
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      rep.min_pole_separation =
          std::min(rep.min_pole_separation, std::fabs(mink_inner(poles[i], poles[j])));
  rep.ultraparallel = rep.min_pole_separation > 1;

  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) rep.failures.push_back(msg);
  };
  require(rep.h_outside, "h <= 1");
  require(rep.r_outside, "r <= 1");
  require(rep.planarity_residual < tol.residual, "coplanarity residual too large");
  require(rep.edge_length_residual < tol.residual, "edge-length residual too large");
  require(rep.angle_sum_residual < tol.residual, "angle-sum residual too large");
  require(rep.unit_norm_residual < tol.unit, "lifts are not unit space-like");
  require(rep.twist_residual < tol.residual, "twist relations violated");
  require(rep.polar_orthogonal, "truncation planes not orthogonal to incident faces");
  require(rep.ultraparallel, "some truncation planes intersect");
  rep.verdict = rep.failures.empty();
  return rep;
}

/// Validates raw parameters, reporting (rather than throwing) when they do not
/// even admit a realization.
inline ValidationReport validate_parameters(const RealizationParams& p,
                                            const ValidationTolerances& tol = {}) {
  try {
    return validate_realization(build_realization(p), tol);
  } catch (const Error& e) {
    ValidationReport rep;
    rep.h_outside = p.h > 1;
    rep.r_outside = p.r > 1;
    rep.angle_sum_residual = rep.planarity_residual = rep.edge_length_residual = INFINITY;
    rep.failures.emplace_back(e.what());
    return rep;
  }
}

}  // namespace mnk
