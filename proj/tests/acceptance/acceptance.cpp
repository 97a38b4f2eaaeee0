// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mnk/groups.hpp"
#include "mnk/tilt.hpp"

using namespace mnk;

namespace {

// Pinned tolerances.
constexpr double kResidualTol = 1e-10;
constexpr double kAngleTol = 1e-10;
constexpr double kAxisAngleTol = 1e-12;
constexpr double kTiltSymmetryTol = 1e-9;
constexpr double kTiltMarginFloor = 1e-6;
constexpr double kTiltMatchTol = 1e-6;
constexpr double kSpotTol = 1e-3;

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    if (details.size() < 40) details.push_back(why);
  }
};

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

int report(int id, const Outcome& o) {
  std::printf("AC%d %s %s\n", id, o.pass ? "PASS" : "FAIL", o.summary.c_str());
  for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

Outcome ac1_hyperbolicity() {
  Outcome o;
  double worst = 0, min_sep = INFINITY;
  for (int n = 4; n <= 30; ++n) {
    const auto real = build_realization(solve_parameters(n));
    const auto rep = validate_realization(real, {kResidualTol, 1e-12});
    worst = std::max({worst, rep.planarity_residual, rep.edge_length_residual, rep.angle_sum_residual,
                      rep.unit_norm_residual, rep.twist_residual, rep.polar_residual});
    min_sep = std::min(min_sep, rep.min_pole_separation);
    if (!rep.verdict) o.fail(fmt("n=%d: %s", n, rep.failures.empty() ? "?" : rep.failures.front().c_str()));
    if (!(real.params.h > 1 && real.params.r > 1)) o.fail(fmt("n=%d: h or r not > 1", n));
    if (n == 6) o.details.push_back(fmt("n=6: h=%.12f r=%.12f verdict=%s", real.params.h, real.params.r, rep.verdict ? "true" : "false"));
  }
  o.summary = fmt("validate_realization n=4..30, max residual %.2e, min |<v_i,v_j>| %.6f", worst, min_sep);
  return o;
}

Outcome ac2_angle_sums() {
  Outcome o;
  double worst_edge = 0, worst_axis = 0;
  for (int n = 4; n <= 30; ++n) {
    const auto ang = dihedral_angles(build_realization(solve_parameters(n)));
    const double blocks = n % 3 == 0 ? 2.0 * n / 3.0 : 2.0 * n;
    const double formula = std::fabs(blocks * (2 * ang.xi + ang.zeta) - 2 * M_PI);
    worst_edge = std::max(worst_edge, formula);
    if (formula >= kAngleTol) o.fail(fmt("n=%d: closed-form sum off by %.2e", n, formula));
    for (int k : {0, 1, 2}) {
      const auto dec = build_decomposition(n, k);
      const auto cls = edge_classes(dec);
      const auto rep = angle_sum_check(cls, {ang.axis, ang.xi, ang.zeta, ang.diagonal});
      for (const auto& c : rep.classes) {
        const bool axis = cls[c.edge_class].kind == EdgeClassKind::Axis;
        (axis ? worst_axis : worst_edge) = std::max(axis ? worst_axis : worst_edge, c.residual);
        if (c.residual >= (axis ? kAxisAngleTol : kAngleTol))
          o.fail(fmt("(n,k)=(%d,%d) class %d (%s) sums off by %.2e", n, k, c.edge_class,
                     to_string(cls[c.edge_class].kind), c.residual));
      }
    }
  }
  o.summary = fmt("n=4..30: edge classes within %.2e (tol %.0e), axis within %.2e (tol %.0e)", worst_edge, kAngleTol,
                  worst_axis, kAxisAngleTol);
  return o;
}

Outcome ac3_canonicality() {
  Outcome o;
  double min_margin = INFINITY, worst_sym = 0;
  double rd_min = INFINITY, rd_max = 0, rp_min = INFINITY, rp_max = 0;
  int match_direct = 0, match_phi = 0;
  const int count = 97;
  for (int n = 4; n <= 100; ++n) {
    const auto real = build_realization(solve_parameters(n));
    const auto v = canonicality_verdict(real);
    const auto& t = v.gram;
    const double sym = std::max(std::fabs(t.t_beta - t.t_gamma), std::fabs(t.t_epsilon - t.t_phi));
    worst_sym = std::max(worst_sym, sym);
    if (sym >= kTiltSymmetryTol) o.fail(fmt("n=%d: tilt symmetry off by %.2e", n, sym));
    if (!(v.margin < 0)) o.fail(fmt("n=%d: margin %.6e not negative", n, v.margin));
    min_margin = std::min(min_margin, std::fabs(v.margin));
    if (std::fabs(v.margin) <= kTiltMarginFloor) o.fail(fmt("n=%d: |margin| %.2e too small", n, v.margin));
    rd_min = std::min(rd_min, v.residual_direct);
    rd_max = std::max(rd_max, v.residual_direct);
    rp_min = std::min(rp_min, v.residual_phi_eps);
    rp_max = std::max(rp_max, v.residual_phi_eps);
    match_direct += v.residual_direct < kTiltMatchTol;
    match_phi += v.residual_phi_eps < kTiltMatchTol;
  }
  // A convention that matches the printed closed forms somewhere must match everywhere.
  for (auto [name, m] : {std::pair{"direct", match_direct}, std::pair{"phi_equals_epsilon", match_phi}})
    if (m != 0 && m != count) o.fail(fmt("convention %s matches closed forms at %d of %d n only", name, m, count));
  o.details.push_back(fmt("closed-form residual, direct normals: %.4f .. %.4f (matches at %d/%d n)", rd_min, rd_max,
                          match_direct, count));
  o.details.push_back(fmt("closed-form residual, phi := epsilon: %.4f .. %.4f (matches at %d/%d n)", rp_min, rp_max,
                          match_phi, count));
  o.summary = fmt("n=4..100: all Gram tilts < 0, min |margin| %.4f, symmetry within %.2e", min_margin, worst_sym);
  return o;
}

Outcome ac4_census() {
  Outcome o;
  int cells = 0;
  for (int n = 4; n <= 30; ++n)
    for (int k = 0; k < n; ++k, ++cells) {
      const auto dec = build_decomposition(n, k);
      const auto cls = edge_classes(dec);
      const auto here = fmt("(n,k)=(%d,%d)", n, k);
      std::vector<const EdgeClass*> poly;
      for (const auto& c : cls) {
        if (c.kind == EdgeClassKind::Axis && (c.wedge_count != 2 * n || c.distinct_piece_count != 2 * n))
          o.fail(here + ": axis class is not 2n wedges in 2n pieces");
        if (c.kind == EdgeClassKind::PolyhedronEdge) poly.push_back(&c);
      }
      if (n % 3 != 0) {
        if (poly.size() != 1 || poly[0]->wedge_count != 6 * n) o.fail(here + ": expected one class of 6n wedges");
        continue;
      }
      if (poly.size() != 3) {
        o.fail(here + ": expected three non-axis classes");
        continue;
      }
      for (const auto* c : poly) {
        std::set<std::pair<int, int>> edges;
        for (const auto& w : c->wedges) {
          const auto [a, b] = kEdges[w.edge];
          const int ga = dec.piece_vertices[w.piece][a], gb = dec.piece_vertices[w.piece][b];
          edges.insert({std::min(ga, gb), std::max(ga, gb)});
        }
        if (static_cast<int>(edges.size()) != 4 * n / 3) o.fail(here + ": class does not hold 4n/3 edges of P_n");
        const int want = k % 3 == 1 ? 2 * n : 4 * n / 3;
        if (c->distinct_piece_count != want)
          o.fail(here + fmt(": distinct pieces %d, expected %d", c->distinct_piece_count, want));
      }
    }
  o.summary = fmt("%d cells (n=4..30, all k): class structure and distinct-piece counts", cells);
  return o;
}

Outcome ac5_genus() {
  Outcome o;
  int cells = 0;
  for (int n = 4; n <= 30; ++n)
    for (int k = 0; k < n; ++k, ++cells) {
      const auto s = boundary_surface(build_decomposition(n, k));
      const int want = n % 3 == 0 ? n - 3 : n - 1;
      if (!s.is_orientable) o.fail(fmt("(n,k)=(%d,%d): boundary not orientable", n, k));
      if (s.components != 1 || s.genus != want)
        o.fail(fmt("(n,k)=(%d,%d): genus %d (components %d), expected %d", n, k, s.genus, s.components, want));
    }
  o.summary = fmt("%d cells (n=4..30, all k): genus n-1 / n-3, orientable", cells);
  return o;
}

Outcome ac6_classification() {
  Outcome o;
  for (int n = 4; n <= 12; ++n) {
    const auto c = classify(n, jobs());
    std::ostringstream cls;
    for (const auto& g : c.classes) {
      cls << "{";
      for (std::size_t i = 0; i < g.size(); ++i) cls << (i ? "," : "") << g[i];
      cls << "}";
      std::vector<int> want{g.front(), n - 1 - g.front()};
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      if (g != want) o.fail(fmt("n=%d: class %s is not {k, n-k-1}", n, cls.str().c_str()));
    }
    o.details.push_back(fmt("n=%d: %s", n, cls.str().c_str()));
    std::vector<Decomposition> family;
    for (int k = 0; k < n; ++k) family.push_back(build_decomposition(n, k));
    for (int k = 0; k < n; ++k) {
      if (!propagate(family[k], family[n - k - 1], kPhiSeeds[1])) o.fail(fmt("(n,k)=(%d,%d): phi_1 does not reach k'=n-k-1", n, k));
      for (int k2 = 0; k2 < n; ++k2)
        if (k2 != n - k - 1 && propagate(family[k], family[k2], kPhiSeeds[1]))
          o.fail(fmt("(n,k)=(%d,%d): phi_1 also reaches k'=%d", n, k, k2));
    }
  }
  o.summary = "full pairwise search n=4..12 gives {k, n-k-1}; phi_1 image is CD_{n,n-k-1}";
  return o;
}

bool is_special(int n, int k) {
  const int m = n / 3, l = (k - 1) / 3;
  return n % 3 == 0 && k % 3 == 1 && m % 2 == 1 && l == (m - 1) / 2;
}

// Stated |Aut|; none is stated for special cells other than (9,4).
std::optional<int> expected_aut_order(int n, int k) {
  if (n == 9 && k == 4) return 144;
  if (is_special(n, k)) return std::nullopt;
  if (n % 3 != 0) return (n % 2 == 1 && k == (n - 1) / 2) ? 4 * n : 2 * n;
  if (k % 3 != 1) return 2 * n;
  return 24 * (n / 3);
}

struct Cell {
  int n, k;
  AutGroupData aut;
  std::optional<IsomorphismCertificate> cert;
  std::string missing;
  EnumerationResult enumeration;
  std::string psi;
  bool psi_ok = true;
};

std::vector<Cell> group_cells() {
  std::vector<std::pair<int, int>> nk;
  for (int n = 4; n <= 12; ++n)
    for (int k = 0; k < n; ++k) nk.emplace_back(n, k);
  nk.emplace_back(15, 7);
  return parallel_map<Cell>(nk.size(), jobs(), [&](std::size_t i) {
    const auto [n, k] = nk[i];
    const auto dec = build_decomposition(n, k);
    Cell c{n, k, automorphism_group(dec), std::nullopt, "", {}, "", true};
    const auto pres = stated_presentation(n, k);
    try {
      c.cert = verify_isomorphism(pres, c.aut);
      c.enumeration = c.cert->enumeration;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MissingGenerator) throw;
      c.missing = e.what();
      c.enumeration = coset_enumerate(pres);
    }
    if (n % 3 == 0 && k % 3 == 1) {
      const auto cls = edge_classes(dec);
      const std::pair<const std::optional<CombIso>*, const char*> want[] = {
          {&c.aut.r, "(1 2 3)"}, {&c.aut.s, "(0 2)"}, {&c.aut.t, "(1 3)"}};
      for (const auto& [g, expect] : want) {
        if (!*g) {
          c.psi += " -";
          c.psi_ok = false;
          continue;
        }
        const auto got = cycle_notation(arc_permutation(**g, dec, cls));
        c.psi += " " + got;
        c.psi_ok = c.psi_ok && got == expect;
      }
    }
    return c;
  });
}

Outcome ac7_groups(const std::vector<Cell>& cells) {
  Outcome o;
  int checked = 0;
  for (const auto& c : cells) {
    ++checked;
    const auto here = fmt("(n,k)=(%d,%d)", c.n, c.k);
    const auto want = expected_aut_order(c.n, c.k);
    if (want && c.aut.order != *want) o.fail(here + fmt(": |Aut| = %d, expected %d", c.aut.order, *want));
    if (!c.cert) {
      o.fail(here + ": " + c.missing);
      continue;
    }
    for (const auto& r : c.cert->relators)
      if (!r.holds) o.fail(here + ": relator " + r.source + " fails on the generator images");
    if (!c.cert->surjective)
      o.fail(here + fmt(": generators give a subgroup of order %d < %d", c.cert->generated_order, c.aut.order));
    if (!c.psi_ok) o.fail(here + ": arc permutations r,s,t =" + c.psi);
  }
  o.summary = fmt("%d cells (n=4..12 and (15,7)): brute-force |Aut| against the stated orders, relators, generation, psi", checked);
  return o;
}

Outcome ac8_presentations(const std::vector<Cell>& cells) {
  Outcome o;
  int generic = 0;
  for (const auto& c : cells) {
    const auto here = fmt("(n,k)=(%d,%d)", c.n, c.k);
    if (c.enumeration.status != EnumerationStatus::Completed) {
      o.fail(here + ": enumeration exceeded the default cap");
      continue;
    }
    if (is_special(c.n, c.k)) {
      o.details.push_back(here + fmt(": special-case presentation order %lld vs |Aut| %d -> %s", c.enumeration.order,
                                     c.aut.order, c.enumeration.order == c.aut.order ? "agreement" : "DISCREPANCY (reported)"));
      continue;
    }
    ++generic;
    if (c.enumeration.order != c.aut.order)
      o.fail(here + fmt(": presentation order %lld, brute-force |Aut| %d", c.enumeration.order, c.aut.order));
  }
  o.summary = fmt("%d generic cells: presentation order against brute-force |Aut| (default cap %lld)", generic,
                  kDefaultCosetCap);
  return o;
}

Outcome ac9_spot_values() {
  Outcome o;
  // Frozen 40-digit mpmath evaluations, computed before the build.
  struct Spot {
    const char* name;
    double value, oracle, stated;
  };
  const auto p4 = solve_parameters(4), p6 = solve_parameters(6);
  const Spot spots[] = {{"h(4)", p4.h, 1.5110989248160183, 1.51110},
                        {"r(4)", p4.r, 1.1046266576517442, 1.10460},
                        {"sin_theta(4)", p4.sin_theta, 0.23470698043335022, 0.23473},
                        {"h(6)", p6.h, 1.9318516525781366, 1.9319}};
  for (const auto& s : spots) {
    const double d_oracle = std::fabs(s.value - s.oracle), d_stated = std::fabs(s.value - s.stated);
    o.details.push_back(fmt("%s = %.10f (oracle diff %.1e, stated diff %.1e)", s.name, s.value, d_oracle, d_stated));
    if (d_oracle >= kSpotTol || d_stated >= kSpotTol) o.fail(std::string(s.name) + " outside 1e-3");
  }
  o.summary = "h(4), r(4), sin_theta(4), h(6) within 1e-3 of the extended-precision oracle";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  failures += report(1, ac1_hyperbolicity());
  failures += report(2, ac2_angle_sums());
  failures += report(3, ac3_canonicality());
  failures += report(4, ac4_census());
  failures += report(5, ac5_genus());
  failures += report(6, ac6_classification());
  const auto cells = group_cells();
  failures += report(7, ac7_groups(cells));
  failures += report(8, ac8_presentations(cells));
  failures += report(9, ac9_spot_values());
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
