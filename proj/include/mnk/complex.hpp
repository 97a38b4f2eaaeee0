#pragma once
//
// The combinatorial decomposition CD_{n,k}: 2n tetrahedra cut from the
// generalized cube CP_n like segments of an orange, glued along
//   * the side cuts through the vertical axis, and
//   * the step-k identification of each upper quadrilateral U_i with the
//     lower quadrilateral L_{i+k}.
//
// CP_n vertices: tau (top), upsilon (bottom), alpha_i on the upper rim at
// azimuth 2 pi i / n, delta_i on the lower rim at azimuth (2i+1) pi / n.
// Edges: a_i = tau alpha_i, b_i = alpha_i delta_i, c_i = delta_i alpha_{i+1},
// d_i = upsilon delta_i.  Piece 2i is (tau, alpha_i, delta_i, upsilon) and
// owns b_i; piece 2i+1 is (tau, alpha_{i+1}, delta_i, upsilon) and owns c_i.
//
// Each quad carries a cut diagonal (tau delta_i on U_i, upsilon alpha_{j+1} on
// L_j).  The quad identification is translated into triangle pairings by
// following the vertices; the translation is rejected unless diagonals land
// on diagonals.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "mnk/error.hpp"
#include "mnk/labels.hpp"
#include "mnk/realization.hpp"

namespace mnk {

using Perm4 = std::array<int, 4>;

inline constexpr Perm4 kIdentity4{0, 1, 2, 3};

/// Global CP_n vertex ids: 0 = tau, 1 = upsilon, 2+i = alpha_i, 2+n+i = delta_i.
struct CubeLabels {
  int n;

  int tau() const { return 0; }
  int upsilon() const { return 1; }
  int alpha(int i) const { return 2 + mod(i); }
  int delta(int i) const { return 2 + n + mod(i); }
  int mod(int i) const { return ((i % n) + n) % n; }

  std::string name(int v) const {
    if (v == 0) return "tau";
    if (v == 1) return "upsilon";
    if (v < 2 + n) return "alpha_" + std::to_string(v - 2);
    return "delta_" + std::to_string(v - 2 - n);
  }

  using Edge = std::array<int, 2>;
  Edge a(int i) const { return {tau(), alpha(i)}; }
  Edge b(int i) const { return {alpha(i), delta(i)}; }
  Edge c(int i) const { return {delta(i), alpha(i + 1)}; }
  Edge d(int i) const { return {upsilon(), delta(i)}; }

  /// Edges of U_i and L_j in the order used by the identification rule.
  std::array<Edge, 4> upper_quad(int i) const { return {c(i), a(i + 1), a(i), b(i)}; }
  std::array<Edge, 4> lower_quad(int j) const { return {d(j), c(j), b(j + 1), d(j + 1)}; }

  Edge upper_diagonal(int i) const { return {tau(), delta(i)}; }
  Edge lower_diagonal(int j) const { return {upsilon(), alpha(j + 1)}; }
};

/// Corner t of a quad given by its cyclic edge list: the vertex shared by
/// edges t and t+1.
inline std::array<int, 4> quad_corners(const std::array<CubeLabels::Edge, 4>& edges) {
  std::array<int, 4> out{};
  for (int t = 0; t < 4; ++t) {
    const auto& e = edges[t];
    const auto& f = edges[(t + 1) % 4];
    int shared = -1;
    for (int x : e)
      for (int y : f)
        if (x == y) shared = x;
    if (shared < 0) throw Error(ErrorKind::DescentFailure, "quad edge list is not cyclic");
    out[t] = shared;
  }
  return out;
}

struct FaceSlot {
  int piece = 0;
  int face = 0;  // label of the opposite vertex

  friend bool operator==(const FaceSlot&, const FaceSlot&) = default;
  friend auto operator<=>(const FaceSlot&, const FaceSlot&) = default;
};

enum class PairingKind { Side, Step };

inline const char* to_string(PairingKind k) { return k == PairingKind::Side ? "side" : "step"; }

/// Gluing of face `from` onto face `to`.  `vertex_map` is a full permutation
/// of labels: the three face vertices go to their partners and the opposite
/// vertex goes to the opposite vertex.
struct FacePairing {
  FaceSlot from, to;
  Perm4 vertex_map{};
  PairingKind kind = PairingKind::Side;
};

inline Perm4 inverse(const Perm4& p) {
  Perm4 out{};
  for (int v = 0; v < 4; ++v) out[p[v]] = v;
  return out;
}

struct Wedge {
  int piece = 0;
  int edge = 0;  // edge_index of the vertex pair

  friend bool operator==(const Wedge&, const Wedge&) = default;
  friend auto operator<=>(const Wedge&, const Wedge&) = default;
};

enum class EdgeClassKind { Axis, Diagonal, PolyhedronEdge };

inline const char* to_string(EdgeClassKind k) {
  switch (k) {
    case EdgeClassKind::Axis: return "axis";
    case EdgeClassKind::Diagonal: return "diagonal";
    case EdgeClassKind::PolyhedronEdge: return "polyhedron_edge";
  }
  return "?";
}

struct EdgeClass {
  std::vector<Wedge> wedges;  // sorted
  int wedge_count = 0;
  int distinct_piece_count = 0;
  EdgeClassKind kind = EdgeClassKind::PolyhedronEdge;
};

class Decomposition {
 public:
  int n = 0;
  int k = 0;
  std::vector<std::array<int, 4>> piece_vertices;  // global ids per local label
  std::vector<FacePairing> pairings;               // each unordered pair once

  int num_pieces() const { return 2 * n; }

  /// Where face `slot` is glued, and the full vertex map.
  const FacePairing& glue(FaceSlot slot) const { return glue_[slot.piece * 4 + slot.face]; }

  void finalize() {
    glue_.assign(static_cast<std::size_t>(num_pieces()) * 4, FacePairing{});
    std::vector<int> seen(glue_.size(), 0);
    for (const auto& p : pairings) {
      const int a = p.from.piece * 4 + p.from.face;
      const int b = p.to.piece * 4 + p.to.face;
      if (a == b) throw Error(ErrorKind::DescentFailure, "face glued to itself");
      ++seen[a];
      ++seen[b];
      glue_[a] = p;
      glue_[b] = FacePairing{p.to, p.from, inverse(p.vertex_map), p.kind};
    }
    for (int s : seen)
      if (s != 1) throw Error(ErrorKind::DescentFailure, "face slot not paired exactly once");
  }

 private:
  std::vector<FacePairing> glue_;
};

namespace detail {

inline int local_label(const std::array<int, 4>& verts, int global) {
  for (int v = 0; v < 4; ++v)
    if (verts[v] == global) return v;
  return -1;
}

/// Face of some piece whose three vertices are exactly `tri` (global ids).
inline std::optional<FaceSlot> find_face(const Decomposition& dec, std::array<int, 3> tri) {
  std::sort(tri.begin(), tri.end());
  for (int j = 0; j < dec.num_pieces(); ++j)
    for (int x = 0; x < 4; ++x) {
      std::array<int, 3> f{};
      for (int v = 0, t = 0; v < 4; ++v)
        if (v != x) f[t++] = dec.piece_vertices[j][v];
      std::sort(f.begin(), f.end());
      if (f == tri) return FaceSlot{j, x};
    }
  return std::nullopt;
}

inline bool contains(const std::array<int, 4>& verts, int g) { return local_label(verts, g) >= 0; }

}  // namespace detail

inline Decomposition build_decomposition(int n, int k) {
  if (n < 3) throw Error(ErrorKind::UnsupportedN, "need n >= 3");
  if (k < 0 || k >= n)
    throw Error(ErrorKind::InvalidStep, "k = " + std::to_string(k) + " outside 0.." + std::to_string(n - 1));
  const CubeLabels L{n};
  Decomposition dec;
  dec.n = n;
  dec.k = k;
  for (int i = 0; i < n; ++i) {
    dec.piece_vertices.push_back({L.tau(), L.alpha(i), L.delta(i), L.upsilon()});
    dec.piece_vertices.push_back({L.tau(), L.alpha(i + 1), L.delta(i), L.upsilon()});
  }

  // Side cuts: faces through the axis shared by consecutive pieces.
  for (int j = 0; j < dec.num_pieces(); ++j) {
    const int j2 = (j + 1) % dec.num_pieces();
    const auto& A = dec.piece_vertices[j];
    const auto& B = dec.piece_vertices[j2];
    int from_face = -1, to_face = -1;
    for (int x = 0; x < 4; ++x) {
      if (!detail::contains(B, A[x])) from_face = x;
      if (!detail::contains(A, B[x])) to_face = x;
    }
    if (from_face < 0 || to_face < 0)
      throw Error(ErrorKind::DescentFailure, "adjacent pieces do not share a face");
    Perm4 m{};
    for (int v = 0; v < 4; ++v)
      m[v] = v == from_face ? to_face : detail::local_label(B, A[v]);
    dec.pairings.push_back({{j, from_face}, {j2, to_face}, m, PairingKind::Side});
  }

  // Step-k rule: U_i -> L_{i+k}, corner t to corner t.
  for (int i = 0; i < n; ++i) {
    const int j = i + k;
    const auto up = quad_corners(L.upper_quad(i));
    const auto low = quad_corners(L.lower_quad(j));
    std::map<int, int> quad_map;
    for (int t = 0; t < 4; ++t) quad_map[up[t]] = low[t];

    const auto ud = L.upper_diagonal(i);
    std::array<int, 2> image{quad_map.at(ud[0]), quad_map.at(ud[1])};
    std::sort(image.begin(), image.end());
    auto ld = L.lower_diagonal(j);
    std::sort(ld.begin(), ld.end());
    if (image != ld) throw Error(ErrorKind::DescentFailure, "cut diagonal does not map to a cut diagonal");

    // The two halves of U_i: each corner not on the diagonal spans a triangle.
    for (int t = 0; t < 4; ++t) {
      const int g = up[t];
      if (g == ud[0] || g == ud[1]) continue;
      const std::array<int, 3> tri{ud[0], ud[1], g};
      const auto src = detail::find_face(dec, tri);
      const auto dst = detail::find_face(dec, {quad_map[tri[0]], quad_map[tri[1]], quad_map[tri[2]]});
      if (!src || !dst) throw Error(ErrorKind::DescentFailure, "quad half is not a piece face");
      const auto& A = dec.piece_vertices[src->piece];
      const auto& B = dec.piece_vertices[dst->piece];
      Perm4 m{};
      for (int v = 0; v < 4; ++v)
        m[v] = v == src->face ? dst->face : detail::local_label(B, quad_map.at(A[v]));
      dec.pairings.push_back({*src, *dst, m, PairingKind::Step});
    }
  }
  dec.finalize();
  return dec;
}

/// Union-find over integer ids.
class DisjointSets {
 public:
  explicit DisjointSets(int size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

/// Orbits of wedges under all face pairings, ordered by smallest member.
inline std::vector<EdgeClass> edge_classes(const Decomposition& dec) {
  const int P = dec.num_pieces();
  DisjointSets ds(P * 6);
  for (int j = 0; j < P; ++j)
    for (int x = 0; x < 4; ++x) {
      const auto& g = dec.glue({j, x});
      for (int e = 0; e < 6; ++e) {
        const auto [a, b] = kEdges[e];
        if (a == x || b == x) continue;
        ds.unite(j * 6 + e, g.to.piece * 6 + edge_index(g.vertex_map[a], g.vertex_map[b]));
      }
    }
  std::map<int, EdgeClass> by_root;
  for (int id = 0; id < P * 6; ++id) by_root[ds.find(id)].wedges.push_back({id / 6, id % 6});
  std::vector<EdgeClass> out;
  for (auto& [root, cls] : by_root) {
    cls.wedge_count = static_cast<int>(cls.wedges.size());
    std::vector<int> pieces;
    bool axis = false, all_diag = true;
    for (const auto& w : cls.wedges) {
      pieces.push_back(w.piece);
      const WedgeRole role = wedge_role(w.edge);
      axis = axis || role == WedgeRole::Axis;
      all_diag = all_diag && role == WedgeRole::Diagonal;
    }
    std::sort(pieces.begin(), pieces.end());
    cls.distinct_piece_count =
        static_cast<int>(std::unique(pieces.begin(), pieces.end()) - pieces.begin());
    cls.kind = axis ? EdgeClassKind::Axis : all_diag ? EdgeClassKind::Diagonal : EdgeClassKind::PolyhedronEdge;
    out.push_back(std::move(cls));
  }
  return out;
}

inline int class_of(const std::vector<EdgeClass>& classes, Wedge w) {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (std::binary_search(classes[c].wedges.begin(), classes[c].wedges.end(), w))
      return static_cast<int>(c);
  return -1;
}

/// Wedge of edge a_i = tau alpha_i inside piece 2i.
inline Wedge a_edge_wedge(const Decomposition& dec, int i) {
  return {(2 * i) % dec.num_pieces(), edge_index(kTau, kAlpha)};
}

/// Arc labels as indices into edge_classes(): e0 is the axis; e1, e2, e3 hold
/// a_0, a_1, a_2.  Only meaningful when 3 | n.
struct Arcs {
  int e0 = -1;
  std::array<int, 3> e{-1, -1, -1};

  /// Arc id (0..3) of an edge-class index, or -1 when it is not an arc.
  int arc_of_class(int cls) const {
    if (cls == e0) return 0;
    for (int t = 0; t < 3; ++t)
      if (e[t] == cls) return t + 1;
    return -1;
  }
};

inline int axis_class(const std::vector<EdgeClass>& classes) {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (classes[c].kind == EdgeClassKind::Axis) return static_cast<int>(c);
  throw Error(ErrorKind::DescentFailure, "no axis class");
}

inline Arcs arcs(const Decomposition& dec, const std::vector<EdgeClass>& classes) {
  if (dec.n % 3 != 0) throw Error(ErrorKind::WrongCase, "arcs e1..e3 exist only when 3 divides n");
  Arcs out;
  out.e0 = axis_class(classes);
  for (int t = 0; t < 3; ++t) out.e[t] = class_of(classes, a_edge_wedge(dec, t));
  return out;
}

inline Arcs arcs(const Decomposition& dec) { return arcs(dec, edge_classes(dec)); }

/// Index of the class absorbing every edge of P_n (3 does not divide n).
inline int merged_class(const Decomposition& dec, const std::vector<EdgeClass>& classes) {
  if (dec.n % 3 == 0) throw Error(ErrorKind::WrongCase, "no single merged class when 3 divides n");
  return class_of(classes, a_edge_wedge(dec, 0));
}

struct BoundarySurface {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler_characteristic = 0;
  int components = 0;
  int genus = 0;
  bool is_orientable = false;
};

/// Quotient of the 8n truncation triangles.  Triangle (j, v) sits at vertex v
/// of piece j; its side on face x (x != v) is glued by that face's pairing.
inline BoundarySurface boundary_surface(const Decomposition& dec) {
  const int P = dec.num_pieces();
  const int T = P * 4;
  auto tri = [](int j, int v) { return j * 4 + v; };

  // Each triangle side must meet exactly one other side.
  std::vector<int> side_hits(static_cast<std::size_t>(T) * 4, 0);
  for (int j = 0; j < P; ++j)
    for (int v = 0; v < 4; ++v)
      for (int x = 0; x < 4; ++x) {
        if (x == v) continue;
        const auto& g = dec.glue({j, x});
        const int t2 = tri(g.to.piece, g.vertex_map[v]);
        if (t2 == tri(j, v)) throw Error(ErrorKind::NonManifold, "triangle side glued to itself");
        ++side_hits[static_cast<std::size_t>(t2) * 4 + g.to.face];
      }
  for (int j = 0; j < P; ++j)
    for (int v = 0; v < 4; ++v)
      for (int x = 0; x < 4; ++x)
        if (x != v && side_hits[static_cast<std::size_t>(tri(j, v)) * 4 + x] != 1)
          throw Error(ErrorKind::NonManifold, "boundary edge not shared by exactly two triangles");

  // Corners (j, v, w): the end at v of edge vw.  Glue across every face
  // containing both v and w.
  auto corner = [](int j, int v, int w) { return (j * 4 + v) * 4 + w; };
  DisjointSets corners(P * 16);
  DisjointSets comps(T);
  for (int j = 0; j < P; ++j)
    for (int x = 0; x < 4; ++x) {
      const auto& g = dec.glue({j, x});
      const auto& m = g.vertex_map;
      for (int v = 0; v < 4; ++v) {
        if (v == x) continue;
        comps.unite(tri(j, v), tri(g.to.piece, m[v]));
        for (int w = 0; w < 4; ++w)
          if (w != v && w != x) corners.unite(corner(j, v, w), corner(g.to.piece, m[v], m[w]));
      }
    }

  BoundarySurface s;
  std::vector<char> seen(static_cast<std::size_t>(P) * 16, 0);
  for (int j = 0; j < P; ++j)
    for (int v = 0; v < 4; ++v)
      for (int w = 0; w < 4; ++w)
        if (w != v) {
          const int r = corners.find(corner(j, v, w));
          if (!seen[r]) {
            seen[r] = 1;
            ++s.vertices;
          }
        }
  std::vector<char> comp_seen(T, 0);
  for (int t = 0; t < T; ++t) {
    const int r = comps.find(t);
    if (!comp_seen[r]) {
      comp_seen[r] = 1;
      ++s.components;
    }
  }
  s.faces = T;
  s.edges = T * 3 / 2;
  s.euler_characteristic = s.vertices - s.edges + s.faces;

  // Orientation: triangle (j, v) has corners {0..3} \ {v}; reference order is
  // ascending.  sign(t) * dir_t(a->b) must be opposite across every glued side.
  auto dir = [](int v, int a, int b) {
    std::array<int, 3> c{};
    for (int w = 0, i = 0; w < 4; ++w)
      if (w != v) c[i++] = w;
    for (int i = 0; i < 3; ++i)
      if (c[i] == a) return c[(i + 1) % 3] == b ? 1 : -1;
    return 0;
  };
  std::vector<int> sign(T, 0);
  s.is_orientable = true;
  for (int start = 0; start < T && s.is_orientable; ++start) {
    if (sign[start]) continue;
    sign[start] = 1;
    std::queue<int> q;
    q.push(start);
    while (!q.empty() && s.is_orientable) {
      const int t = q.front();
      q.pop();
      const int j = t / 4, v = t % 4;
      for (int x = 0; x < 4; ++x) {
        if (x == v) continue;
        const auto& g = dec.glue({j, x});
        const auto& m = g.vertex_map;
        int a = -1, b = -1;
        for (int w = 0; w < 4; ++w)
          if (w != v && w != x) (a < 0 ? a : b) = w;
        const int t2 = tri(g.to.piece, m[v]);
        const int want = -sign[t] * dir(v, a, b) * dir(m[v], m[a], m[b]);
        if (!sign[t2]) {
          sign[t2] = want;
          q.push(t2);
        } else if (sign[t2] != want) {
          s.is_orientable = false;
          break;
        }
      }
    }
  }
  s.genus = (2 * s.components - s.euler_characteristic) / (s.is_orientable ? 2 : 1);
  return s;
}

struct ClassAngleSum {
  int edge_class = 0;
  double sum = 0;
  double residual = 0;
};

struct AngleSumReport {
  std::vector<ClassAngleSum> classes;
  double max_residual = 0;
  bool ok = false;
};

inline constexpr double kAngleSumTolerance = 1e-9;

/// Per-role wedge angles; `by_role` maps WedgeRole to its dihedral angle.
inline AngleSumReport angle_sum_check(const std::vector<EdgeClass>& classes,
                                      const std::array<double, 4>& by_role) {
  AngleSumReport rep;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    double sum = 0;
    for (const auto& w : classes[c].wedges) sum += by_role[static_cast<int>(wedge_role(w.edge))];
    const double res = std::fabs(sum - 2 * M_PI);
    rep.classes.push_back({static_cast<int>(c), sum, res});
    rep.max_residual = std::max(rep.max_residual, res);
  }
  rep.ok = rep.max_residual < kAngleSumTolerance;
  return rep;
}

inline AngleSumReport angle_sum_check(const Decomposition& dec, const DihedralAngles& angles) {
  return angle_sum_check(edge_classes(dec), {angles.axis, angles.xi, angles.zeta, angles.diagonal});
}

}  // namespace mnk
