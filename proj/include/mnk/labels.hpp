#pragma once
//
// Vertex, face and edge labels of one piece (a tetrahedron of the orange-segment
// decomposition).  Within a piece:
//   0 = top apex tau, 1 = alpha-type vertex, 2 = delta-type vertex,
//   3 = bottom apex upsilon.
// Faces are addressed by their opposite vertex.  Edges are unordered vertex
// pairs, indexed 0..5 in lexicographic order.
//

#include <array>
#include <cassert>
#include <cstdint>
#include <utility>

namespace mnk {

inline constexpr int kTau = 0;
inline constexpr int kAlpha = 1;
inline constexpr int kDelta = 2;
inline constexpr int kUpsilon = 3;

inline constexpr std::array<std::pair<int, int>, 6> kEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline constexpr int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  assert(a != b && a >= 0 && b < 4);
  constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[a][b];
}

/// The two faces meeting along edge {a,b} are those opposite the other two vertices.
inline constexpr std::pair<int, int> faces_at_edge(int edge) {
  const auto [a, b] = kEdges[edge];
  int other[2]{};
  for (int v = 0, t = 0; v < 4; ++v)
    if (v != a && v != b) other[t++] = v;
  return {other[0], other[1]};
}

/// Role a wedge plays in the angle bookkeeping.
enum class WedgeRole : std::uint8_t { Axis, Xi, Zeta, Diagonal };

inline constexpr WedgeRole wedge_role(int edge) {
  switch (edge) {
    case 2: return WedgeRole::Axis;                     // tau-upsilon
    case 0: case 5: return WedgeRole::Xi;               // tau-alpha, delta-upsilon
    case 3: return WedgeRole::Zeta;                     // alpha-delta
    default: return WedgeRole::Diagonal;                // tau-delta, alpha-upsilon
  }
}

inline constexpr const char* to_string(WedgeRole role) {
  switch (role) {
    case WedgeRole::Axis: return "axis";
    case WedgeRole::Xi: return "xi";
    case WedgeRole::Zeta: return "zeta";
    case WedgeRole::Diagonal: return "diagonal";
  }
  return "?";
}

}  // namespace mnk
