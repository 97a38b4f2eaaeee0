#pragma once
//
// Combinatorial isomorphisms between decompositions CD_{n,k} -> CD_{n,k'}.
//
// An isomorphism is a piece bijection plus a relabeling of vertices in each
// piece that commutes with every face pairing.  Because the pairing graph is
// connected, the image of piece 0 (a target piece and one of 24 vertex
// bijections) determines everything; the search tries all 2n * 24 seeds and
// propagates breadth-first.
//
// Composition a * b means "apply b first".
//

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "mnk/complex.hpp"
#include "mnk/error.hpp"
#include "mnk/parallel.hpp"

namespace mnk {

struct CombIso {
  int n = 0;
  int k_src = 0;
  int k_dst = 0;
  std::vector<int> piece_map;
  std::vector<Perm4> vertex_maps;

  friend bool operator==(const CombIso& a, const CombIso& b) {
    return a.piece_map == b.piece_map && a.vertex_maps == b.vertex_maps;
  }
  friend bool operator<(const CombIso& a, const CombIso& b) {
    return std::tie(a.piece_map, a.vertex_maps) < std::tie(b.piece_map, b.vertex_maps);
  }
};

/// Image of piece 0: target piece and vertex bijection.
struct Seed {
  int piece = 0;
  Perm4 perm = kIdentity4;
};

inline Perm4 compose(const Perm4& a, const Perm4& b) {
  Perm4 out{};
  for (int v = 0; v < 4; ++v) out[v] = a[b[v]];
  return out;
}

/// Extends a seed to a full isomorphism a -> b, or nullopt if it is inconsistent.
inline std::optional<CombIso> propagate(const Decomposition& a, const Decomposition& b, Seed seed) {
  if (a.n != b.n) return std::nullopt;
  const int P = a.num_pieces();
  CombIso iso{a.n, a.k, b.k, std::vector<int>(P, -1), std::vector<Perm4>(P)};
  std::vector<char> used(P, 0);
  iso.piece_map[0] = seed.piece;
  iso.vertex_maps[0] = seed.perm;
  used[seed.piece] = 1;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int j = q.front();
    q.pop();
    const Perm4& pi = iso.vertex_maps[j];
    for (int x = 0; x < 4; ++x) {
      const auto& ga = a.glue({j, x});
      const auto& gb = b.glue({iso.piece_map[j], pi[x]});
      // perm' = M o pi o m^-1
      const Perm4 next = compose(gb.vertex_map, compose(pi, inverse(ga.vertex_map)));
      const int j2 = ga.to.piece;
      if (iso.piece_map[j2] >= 0) {
        if (iso.piece_map[j2] != gb.to.piece || iso.vertex_maps[j2] != next) return std::nullopt;
      } else {
        if (used[gb.to.piece]) return std::nullopt;
        used[gb.to.piece] = 1;
        iso.piece_map[j2] = gb.to.piece;
        iso.vertex_maps[j2] = next;
        q.push(j2);
      }
    }
  }
  for (int j = 0; j < P; ++j)
    if (iso.piece_map[j] < 0) return std::nullopt;
  return iso;
}

inline std::vector<Perm4> all_perms4() {
  std::vector<Perm4> out;
  Perm4 p = kIdentity4;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// All isomorphisms, in seed order (target piece, then lexicographic perm).
inline std::vector<CombIso> enumerate_isomorphisms(const Decomposition& a, const Decomposition& b,
                                                   int jobs = 1) {
  if (a.n != b.n) return {};
  const auto perms = all_perms4();
  auto per_piece = parallel_map<std::vector<CombIso>>(
      static_cast<std::size_t>(b.num_pieces()), jobs, [&](std::size_t piece) {
        std::vector<CombIso> found;
        for (const auto& p : perms)
          if (auto iso = propagate(a, b, {static_cast<int>(piece), p})) found.push_back(std::move(*iso));
        return found;
      });
  std::vector<CombIso> out;
  for (auto& v : per_piece)
    for (auto& iso : v) out.push_back(std::move(iso));
  return out;
}

inline bool isomorphic(const Decomposition& a, const Decomposition& b) {
  if (a.n != b.n) return false;
  const auto perms = all_perms4();
  for (int piece = 0; piece < b.num_pieces(); ++piece)
    for (const auto& p : perms)
      if (propagate(a, b, {piece, p})) return true;
  return false;
}

inline CombIso compose(const CombIso& a, const CombIso& b) {
  CombIso out{b.n, b.k_src, a.k_dst, std::vector<int>(b.piece_map.size()),
              std::vector<Perm4>(b.piece_map.size())};
  for (std::size_t j = 0; j < b.piece_map.size(); ++j) {
    const int mid = b.piece_map[j];
    out.piece_map[j] = a.piece_map[mid];
    out.vertex_maps[j] = compose(a.vertex_maps[mid], b.vertex_maps[j]);
  }
  return out;
}

inline CombIso inverse(const CombIso& a) {
  CombIso out{a.n, a.k_dst, a.k_src, std::vector<int>(a.piece_map.size()),
              std::vector<Perm4>(a.piece_map.size())};
  for (std::size_t j = 0; j < a.piece_map.size(); ++j) {
    out.piece_map[a.piece_map[j]] = static_cast<int>(j);
    out.vertex_maps[a.piece_map[j]] = inverse(a.vertex_maps[j]);
  }
  return out;
}

inline CombIso identity_iso(const Decomposition& dec) {
  CombIso out{dec.n, dec.k, dec.k, std::vector<int>(dec.num_pieces()),
              std::vector<Perm4>(dec.num_pieces(), kIdentity4)};
  for (int j = 0; j < dec.num_pieces(); ++j) out.piece_map[j] = j;
  return out;
}

inline CombIso power(const CombIso& a, int e) {
  const CombIso base = e < 0 ? inverse(a) : a;
  CombIso out = compose(inverse(a), a);
  for (int i = 0; i < std::abs(e); ++i) out = compose(base, out);
  return out;
}

inline bool is_identity(const CombIso& a) {
  for (std::size_t j = 0; j < a.piece_map.size(); ++j)
    if (a.piece_map[j] != static_cast<int>(j) || a.vertex_maps[j] != kIdentity4) return false;
  return true;
}

// Seeds of the distinguished maps.
inline constexpr Seed kSeedR{2, {0, 1, 2, 3}};  // 2 pi / n rotation
inline constexpr Seed kSeedT{0, {3, 2, 1, 0}};  // pi rotation through the midpoint of b_0
inline constexpr Seed kSeedS{0, {1, 0, 3, 2}};  // phi_2
inline constexpr Seed kSeedU{1, {0, 1, 2, 3}};  // phi_1

/// The eight images of (0_0, 1_0, 2_0, 3_0) the search must reduce to.
inline constexpr std::array<Seed, 8> kPhiSeeds{{
    {0, {0, 1, 2, 3}},
    {1, {0, 1, 2, 3}},
    {0, {1, 0, 3, 2}},
    {1, {1, 0, 3, 2}},
    {0, {0, 3, 2, 1}},
    {1, {0, 3, 2, 1}},
    {0, {1, 2, 3, 0}},
    {1, {1, 2, 3, 0}},
}};

struct AutGroupData {
  int n = 0, k = 0;
  std::vector<CombIso> elements;  // enumeration order
  int order = 0;
  std::optional<CombIso> r, t, s, u;

  int index_of(const CombIso& g) const {
    const auto it = index_.find(g.piece_map[0] * 24 + perm_rank(g.vertex_maps[0]));
    return it == index_.end() || !(elements[it->second] == g) ? -1 : it->second;
  }

  bool contains(const CombIso& g) const { return index_of(g) >= 0; }

  std::vector<std::string> generators_found() const {
    std::vector<std::string> out;
    if (r) out.push_back("r");
    if (s) out.push_back("s");
    if (t) out.push_back("t");
    if (u) out.push_back("u");
    return out;
  }

  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < elements.size(); ++i)
      index_[elements[i].piece_map[0] * 24 + perm_rank(elements[i].vertex_maps[0])] = static_cast<int>(i);
  }

  static int perm_rank(const Perm4& p) {
    int rank = 0;
    for (int i = 0; i < 4; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < 4; ++j) smaller += p[j] < p[i];
      rank = rank * (4 - i) + smaller;
    }
    return rank;
  }

 private:
  std::map<int, int> index_;  // automorphisms are determined by their seed
};

inline std::optional<CombIso> find_by_seed(const AutGroupData& g, Seed seed) {
  for (const auto& e : g.elements)
    if (e.piece_map[0] == seed.piece && e.vertex_maps[0] == seed.perm) return e;
  return std::nullopt;
}

inline AutGroupData automorphism_group(const Decomposition& dec, int jobs = 1) {
  AutGroupData g;
  g.n = dec.n;
  g.k = dec.k;
  g.elements = enumerate_isomorphisms(dec, dec, jobs);
  g.order = static_cast<int>(g.elements.size());
  g.build_index();

  if (!g.contains(identity_iso(dec))) throw Error(ErrorKind::ClosureFailure, "identity missing");
  for (const auto& a : g.elements) {
    if (!g.contains(inverse(a))) throw Error(ErrorKind::ClosureFailure, "inverse missing");
    for (const auto& b : g.elements)
      if (!g.contains(compose(a, b))) throw Error(ErrorKind::ClosureFailure, "product leaves the set");
  }
  g.r = find_by_seed(g, kSeedR);
  g.t = find_by_seed(g, kSeedT);
  g.s = find_by_seed(g, kSeedS);
  g.u = find_by_seed(g, kSeedU);
  return g;
}

/// Closure of a generating set inside the automorphism group.
inline std::vector<CombIso> generated_subgroup(const std::vector<CombIso>& gens, const CombIso& identity) {
  std::vector<CombIso> out{identity};
  std::map<CombIso, int> seen{{identity, 0}};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      CombIso next = compose(g, out[i]);
      if (seen.emplace(next, 0).second) out.push_back(std::move(next));
    }
  return out;
}

struct CandidateMap {
  int index = 0;
  Seed seed;
  std::vector<int> targets;  // k' with phi_i : CD_{n,k} -> CD_{n,k'}
  bool automorphism = false;
  std::optional<CombIso> map;  // the extension into the first target
};

struct CompositionIdentity {
  std::string name;
  bool checked = false;  // both sides extend
  bool holds = false;
};

struct CandidateReport {
  int n = 0, k = 0;
  std::array<CandidateMap, 8> maps;
  std::vector<CompositionIdentity> identities;
  int outside_coset_count = 0;  // automorphisms outside <r,t> . {phi_i}
};

inline CandidateReport candidate_maps(const Decomposition& dec, const AutGroupData* aut = nullptr) {
  CandidateReport rep;
  rep.n = dec.n;
  rep.k = dec.k;
  std::vector<Decomposition> family;
  for (int k2 = 0; k2 < dec.n; ++k2) family.push_back(build_decomposition(dec.n, k2));
  for (int i = 0; i < 8; ++i) {
    auto& c = rep.maps[i];
    c.index = i;
    c.seed = kPhiSeeds[i];
    for (int k2 = 0; k2 < dec.n; ++k2)
      if (auto iso = propagate(dec, family[k2], kPhiSeeds[i])) {
        c.targets.push_back(k2);
        if (!c.map) c.map = std::move(iso);
      }
    c.automorphism = std::find(c.targets.begin(), c.targets.end(), dec.k) != c.targets.end();
  }

  // phi_i out of an arbitrary source k (for right-hand sides that leave CD_{n,k}).
  auto phi_from = [&](int i, int k_src) -> std::optional<CombIso> {
    if (k_src == dec.k) return rep.maps[i].map;
    for (int k2 = 0; k2 < dec.n; ++k2)
      if (auto iso = propagate(family[k_src], family[k2], kPhiSeeds[i])) return iso;
    return std::nullopt;
  };
  auto check = [&](const std::string& name, const std::optional<CombIso>& lhs,
                   const std::optional<CombIso>& rhs) {
    CompositionIdentity id{name, lhs && rhs, false};
    if (id.checked) id.holds = *lhs == *rhs && lhs->k_dst == rhs->k_dst;
    rep.identities.push_back(id);
  };
  auto after = [&](int outer, const std::optional<CombIso>& inner) -> std::optional<CombIso> {
    if (!inner) return std::nullopt;
    auto o = phi_from(outer, inner->k_dst);
    if (!o) return std::nullopt;
    return compose(*o, *inner);
  };
  const auto& phi = rep.maps;
  const auto r = propagate(dec, dec, kSeedR);
  const auto t = propagate(dec, dec, kSeedT);
  check("phi3 = phi1 o phi2", phi[3].map, after(1, phi[2].map));
  check("phi4 = phi1 o phi5", phi[4].map, after(1, phi[5].map));
  std::optional<CombIso> phi2_rk;
  if (r) phi2_rk = after(2, power(*r, -dec.k - 1));
  check("phi5 = phi2 o r^(-k-1)", phi[5].map, phi2_rk);
  check("phi6 = phi2 o phi4", phi[6].map, after(2, phi[4].map));
  std::optional<CombIso> phi5_t;
  if (t) phi5_t = after(5, *t);
  check("phi7 = phi5 o t", phi[7].map, phi5_t);

  if (aut && r && t) {
    const auto dihedral = generated_subgroup({*r, *t}, identity_iso(dec));
    std::map<CombIso, int> covered;
    for (const auto& c : phi)
      if (c.automorphism)
        for (const auto& d : dihedral) covered.emplace(compose(d, *c.map), 0);
    for (const auto& e : aut->elements)
      if (!covered.count(e)) ++rep.outside_coset_count;
  }
  return rep;
}

/// Induced permutation of arcs e0..e3: result[i] = image arc of e_i.
inline Perm4 arc_permutation(const CombIso& aut, const Decomposition& dec,
                             const std::vector<EdgeClass>& classes) {
  const Arcs a = arcs(dec, classes);
  Perm4 out{};
  for (int arc = 0; arc < 4; ++arc) {
    const int cls = arc == 0 ? a.e0 : a.e[arc - 1];
    const Wedge w = classes[cls].wedges.front();
    const auto [x, y] = kEdges[w.edge];
    const Perm4& m = aut.vertex_maps[w.piece];
    const int img = class_of(classes, {aut.piece_map[w.piece], edge_index(m[x], m[y])});
    out[arc] = a.arc_of_class(img);
    if (out[arc] < 0) throw Error(ErrorKind::WrongCase, "map does not permute the arcs");
  }
  return out;
}

inline Perm4 arc_permutation(const CombIso& aut, const Decomposition& dec) {
  return arc_permutation(aut, dec, edge_classes(dec));
}

/// Disjoint-cycle notation, fixed points omitted; "()" for the identity.
inline std::string cycle_notation(const Perm4& p) {
  std::string out;
  std::array<bool, 4> done{};
  for (int s = 0; s < 4; ++s) {
    if (done[s] || p[s] == s) continue;
    out += "(";
    for (int v = s; !done[v]; v = p[v]) {
      if (v != s) out += " ";
      out += std::to_string(v);
      done[v] = true;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

/// Parity of the piece receiving the axis edge 0_0 3_0.
inline int edge_parity(const CombIso& aut) {
  const Perm4& m = aut.vertex_maps[0];
  if (edge_index(m[kTau], m[kUpsilon]) != edge_index(kTau, kUpsilon))
    throw Error(ErrorKind::WrongCase, "axis edge is not mapped to an axis edge");
  return aut.piece_map[0] % 2;
}

struct ClassificationResult {
  int n = 0;
  std::vector<std::vector<int>> classes;  // sorted, each sorted
};

inline ClassificationResult classify(int n, int jobs = 1) {
  std::vector<Decomposition> family;
  for (int k = 0; k < n; ++k) family.push_back(build_decomposition(n, k));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  const auto iso = parallel_map<char>(pairs.size(), jobs, [&](std::size_t i) {
    return static_cast<char>(isomorphic(family[pairs[i].first], family[pairs[i].second]));
  });
  DisjointSets ds(n);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (iso[i]) ds.unite(pairs[i].first, pairs[i].second);
  std::map<int, std::vector<int>> groups;
  for (int k = 0; k < n; ++k) groups[ds.find(k)].push_back(k);
  ClassificationResult out;
  out.n = n;
  for (auto& [root, ks] : groups) out.classes.push_back(ks);
  return out;
}

}  // namespace mnk
