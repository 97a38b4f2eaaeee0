#include <gtest/gtest.h>

#include <map>

#include "mnk/symmetry.hpp"

using namespace mnk;

TEST(Symmetry, DihedralOrderFor4_0) {
  const auto dec = build_decomposition(4, 0);
  EXPECT_EQ(enumerate_isomorphisms(dec, dec).size(), 8u);
}

TEST(Symmetry, ThreeTorusKnownAnswer) {
  // The Kuhn triangulation of the 3-torus: symmetry group S4 x Z2.
  const auto aut = automorphism_group(build_decomposition(3, 1));
  EXPECT_EQ(aut.order, 48);
}

TEST(Symmetry, CrossIsomorphisms) {
  const auto a = build_decomposition(7, 2);
  EXPECT_FALSE(enumerate_isomorphisms(a, build_decomposition(7, 4)).empty());
  EXPECT_TRUE(enumerate_isomorphisms(a, build_decomposition(7, 3)).empty());
  EXPECT_TRUE(enumerate_isomorphisms(a, build_decomposition(8, 2)).empty());
}

TEST(Symmetry, ParallelEnumerationIsDeterministic) {
  const auto dec = build_decomposition(9, 4);
  const auto one = enumerate_isomorphisms(dec, dec, 1);
  const auto many = enumerate_isomorphisms(dec, dec, 4);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_TRUE(one[i] == many[i]);
}

TEST(Symmetry, AutomorphismOrders) {
  // Brute-force oracle values, also confirmed with an independent graph matcher.
  const std::map<std::pair<int, int>, int> expected{
      {{4, 0}, 8},   {{5, 2}, 20},  {{6, 1}, 48},  {{6, 4}, 48},
      {{9, 1}, 18},  {{9, 4}, 144}, {{9, 7}, 18},  {{12, 1}, 24},
      {{12, 4}, 24}, {{7, 3}, 28},  {{8, 3}, 16},  {{6, 0}, 12}};
  for (const auto& [nk, order] : expected)
    EXPECT_EQ(automorphism_group(build_decomposition(nk.first, nk.second)).order, order)
        << nk.first << "," << nk.second;
}

TEST(Symmetry, GroupAxioms) {
  const auto dec = build_decomposition(6, 1);
  const auto aut = automorphism_group(dec);
  EXPECT_TRUE(aut.contains(identity_iso(dec)));
  for (const auto& g : aut.elements) {
    EXPECT_TRUE(is_identity(compose(g, inverse(g))));
    EXPECT_TRUE(aut.contains(inverse(g)));
  }
  EXPECT_EQ((2 * dec.n * 24) % aut.order, 0);
}

TEST(Symmetry, AutomorphismsPreserveClassStatistics) {
  const auto dec = build_decomposition(9, 4);
  const auto cls = edge_classes(dec);
  for (const auto& g : automorphism_group(dec).elements)
    for (const auto& c : cls) {
      const Wedge w = c.wedges.front();
      const auto [a, b] = kEdges[w.edge];
      const auto& m = g.vertex_maps[w.piece];
      const auto& img = cls[class_of(cls, {g.piece_map[w.piece], edge_index(m[a], m[b])})];
      EXPECT_EQ(img.wedge_count, c.wedge_count);
      EXPECT_EQ(img.distinct_piece_count, c.distinct_piece_count);
    }
}

TEST(Symmetry, DihedralSubgroupEverywhere) {
  for (int n = 4; n <= 10; ++n)
    for (int k = 0; k < n; ++k) {
      const auto dec = build_decomposition(n, k);
      const auto aut = automorphism_group(dec);
      ASSERT_TRUE(aut.r && aut.t) << n << "," << k;
      EXPECT_EQ(generated_subgroup({*aut.r, *aut.t}, identity_iso(dec)).size(), static_cast<std::size_t>(2 * n));
      EXPECT_TRUE(is_identity(power(*aut.r, n)));
    }
}

TEST(Symmetry, Phi1ExtendsIffMiddleStep) {
  for (int n = 4; n <= 12; ++n)
    for (int k = 0; k < n; ++k) {
      const auto dec = build_decomposition(n, k);
      const bool middle = n % 2 == 1 && k == (n - 1) / 2;
      EXPECT_EQ(propagate(dec, dec, kSeedU).has_value(), middle) << n << "," << k;
    }
}

TEST(Symmetry, CandidateMaps) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 1}, {6, 1}, {9, 4}, {8, 2}}) {
    const auto dec = build_decomposition(n, k);
    const auto aut = automorphism_group(dec);
    const auto rep = candidate_maps(dec, &aut);
    EXPECT_TRUE(rep.maps[0].automorphism);
    EXPECT_EQ(rep.maps[1].targets, std::vector<int>{n - k - 1});
    for (const auto& id : rep.identities)
      if (id.checked) {
        EXPECT_TRUE(id.holds) << id.name;
      }
    EXPECT_EQ(rep.outside_coset_count, 0);
  }
  // phi_2 needs 3 | n and k = 1 mod 3; it is an automorphism for (6,1).
  EXPECT_TRUE(candidate_maps(build_decomposition(6, 1)).maps[2].automorphism);
  EXPECT_FALSE(candidate_maps(build_decomposition(6, 0)).maps[2].automorphism);
  EXPECT_FALSE(candidate_maps(build_decomposition(7, 1)).maps[2].automorphism);
}

TEST(Symmetry, AllIdentitiesCheckedWhenPhi2Extends) {
  const auto rep = candidate_maps(build_decomposition(6, 1));
  for (const auto& id : rep.identities) {
    EXPECT_TRUE(id.checked) << id.name;
    EXPECT_TRUE(id.holds) << id.name;
  }
}

TEST(Symmetry, ArcPermutations) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{6, 1}, {9, 4}, {18, 4}}) {
    const auto dec = build_decomposition(n, k);
    const auto aut = automorphism_group(dec);
    ASSERT_TRUE(aut.s);
    EXPECT_EQ(cycle_notation(arc_permutation(*aut.r, dec)), "(1 2 3)");
    EXPECT_EQ(cycle_notation(arc_permutation(*aut.s, dec)), "(0 2)");
    EXPECT_EQ(cycle_notation(arc_permutation(*aut.t, dec)), "(1 3)");
    EXPECT_EQ(cycle_notation(arc_permutation(identity_iso(dec), dec)), "()");
  }
  try {
    const auto dec = build_decomposition(5, 2);
    arc_permutation(identity_iso(dec), dec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongCase);
  }
}

TEST(Symmetry, ArcPermutationIsHomomorphism) {
  const auto dec = build_decomposition(6, 1);
  const auto cls = edge_classes(dec);
  const auto aut = automorphism_group(dec);
  for (const auto& a : aut.elements)
    for (const auto& b : aut.elements) {
      const Perm4 pa = arc_permutation(a, dec, cls), pb = arc_permutation(b, dec, cls);
      EXPECT_EQ(arc_permutation(compose(a, b), dec, cls), compose(pa, pb));
    }
}

TEST(Symmetry, EdgeParity) {
  const auto dec = build_decomposition(7, 3);
  const auto aut = automorphism_group(dec);
  EXPECT_EQ(edge_parity(identity_iso(dec)), 0);
  EXPECT_EQ(edge_parity(*aut.r), 0);
  ASSERT_TRUE(aut.u);
  EXPECT_EQ(edge_parity(*aut.u), 1);
  for (const auto& a : aut.elements)
    for (const auto& b : aut.elements) EXPECT_EQ(edge_parity(compose(a, b)), (edge_parity(a) + edge_parity(b)) % 2);
}

TEST(Symmetry, EdgeParityNeedsAxisPreserved) {
  const auto dec = build_decomposition(6, 1);
  const auto aut = automorphism_group(dec);
  ASSERT_TRUE(aut.s);
  EXPECT_THROW(edge_parity(*aut.s), Error);
}

TEST(Symmetry, ClassifySmall) {
  EXPECT_EQ(classify(4).classes, (std::vector<std::vector<int>>{{0, 3}, {1, 2}}));
  EXPECT_EQ(classify(6).classes, (std::vector<std::vector<int>>{{0, 5}, {1, 4}, {2, 3}}));
  EXPECT_EQ(classify(7, 3).classes, (std::vector<std::vector<int>>{{0, 6}, {1, 5}, {2, 4}, {3}}));
}

TEST(Symmetry, CycleNotation) {
  EXPECT_EQ(cycle_notation({0, 1, 2, 3}), "()");
  EXPECT_EQ(cycle_notation({0, 2, 3, 1}), "(1 2 3)");
  EXPECT_EQ(cycle_notation({1, 0, 3, 2}), "(0 1)(2 3)");
}
