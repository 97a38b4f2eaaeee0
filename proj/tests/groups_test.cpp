#include <gtest/gtest.h>

#include "mnk/groups.hpp"

using namespace mnk;

namespace {
long long order_of(const std::string& text) {
  const auto res = coset_enumerate(parse_presentation(text));
  EXPECT_EQ(res.status, EnumerationStatus::Completed) << text;
  return res.order;
}
}  // namespace

TEST(Groups, ParseBasic) {
  const auto g = parse_presentation("gens: r,t ; rels: r^5, t^2, (t*r)^2");
  ASSERT_EQ(g.generators, (std::vector<std::string>{"r", "t"}));
  ASSERT_EQ(g.relators.size(), 3u);
  EXPECT_EQ(g.relators[0].word, (Word{1, 1, 1, 1, 1}));
  EXPECT_EQ(g.relators[2].word, (Word{2, 1, 2, 1}));
}

TEST(Groups, ParseEqualitiesAndExpressions) {
  const auto g = parse_presentation("gens:s,t,u;rels: susus = tutut, s^-2");
  ASSERT_EQ(g.relators.size(), 2u);
  EXPECT_EQ(g.relators[0].word, (Word{1, 3, 1, 3, 1, -2, -3, -2, -3, -2}));
  EXPECT_EQ(g.relators[1].word, (Word{-1, -1}));
  const auto h = parse_presentation("gens: r ; rels: r^(3*(2-2*0-2)) = r^(-2+1), r^6 = r = 1");
  ASSERT_EQ(h.relators.size(), 3u);
  EXPECT_EQ(h.relators[0].word, (Word{1}));
  EXPECT_EQ(h.relators[1].word.size(), 7u);
}

TEST(Groups, ParseErrors) {
  for (const char* bad : {"gens: r ; rels: x^2", "gens: r rels: r", "gens: r ; rels: (r^2", "gens: r,r ; rels: r",
                          "gens: r ; rels: r^", "gens: r ; rels: = r"}) {
    try {
      parse_presentation(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Groups, SerializeRoundTrip) {
  const auto g = stated_presentation(6, 1);
  const auto back = parse_presentation(serialize_presentation(g));
  ASSERT_EQ(back.relators.size(), g.relators.size());
  for (std::size_t i = 0; i < g.relators.size(); ++i) EXPECT_EQ(back.relators[i].word, g.relators[i].word);
  EXPECT_EQ(serialize_presentation(parse_presentation("gens: r,t ; rels: r^5, t^2, (t*r)^2")),
            "gens: r,t ; rels: r^5, t^2, (t*r)^2");
}

TEST(Groups, Reduction) {
  EXPECT_EQ(free_reduce({1, 2, -2, -1, 3}), (Word{3}));
  EXPECT_EQ(cyclic_reduce({-1, 2, 3, 1}), (Word{2, 3}));
  EXPECT_EQ(invert({1, -2}), (Word{2, -1}));
}

TEST(Groups, CosetEnumerationKnownOrders) {
  EXPECT_EQ(order_of("gens: r,t ; rels: r^5, t^2, (t*r)^2"), 10);
  EXPECT_EQ(order_of("gens: t,u ; rels: t^2, u^2, (u*t)^10"), 20);
  EXPECT_EQ(order_of("gens: a,b ; rels: a^2, b^3, (a*b)^4"), 24);   // S4
  EXPECT_EQ(order_of("gens: a,b ; rels: a^2, b^3, (a*b)^5"), 60);   // A5
  EXPECT_EQ(order_of("gens: a,b ; rels: a^4, b^2, (a*b)^2, a^2 = 1"), 4);
  EXPECT_EQ(order_of("gens: a ; rels: a^7, a^5"), 1);
  EXPECT_EQ(order_of("gens: a,b ; rels: a^3, b^3, (a*b)^3, (a*b^-1)^3"), 27);
}

TEST(Groups, CosetCap) {
  const auto res = coset_enumerate(parse_presentation("gens: a,b ; rels: a^2, b^3"), 500);
  EXPECT_EQ(res.status, EnumerationStatus::CapExceeded);
  EXPECT_THROW(coset_enumerate(parse_presentation("gens: a ; rels: a^2"), 0), Error);
}

TEST(Groups, EnumerationIsDeterministic) {
  const auto g = stated_presentation(9, 4);
  const auto a = coset_enumerate(g), b = coset_enumerate(g);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.cosets_defined, b.cosets_defined);
}

TEST(Groups, StatedPresentations) {
  auto g = stated_presentation(8, 3);
  EXPECT_EQ(g.provenance, "not_div3");
  EXPECT_EQ(serialize_presentation(g), "gens: r,t ; rels: r^8, t^2, (t*r)^2");
  g = stated_presentation(5, 2);
  EXPECT_EQ(serialize_presentation(g), "gens: t,u ; rels: t^2, u^2, (u*t)^10");
  g = stated_presentation(6, 1);
  EXPECT_EQ(g.provenance, "div3_k_1");
  EXPECT_EQ(g.relators.back().source, "(str)^3 = r^(3(m-2l-2))");
  EXPECT_EQ(g.relators.back().word, (Word{2, 3, 1, 2, 3, 1, 2, 3, 1}));  // exponent 0
  // m=2, l=1: (str)^3 = r^-6, stored as (str)^3 r^6 without reducing mod r^6.
  g = stated_presentation(6, 4);
  Word tail(g.relators.back().word.end() - 6, g.relators.back().word.end());
  EXPECT_EQ(g.relators.back().word.size(), 15u);
  EXPECT_EQ(tail, (Word{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(stated_presentation(9, 4).provenance, "div3_k_1_special");
  EXPECT_EQ(stated_presentation(9, 3).provenance, "div3_k_not_1");
}

TEST(Groups, PresentationOrders) {
  // Independent check with a second enumerator gave the same values.
  EXPECT_EQ(coset_enumerate(stated_presentation(6, 1)).order, 48);
  EXPECT_EQ(coset_enumerate(stated_presentation(6, 4)).order, 48);
  EXPECT_EQ(coset_enumerate(stated_presentation(9, 1)).order, 24);
  EXPECT_EQ(coset_enumerate(stated_presentation(9, 7)).order, 24);
  EXPECT_EQ(coset_enumerate(stated_presentation(12, 1)).order, 48);
  EXPECT_EQ(coset_enumerate(stated_presentation(9, 4)).order, 48);
  EXPECT_EQ(coset_enumerate(stated_presentation(15, 7)).order, 48);
}

TEST(Groups, VerifyDihedral) {
  const auto aut = automorphism_group(build_decomposition(4, 0));
  const auto cert = verify_isomorphism(stated_presentation(4, 0), aut);
  EXPECT_TRUE(cert.verdict);
  EXPECT_EQ(cert.generated_order, 8);
  EXPECT_EQ(cert.enumeration.order, 8);
}

TEST(Groups, VerifyMiddleStep) {
  const auto aut = automorphism_group(build_decomposition(5, 2));
  const auto cert = verify_isomorphism(stated_presentation(5, 2), aut);
  EXPECT_TRUE(cert.verdict);
  EXPECT_EQ(r_equals_utut(aut), std::optional<bool>(true));
}

TEST(Groups, WrongRelatorIsCaught) {
  const auto aut = automorphism_group(build_decomposition(5, 2));
  const auto cert = verify_isomorphism(parse_presentation("gens: t,u ; rels: t^2, u^2, (u*t)^8"), aut);
  EXPECT_FALSE(cert.verdict);
  EXPECT_FALSE(cert.relators.back().holds);
}

TEST(Groups, MissingGenerator) {
  const auto aut = automorphism_group(build_decomposition(4, 0));
  try {
    verify_isomorphism(stated_presentation(5, 2), aut);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingGenerator);
  }
}

TEST(Groups, RelatorsHoldForSubcase22WhereGeneratorsExist) {
  const auto aut = automorphism_group(build_decomposition(6, 1));
  const auto cert = verify_isomorphism(stated_presentation(6, 1), aut);
  for (const auto& r : cert.relators) EXPECT_TRUE(r.holds) << r.source;
  EXPECT_TRUE(cert.verdict);
}

TEST(Groups, SpecialCaseDiscrepancy) {
  // Recorded finding: the m-independent presentation has order 48, Aut(CD_{9,4}) has 144.
  const auto aut = automorphism_group(build_decomposition(9, 4));
  const auto cert = verify_isomorphism(stated_presentation(9, 4), aut);
  EXPECT_EQ(cert.aut_order, 144);
  EXPECT_EQ(cert.enumeration.order, 48);
  EXPECT_FALSE(cert.order_match);
  EXPECT_TRUE(cert.surjective);
}
