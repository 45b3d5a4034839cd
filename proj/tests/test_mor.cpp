#include "qmor/characters.hpp"
#include "qmor/mor_builder.hpp"

#include <gtest/gtest.h>

namespace qmor {
namespace {

// Classical oracle: unital *-homs C^m -> C^n are m x n 0/1 tableaux with one 1 per column.
std::size_t count_classical_homs(std::size_t m, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (m * n)); ++mask) {
    bool ok = true;
    for (std::size_t c = 0; c < n && ok; ++c) {
      std::size_t ones = 0;
      for (std::size_t b = 0; b < m; ++b) ones += (mask >> (b * n + c)) & 1U;
      ok = ones == 1;
    }
    count += ok;
  }
  return count;
}

TEST(MorBuilder, ClassicalLimitCountsFunctions) {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      const MorPresentation mor = build_mor(commutative_algebra(m), commutative_algebra(n));
      EXPECT_EQ(enumerate_characters(abelianize(mor.base)).size(), count_classical_homs(m, n)) << m << "," << n;
    }
}

TEST(MorBuilder, GeneratorNamesAndShape) {
  const MorPresentation m = build_mor(commutative_algebra(2), commutative_algebra(2));
  ASSERT_EQ(m.base.generator_count(), 4U);
  EXPECT_EQ(m.base.generator(0).name, "x_e1_1_1_1");
  EXPECT_EQ(m.base.generator(1).name, "x_e1_2_1_1");
  EXPECT_EQ(m.base.generator(3).name, "x_e2_2_1_1");
  for (const auto& g : m.base.generators()) EXPECT_TRUE(g.self_adjoint);
  EXPECT_TRUE(is_star_closed(m.base));
  // M_2 target: the off-diagonal entries of a self-adjoint generator are one generator and its adjoint.
  const MorPresentation mm = build_mor(commutative_algebra(2), make_algebra({2}));
  EXPECT_EQ(mm.base.generator_count(), 6U);
  EXPECT_EQ(mm.tableau[0][2], mm.base.adjoint(mm.tableau[0][1]));
}

// Mor(B, C) = B: the generator x_{t} stands for the matrix unit t, so products of generators
// rewrite to the structure constants of B.
TEST(MorBuilder, MorIntoScalarsRecoversTheAlgebra) {
  for (const auto& blocks : std::vector<std::vector<long>>{{1, 1}, {1, 1, 1}, {2}}) {
    const FdAlgebra B = make_algebra(blocks);
    const MorPresentation m = build_mor(B, commutative_algebra(1));
    EXPECT_EQ(m.base.generator_count(), present(B).presentation.generator_count());
    std::vector<FreeStarPoly> img(B.dim());
    for (std::size_t a = 0; a < B.dim(); ++a) {
      img[a] = m.phi(m.source_element(FdElement::basis(B, a)))[0];
      ASSERT_EQ(img[a].size(), 1U);
      EXPECT_EQ(img[a].degree(), 1U);
      for (std::size_t b = 0; b < a; ++b) EXPECT_NE(img[a], img[b]);
    }
    for (std::size_t a = 0; a < B.dim(); ++a)
      for (std::size_t b = 0; b < B.dim(); ++b) {
        const auto c = B.product_index(a, b);
        const FreeStarPoly expected = c ? img[*c] : FreeStarPoly{};
        const EqualityVerdict v = presentation_equal(img[a] * img[b], expected, m.base, kDefaultBudget, {false, {}});
        EXPECT_EQ(v.status, Verdict::equal) << B.str() << " " << a << "*" << b;
        EXPECT_TRUE(check_verdict(v, img[a] * img[b], expected, m.base));
      }
    FreeStarPoly one;
    for (std::size_t k = 0; k < B.block_count(); ++k)
      for (std::size_t i = 0; i < B.block_size(k); ++i) one += img[B.index(k, i, i)];
    EXPECT_EQ(presentation_equal(one, 1, m.base).status, Verdict::equal);
  }
}

TEST(MorBuilder, RelationsVanishAndPhiIsWellDefined) {
  for (const auto& [b, c] : std::vector<std::pair<std::vector<long>, std::vector<long>>>{
           {{1, 1}, {1, 1}}, {{1, 1, 1}, {1, 1}}, {{2}, {1}}, {{1, 1}, {2}}}) {
    const MorPresentation m = build_mor(make_algebra(b), make_algebra(c));
    EXPECT_EQ(summarize(check_relations_vanish(m)), Verdict::equal);
    const PresentedHom phi = canonical_phi(m);
    EXPECT_EQ(phi.verdict(), Verdict::equal) << make_algebra(b).str() << " -> " << make_algebra(c).str();
  }
}

TEST(MorBuilder, PresentedSourceWithoutStarClosure) {
  // One projection p: Mor(<p | p^2 = p>, C^2) has two projections and nothing else.
  Presentation p;
  p.add_generator("p", true);
  p.add_relation(p.gen("p") * p.gen("p") - p.gen("p"));
  const MorPresentation m = build_mor(p, commutative_algebra(2));
  EXPECT_EQ(m.base.generator_count(), 2U);
  EXPECT_EQ(enumerate_characters(m.base).size(), 4U);
}

TEST(MorBuilder, EliminationKeepsTheAlgebra) {
  const MorPresentation full = build_mor(commutative_algebra(2), commutative_algebra(2));
  const MorPresentation m = build_mor(commutative_algebra(2), commutative_algebra(2), {true});
  ASSERT_EQ(m.base.generator_count(), 2U);
  EXPECT_EQ(m.base.generator(0).name, "x_e1_1_1_1");
  EXPECT_EQ(m.base.generator(1).name, "x_e1_2_1_1");
  EXPECT_EQ(m.base.relations().size(), 2U);
  EXPECT_EQ(summarize(check_relations_vanish(m)), Verdict::equal);
  EXPECT_EQ(canonical_phi(m).verdict(), Verdict::equal);
  EXPECT_EQ(enumerate_characters(abelianize(m.base)).size(), enumerate_characters(abelianize(full.base)).size());
  // x_{e2,c} became 1 - x_{e1,c}.
  EXPECT_EQ(m.tableau[1][0], FreeStarPoly(1) - FreeStarPoly::gen(0));
}

}  // namespace
}  // namespace qmor
