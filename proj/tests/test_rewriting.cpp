#include "qmor/characters.hpp"
#include "qmor/equality.hpp"
#include "qmor/presentation.hpp"
#include "qmor/rewriting.hpp"

#include <gtest/gtest.h>

namespace qmor {
namespace {

FreeStarPoly w(std::initializer_list<Letter> letters) { return FreeStarPoly::word(Word(letters)); }

TEST(FreeStar, AdjointIsAnInvolutiveAntiAutomorphism) {
  const SelfAdjointMask sa = {false, true};
  const Letter a = make_letter(0), as = make_letter(0, true), p = make_letter(1);
  const FreeStarPoly x = GaussRat::imag_unit() * w({a, p}) + GaussRat(2) * w({as});
  const FreeStarPoly y = w({p, a}) - FreeStarPoly(3);
  EXPECT_EQ(x.adjoint(sa).adjoint(sa), x);
  EXPECT_EQ((x * y).adjoint(sa), y.adjoint(sa) * x.adjoint(sa));
  // (i a p)^* = -i p a^*
  EXPECT_EQ(w({a, p}).adjoint(sa), w({p, as}));
  EXPECT_EQ((GaussRat::imag_unit() * w({a})).adjoint(sa), -GaussRat::imag_unit() * w({as}));
  // A self-adjoint generator's adjoint letter folds to the base letter.
  EXPECT_EQ(FreeStarPoly::letter(make_letter(1, true)).canonical(sa), FreeStarPoly::letter(p));
}

TEST(FreeStar, DegLexOrderAndLeadingTerm) {
  const FreeStarPoly x = w({2}) + w({0, 0}) + w({0, 1}) + FreeStarPoly(1);
  EXPECT_EQ(x.leading_word(), (Word{0, 1}));
  EXPECT_EQ(x.degree(), 2U);
  EXPECT_TRUE(DegLex{}(Word{5}, Word{0, 0}));
  EXPECT_EQ((GaussRat(4) * x).monic(), x);
}

// Two idempotents a, b with ab = a, ba = b: aa = a follows but no single rule rewrites aa.
TEST(Rewriting, TraceIsAnIdealCombination) {
  const Letter a = make_letter(0), b = make_letter(1);
  const std::vector<FreeStarPoly> rels = {w({a, b}) - w({a}), w({b, a}) - w({b})};
  RewriteSystem rs(rels, 4);
  const FreeStarPoly p = w({a, b, a, b, b}) + GaussRat(3) * w({b, a, b});
  NormalForm nf = rs.reduce(p, 1000, true);
  EXPECT_FALSE(nf.exhausted);
  EXPECT_TRUE(verify_trace(rs, p, nf));
  // Tampering with the trace breaks verification.
  ASSERT_FALSE(nf.trace.empty());
  nf.trace.front().coeff += 1;
  EXPECT_FALSE(verify_trace(rs, p, nf));
}

TEST(Rewriting, CompletionFindsImpliedRule) {
  const Letter a = make_letter(0), b = make_letter(1);
  RewriteSystem rs({w({a, b}) - w({a}), w({b, a}) - w({b})}, 4);
  const FreeStarPoly target = w({a, a}) - w({a});
  EXPECT_FALSE(rs.reduce(target, 1000).value.is_zero());
  EXPECT_GT(rs.complete({}), 0U);
  NormalForm nf = rs.reduce(target, 1000, true);
  EXPECT_TRUE(nf.value.is_zero());
  EXPECT_TRUE(verify_trace(rs, target, nf));
}

TEST(Rewriting, BudgetExhaustionIsUnknown) {
  Presentation p;
  p.add_generator("a");
  const FreeStarPoly a = p.gen("a");
  p.add_relation(a * a - a);
  const FreeStarPoly a5 = a * a * a * a * a;
  NormalForm nf = p.normal_form(a5 - a, 2);
  EXPECT_TRUE(nf.exhausted);
  EXPECT_EQ(nf.steps, 2U);
  const EqualityVerdict v = presentation_equal(a5, a, p, 2, {false, {}});
  EXPECT_EQ(v.status, Verdict::unknown);
  EXPECT_EQ(presentation_equal(a5, a, p, 100, {false, {}}).status, Verdict::equal);
}

TEST(Rewriting, DegenerateSystemKillsEverything) {
  Presentation p;
  p.add_generator("x");
  p.add_relation(FreeStarPoly(2));
  EXPECT_TRUE(p.degenerate());
  const EqualityVerdict v = presentation_equal(p.gen("x"), 0, p);
  EXPECT_EQ(v.status, Verdict::equal);
  EXPECT_TRUE(check_verdict(v, p.gen("x"), 0, p));
}

TEST(Presentation, StarCloseAndAbelianizeAreIdempotent) {
  Presentation p;
  p.add_generator("u");
  p.add_generator("q", true);
  const FreeStarPoly u = p.gen("u"), us = p.gen("u", true), q = p.gen("q");
  p.add_relation(u * us - 1);
  p.add_relation(q * u - GaussRat::imag_unit() * u);
  const Presentation c = star_close(p);
  EXPECT_TRUE(is_star_closed(c));
  EXPECT_EQ(star_close(c), c);
  EXPECT_GT(c.relations().size(), p.relations().size());
  const Presentation ab = abelianize(c);
  EXPECT_EQ(abelianize(ab), ab);
  // u, u^*, q: three distinct letters, three commutators.
  EXPECT_EQ(ab.relations().size(), c.relations().size() + 3);
}

TEST(Presentation, MatrixUnitRelationsRewriteProducts) {
  const FdAlgebra m2 = make_algebra({2});
  const FdPresentation fp = present(m2);
  EXPECT_EQ(fp.presentation.generator_count(), 3U);  // e_11, e_12, e_22
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const FreeStarPoly lhs = fp.element(FdElement::basis(m2, a)) * fp.element(FdElement::basis(m2, b));
      const FreeStarPoly rhs = fp.element(FdElement::basis(m2, a) * FdElement::basis(m2, b));
      const EqualityVerdict v = presentation_equal(lhs, rhs, fp.presentation);
      EXPECT_EQ(v.status, Verdict::equal) << a << "," << b;
      EXPECT_TRUE(check_verdict(v, lhs, rhs, fp.presentation));
    }
  EXPECT_EQ(presentation_equal(fp.element(FdElement::unit(m2)), 1, fp.presentation).status, Verdict::equal);
}

TEST(Presentation, TensorLegsCommute) {
  const FdPresentation a = present(commutative_algebra(2)), b = present(make_algebra({2}));
  const Presentation t = tensor_presentation({a.presentation, b.presentation});
  EXPECT_EQ(t.flat_legs().size(), 2U);
  EXPECT_EQ(leg_offsets(t), (std::vector<std::size_t>{0, 2}));
  const FreeStarPoly x = embed_leg(t, 0, a.element(FdElement::basis(a.algebra, 0)));
  const FreeStarPoly y = embed_leg(t, 1, b.element(FdElement::basis(b.algebra, 2)));  // e_21
  EXPECT_EQ(presentation_equal(y * x, x * y, t).status, Verdict::equal);
  EXPECT_EQ(t.generator(2).name, "L2.e1_1_1");
  // Nested tensor products flatten.
  EXPECT_EQ(tensor_presentation({t, a.presentation}).flat_legs().size(), 3U);
}

TEST(Characters, FiniteCommutativeAlgebraHasOneCharacterPerPoint) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const FdPresentation fp = present(commutative_algebra(n));
    const auto chars = enumerate_characters(fp.presentation);
    ASSERT_EQ(chars.size(), n);
    for (const auto& chi : chars) {
      GaussRat sum;
      for (const auto& v : chi) sum += v;
      EXPECT_EQ(sum, GaussRat(1));
    }
  }
  // Off-diagonal matrix units are not projections, so M_2 is outside the enumerator's reach.
  EXPECT_THROW(enumerate_characters(present(make_algebra({2})).presentation), UnsupportedSpectrum);
}

TEST(Characters, NonProjectionGeneratorIsUnsupported) {
  Presentation p;
  p.add_generator("u");
  p.add_relation(p.gen("u") * p.gen("u", true) - 1);
  EXPECT_THROW(enumerate_characters(p), UnsupportedSpectrum);
}

TEST(Equality, CharacterCertificateSeparates) {
  const FdPresentation fp = present(commutative_algebra(3));
  const FreeStarPoly e1 = fp.presentation.gen("e1"), e2 = fp.presentation.gen("e2");
  const EqualityVerdict v = presentation_equal(e1, e2, fp.presentation);
  ASSERT_EQ(v.status, Verdict::distinct);
  ASSERT_TRUE(v.character);
  EXPECT_TRUE(check_verdict(v, e1, e2, fp.presentation));
  // A forged character fails the re-check.
  EqualityVerdict forged = v;
  (*forged.character)[0] = GaussRat(1);
  (*forged.character)[1] = GaussRat(1);
  EXPECT_FALSE(check_verdict(forged, e1, e2, fp.presentation));
}

// Two free projections: pq and qp are not separated by any character, only by a 2x2 model.
TEST(Equality, ModelCertificateSeparates) {
  Presentation p;
  p.add_generator("p", true);
  p.add_generator("q", true);
  const FreeStarPoly pp = p.gen("p"), qq = p.gen("q");
  p.add_relation(pp * pp - pp);
  p.add_relation(qq * qq - qq);
  EXPECT_EQ(presentation_equal(pp * qq, qq * pp, p).status, Verdict::unknown);

  MatrixModel m;
  m.dimension = 2;
  m.names = {"p", "q"};
  m.self_adjoint = {true, true};
  CMatrix a(2, 2), b(2, 2);
  a << 1, 0, 0, 0;
  b << 0.5, 0.5, 0.5, 0.5;
  m.matrices = {a, b};
  CertificateSources certs{true, {m}};
  const EqualityVerdict v = presentation_equal(pp * qq, qq * pp, p, kDefaultBudget, certs);
  ASSERT_EQ(v.status, Verdict::distinct);
  EXPECT_EQ(v.model, std::optional<std::size_t>(0));
  EXPECT_NEAR(v.margin, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(check_verdict(v, pp * qq, qq * pp, p, certs));
  // A model that violates the relations is not a certificate.
  m.matrices[0] << 2, 0, 0, 0;
  EXPECT_EQ(presentation_equal(pp * qq, qq * pp, p, kDefaultBudget, {true, {m}}).status, Verdict::unknown);
}

}  // namespace
}  // namespace qmor
