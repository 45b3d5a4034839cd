#include "qmor/equality.hpp"
#include "qmor/mor_builder.hpp"
#include "qmor/rep_search.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace qmor {
namespace {

// x_{e1,1} = p, x_{e1,2} = q, x_{e2,c} = 1 - x_{e1,c}, with p = diag(1, 0) and q the projection
// onto (1, 1) / sqrt 2.
MatrixModel exact_model(const Presentation& base) {
  MatrixModel m;
  m.dimension = 2;
  const CMatrix one = CMatrix::Identity(2, 2);
  CMatrix p(2, 2), q(2, 2);
  p << 1, 0, 0, 0;
  q << 0.5, 0.5, 0.5, 0.5;
  for (const auto& g : base.generators()) {
    m.names.push_back(g.name);
    m.self_adjoint.push_back(g.self_adjoint);
  }
  m.matrices = {p, q, one - p, one - q};
  m.residual = relation_residual(m, base);
  return m;
}

TEST(RepSearch, ExactModelOfTwoPointMaps) {
  const MorPresentation mor = build_mor(commutative_algebra(2), commutative_algebra(2));
  const MatrixModel m = exact_model(mor.base);
  EXPECT_LT(m.residual, 1e-15);
  EXPECT_NEAR(commutator_witness(m, FreeStarPoly::gen(0), FreeStarPoly::gen(1)), 0.5, 1e-15);
  // The model separates x_{e1,1} x_{e1,2} from x_{e1,2} x_{e1,1}; no character can.
  const FreeStarPoly a = FreeStarPoly::gen(0) * FreeStarPoly::gen(1), b = FreeStarPoly::gen(1) * FreeStarPoly::gen(0);
  EXPECT_EQ(presentation_equal(a, b, mor.base).status, Verdict::unknown);
  const CertificateSources certs{true, {m}};
  const EqualityVerdict v = presentation_equal(a, b, mor.base, kDefaultBudget, certs);
  EXPECT_EQ(v.status, Verdict::distinct);
  EXPECT_TRUE(check_verdict(v, a, b, mor.base, certs));
}

TEST(RepSearch, FindsANoncommutativeModel) {
  const MorPresentation mor = build_mor(commutative_algebra(2), commutative_algebra(2));
  SearchOptions opt;
  opt.seed = 1;
  const SearchResult r = find_representation(mor.base, 2, opt);
  ASSERT_TRUE(r.model);
  EXPECT_LE(r.model->residual, 1e-8);
  double best = 0;
  for (const auto& m : r.successes) {
    EXPECT_LE(m.residual, 1e-8);
    for (std::size_t i = 0; i < m.matrices.size(); ++i)
      for (std::size_t j = i + 1; j < m.matrices.size(); ++j)
        best = std::max(best, commutator_witness(m, FreeStarPoly::gen(i), FreeStarPoly::gen(j)));
  }
  // The exact value for a pair of projections in general position is at most 1/2.
  EXPECT_GE(best, 0.3);
  EXPECT_LE(best, 0.5 + 1e-6);
}

TEST(RepSearch, DeterministicAcrossThreadCounts) {
  const MorPresentation mor = build_mor(commutative_algebra(2), commutative_algebra(2));
  SearchOptions a, b;
  a.restarts = b.restarts = 4;
  a.iterations = b.iterations = 500;
  a.threads = 1;
  b.threads = 4;
  const SearchResult ra = find_representation(mor.base, 2, a), rb = find_representation(mor.base, 2, b);
  EXPECT_EQ(ra.best_residual, rb.best_residual);
  EXPECT_EQ(ra.successes.size(), rb.successes.size());
}

TEST(RepSearch, ImpossibleDimensionFails) {
  // M_2 has no 1-dimensional representation.
  const Presentation m2 = present(make_algebra({2})).presentation;
  SearchOptions opt;
  opt.restarts = 4;
  opt.iterations = 500;
  const SearchResult r = find_representation(m2, 1, opt);
  EXPECT_FALSE(r.model);
  EXPECT_GT(r.best_residual, 1e-3);
  EXPECT_THROW(find_representation(m2, 0), std::invalid_argument);
}

TEST(RepSearch, ModelFileRoundTrip) {
  const MorPresentation mor = build_mor(commutative_algebra(2), commutative_algebra(2));
  SearchOptions opt;
  opt.restarts = 4;
  const SearchResult r = find_representation(mor.base, 2, opt);
  ASSERT_TRUE(r.model);
  std::stringstream ss;
  write_model(ss, *r.model);
  const MatrixModel back = read_model(ss);
  ASSERT_EQ(back.matrices.size(), r.model->matrices.size());
  EXPECT_EQ(back.names, r.model->names);
  EXPECT_EQ(back.self_adjoint, r.model->self_adjoint);
  EXPECT_EQ(back.seed, r.model->seed);
  EXPECT_EQ(back.restart, r.model->restart);
  for (std::size_t g = 0; g < back.matrices.size(); ++g)
    EXPECT_LE((back.matrices[g] - r.model->matrices[g]).norm(), 1e-12);
  EXPECT_NEAR(relation_residual(back, mor.base), back.residual, 1e-12);
}

TEST(RepSearch, MalformedModelFile) {
  std::stringstream bad("qmor-model v1\ndimension 2\nseed 1\nrestart 0\niterations 5\nresidual 0\ngenerator p 1\n1 0\n");
  EXPECT_THROW(read_model(bad), std::runtime_error);
  std::stringstream wrong("not-a-model");
  EXPECT_THROW(read_model(wrong), std::runtime_error);
}

}  // namespace
}  // namespace qmor
