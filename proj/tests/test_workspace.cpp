#include "qmor/workspace.hpp"

#include <gtest/gtest.h>

namespace qmor {
namespace {

const char* const kSample = R"(# two-point maps
algebra C1 = blocks [1]
algebra C2 = blocks [1,1]
algebra C3 = blocks [1,1,1]
algebra A = present < p!, q! | p p = p, q q = q >
hom f : C3 -> C2 = images { e[1,1,1] -> e[1,1,1], e[2,1,1] -> e[2,1,1], e[3,1,1] -> 0 }
hom s : C2 -> C2 = images { e[1,1,1] -> e[2,1,1], e[2,1,1] -> e[1,1,1] }
hom u : C1 -> C2 = images { e[1,1,1] -> 1 }
mor M = build C2 C2
check coassoc M; check explaw C2 C2 C2
check functor f s s u
check surjective f C2
abelianize A
characters A
)";

Workspace parse(const std::string& text) { return parse_workspace(text); }

ParseError parse_error(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError({0, 0}, "none");
}

TEST(Text, PolynomialRoundTrip) {
  const Presentation p = parse_presentation("present < u, q! | u^* u = 1, q q = q, q u = (1/2+3i) u q >");
  EXPECT_EQ(p.generator_count(), 2U);
  EXPECT_TRUE(p.generator(1).self_adjoint);
  EXPECT_EQ(p.relations().size(), 3U);
  const Presentation back = parse_presentation(format_presentation(p));
  EXPECT_EQ(back, p);
  EXPECT_EQ(format_presentation(back), format_presentation(p));
  const FreeStarPoly x = parse_poly("2 u^* q - i q^2 + 1", p);
  EXPECT_EQ(parse_poly(format_poly(x, p), p), x);
}

TEST(Text, GaussianLiterals) {
  EXPECT_EQ(parse_number("3/4"), GaussRat::frac(3, 4));
  EXPECT_EQ(parse_number("5i"), GaussRat(5) * GaussRat::imag_unit());
  Presentation p;
  p.add_generator("x");
  EXPECT_EQ(parse_poly("(1+2i) x", p), (GaussRat(1) + GaussRat(2) * GaussRat::imag_unit()) * p.gen("x"));
}

TEST(Workspace, ParsesTheSample) {
  const Workspace ws = parse(kSample);
  EXPECT_EQ(ws.statements.size(), 14U);
  EXPECT_TRUE(std::holds_alternative<FdAlgebra>(ws.get("C2").value));
  EXPECT_TRUE(std::holds_alternative<StarHom>(ws.get("f").value));
  EXPECT_TRUE(std::holds_alternative<MorPresentation>(ws.get("M").value));
}

TEST(Workspace, PrettyPrintRoundTrip) {
  const Workspace ws = parse(kSample);
  const std::string once = pretty_print(ws);
  const Workspace again = parse(once);
  ASSERT_EQ(again.statements.size(), ws.statements.size());
  for (std::size_t i = 0; i < ws.statements.size(); ++i) EXPECT_TRUE(again.statements[i] == ws.statements[i]) << i;
  EXPECT_EQ(pretty_print(again), once);
}

TEST(Workspace, PresentedHomRoundTrip) {
  const std::string text =
      "algebra A = present < p!, q! | p p = p, q q = q >\n"
      "algebra B = present < r! | r r = r >\n"
      "hom h : A -> B = images { p -> r, q -> 1 - r }\n";
  const Workspace ws = parse(text);
  EXPECT_TRUE(ws.statements.back().is_task());
  const Workspace again = parse(pretty_print(ws));
  EXPECT_TRUE(again.statements.back() == ws.statements.back());
  const Report rep = run_workspace(ws);
  ASSERT_EQ(rep.tasks.size(), 1U);
  EXPECT_EQ(rep.tasks[0].status, "pass");
}

TEST(Workspace, DiagnosticsCarryPositionAndExpectedTokens) {
  {
    const ParseError e = parse_error("algebra C2 = blocks [1,1]\nalgebra D = blocks 1,1]\n");
    EXPECT_EQ(e.pos.line, 2U);
    EXPECT_EQ(e.pos.column, 20U);
    EXPECT_TRUE(e.expected.count("'['"));
  }
  {
    const ParseError e = parse_error("algebra C2 = blocks [1,1]\ncheck bogus C2\n");
    EXPECT_EQ(e.pos.line, 2U);
    EXPECT_EQ(e.pos.column, 7U);
    EXPECT_TRUE(e.expected.count("'coassoc'"));
    EXPECT_TRUE(e.expected.count("'explaw'"));
  }
  {
    const ParseError e = parse_error("algebra C2 = blocks [1,1]\nmor M = build C2 C9\n");
    EXPECT_EQ(e.pos.line, 2U);
    EXPECT_EQ(e.pos.column, 18U);
    EXPECT_NE(std::string(e.what()).find("C9"), std::string::npos);
  }
  {
    // arity
    const ParseError e = parse_error("algebra C2 = blocks [1,1]\ncheck explaw C2 C2\n");
    EXPECT_EQ(e.pos.line, 2U);
  }
  {
    const ParseError e = parse_error("algebra C2 = blocks [1,1]\nalgebra C2 = blocks [1]\n");
    EXPECT_EQ(e.pos.line, 2U);
  }
  {
    // not a hom: drops the unit
    const ParseError e = parse_error(
        "algebra C2 = blocks [1,1]\nhom g : C2 -> C2 = images { e[1,1,1] -> e[1,1,1], e[2,1,1] -> 0 }\n");
    EXPECT_EQ(e.pos.line, 2U);
  }
  EXPECT_EQ(parse_error("algebra A = present < p | p p = z >").pos.column, 33U);
  const std::string text = parse_error("check").describe("ws.qmor");
  EXPECT_EQ(text.rfind("ws.qmor:1:6: error:", 0), 0U);
}

TEST(Workspace, CharactersAfterAbelianize) {
  const Workspace ws = parse("algebra A = present < p!, q! | p p = p, q q = q >\nabelianize A\ncharacters A\n");
  const Report rep = run_workspace(ws);
  ASSERT_EQ(rep.tasks.size(), 1U);
  EXPECT_EQ(rep.tasks[0].status, "pass");
  ASSERT_FALSE(rep.tasks[0].fields.empty());
  EXPECT_EQ(rep.tasks[0].fields[0], std::make_pair(std::string("count"), std::string("4")));
}

TEST(Workspace, SampleReportPassesAndIsReproducible) {
  const Workspace ws = parse(kSample);
  RunOptions serial;
  const Report a = run_workspace(ws, serial);
  EXPECT_EQ(a.status(), "pass");
  EXPECT_EQ(a.exit_code(), 0);
  ASSERT_EQ(a.tasks.size(), 5U);
  for (const auto& t : a.tasks) EXPECT_EQ(t.status, "pass") << t.command;
  RunOptions parallel;
  parallel.jobs = 4;
  const Report b = run_workspace(parse(kSample), parallel);
  Report b_same = b;
  b_same.options.jobs = 1;
  EXPECT_EQ(format_report(a), format_report(b_same));
  EXPECT_EQ(format_report(a), format_report(run_workspace(ws, serial)));
  EXPECT_EQ(format_report(a).find("wall ms"), std::string::npos);
}

TEST(Workspace, KindMismatchIsAnError) {
  const Workspace ws = parse(
      "algebra C2 = blocks [1,1]\n"
      "hom s : C2 -> C2 = images { e[1,1,1] -> e[2,1,1], e[2,1,1] -> e[1,1,1] }\n"
      "check functor C2 s s s\n"
      "check phi C2\n");
  const Report rep = run_workspace(ws);
  ASSERT_EQ(rep.tasks.size(), 2U);
  for (const auto& t : rep.tasks) {
    EXPECT_EQ(t.status, "error");
    ASSERT_FALSE(t.fields.empty());
    EXPECT_EQ(t.fields[0].first, "error");
  }
  EXPECT_EQ(rep.exit_code(), 3);
}

TEST(Workspace, FailingChecksFail) {
  const Workspace ws = parse(
      "algebra C2 = blocks [1,1]\nalgebra M2 = blocks [2]\nalgebra C3 = blocks [1,1,1]\n"
      "hom j : C2 -> C3 = images { e[1,1,1] -> e[1,1,1] + e[2,1,1], e[2,1,1] -> e[3,1,1] }\n"
      "check tensor-split C2 C2 M2\ncheck surjective j C2\n");
  const Report rep = run_workspace(ws);
  ASSERT_EQ(rep.tasks.size(), 2U);
  EXPECT_EQ(rep.tasks[0].status, "fail");
  EXPECT_EQ(rep.tasks[1].status, "fail");
  EXPECT_EQ(rep.exit_code(), 1);
}

}  // namespace
}  // namespace qmor
