#pragma once

// Text forms: a tokenizer with positions, polynomial expressions over a presentation, and the
// canonical printers that the parser reads back.
//
// Polynomials: juxtaposition or `*` multiplies, `^*` is the adjoint, `^n` a power, numbers are
// `\d+(/\d+)?i?`, and `e[k,i,j]` names a matrix unit when the context is an algebra.

#include "qmor/presentation.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmor {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParseError : std::runtime_error {
  ParseError(SourcePos p, const std::string& msg, std::set<std::string> expected_tokens = {})
      : std::runtime_error(msg), pos(p), expected(std::move(expected_tokens)) {}
  SourcePos pos;
  std::set<std::string> expected;

  std::string describe(const std::string& file = "") const {
    std::string s = (file.empty() ? "" : file + ":") + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                    ": error: " + what();
    if (!expected.empty()) {
      s += " (expected ";
      bool first = true;
      for (const auto& e : expected) {
        s += (first ? "" : ", ") + e;
        first = false;
      }
      s += ")";
    }
    return s;
  }
};

enum class Tok { ident, number, symbol, newline, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourcePos pos;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::ident: return "'" + t.text + "'";
    case Tok::number: return "number " + t.text;
    case Tok::symbol: return "'" + t.text + "'";
    case Tok::newline: return "end of line";
    case Tok::end: return "end of input";
  }
  return "?";
}

// `#` starts a comment running to the end of the line.
inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      out.push_back({Tok::newline, "\n", pos});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '.'))
        ++j;
      out.push_back({Tok::ident, src.substr(i, j - i), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && src[j] == 'i' &&
          !(j + 1 < src.size() && (std::isalnum(static_cast<unsigned char>(src[j + 1])) || src[j + 1] == '_')))
        ++j;
      out.push_back({Tok::number, src.substr(i, j - i), start});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::symbol, "->", start});
      advance(2);
      continue;
    }
    static const std::string symbols = "+-*^()[]{}<>|,=;:!";
    if (symbols.find(c) == std::string::npos)
      throw ParseError(start, std::string("unexpected character '") + c + "'");
    out.push_back({Tok::symbol, std::string(1, c), start});
    advance(1);
  }
  out.push_back({Tok::end, "", pos});
  return out;
}

// Parses "3", "3/2", "3i", "3/2i".
inline GaussRat parse_number(const std::string& text) {
  std::string t = text;
  const bool imag = !t.empty() && t.back() == 'i';
  if (imag) t.pop_back();
  mpq_class q(t);
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  return imag ? GaussRat(mpq_class(0), q) : GaussRat(q, mpq_class(0));
}

// Token cursor shared by the expression and statement parsers. Newlines are skipped while
// inside brackets.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() {
    skip();
    return toks_[i_];
  }
  Token next() {
    skip();
    Token t = toks_[i_];
    if (t.kind != Tok::end) ++i_;
    return t;
  }
  bool at_symbol(const std::string& s) {
    const Token& t = peek();
    return t.kind == Tok::symbol && t.text == s;
  }
  bool at_ident(const std::string& s) {
    const Token& t = peek();
    return t.kind == Tok::ident && t.text == s;
  }
  bool accept_symbol(const std::string& s) {
    if (!at_symbol(s)) return false;
    next();
    return true;
  }
  Token expect_symbol(const std::string& s) {
    if (!at_symbol(s)) fail({"'" + s + "'"});
    return next();
  }
  Token expect_ident(const std::string& what = "name") {
    if (peek().kind != Tok::ident) fail({what});
    return next();
  }
  Token expect_keyword(const std::string& kw) {
    if (!at_ident(kw)) fail({"'" + kw + "'"});
    return next();
  }
  std::size_t expect_int(const std::string& what = "integer") {
    const Token& t = peek();
    if (t.kind != Tok::number || t.text.find_first_not_of("0123456789") != std::string::npos) fail({what});
    return std::stoul(next().text);
  }
  [[noreturn]] void fail(std::set<std::string> expected) {
    const Token& t = peek();
    throw ParseError(t.pos, "unexpected " + describe(t), std::move(expected));
  }

  void open() { ++depth_; }
  void close() { --depth_; }

 private:
  void skip() {
    if (depth_ == 0) return;
    while (toks_[i_].kind == Tok::newline) ++i_;
  }
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int depth_ = 0;
};

// Polynomial expressions over a presentation. With an FdPresentation, `e[k,i,j]` (1-based)
// names a matrix unit.
class ExprParser {
 public:
  ExprParser(TokenStream& ts, const Presentation& pres, const FdPresentation* fd = nullptr)
      : ts_(ts), pres_(pres), fd_(fd) {}

  FreeStarPoly expr() {
    FreeStarPoly r;
    bool negate = false;
    if (ts_.accept_symbol("-")) negate = true;
    else ts_.accept_symbol("+");
    r = term();
    if (negate) r = -r;
    for (;;) {
      if (ts_.accept_symbol("+")) r += term();
      else if (ts_.accept_symbol("-")) r -= term();
      else break;
    }
    return pres_.canonical(r);
  }

 private:
  bool starts_factor() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::number) return true;
    if (t.kind == Tok::ident) return true;
    return t.kind == Tok::symbol && t.text == "(";
  }

  FreeStarPoly term() {
    FreeStarPoly r = factor();
    for (;;) {
      if (ts_.accept_symbol("*")) {
        r = r * factor();
      } else if (starts_factor()) {
        r = r * factor();
      } else {
        break;
      }
    }
    return r;
  }

  FreeStarPoly factor() {
    FreeStarPoly r = atom();
    while (ts_.accept_symbol("^")) {
      if (ts_.accept_symbol("*")) {
        r = pres_.adjoint(r);
      } else {
        const std::size_t n = ts_.expect_int("'*' or an exponent");
        FreeStarPoly p(1);
        for (std::size_t k = 0; k < n; ++k) p = p * r;
        r = std::move(p);
      }
    }
    return r;
  }

  FreeStarPoly atom() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::number) {
      const Token n = ts_.next();
      try {
        return FreeStarPoly(parse_number(n.text));
      } catch (const std::invalid_argument&) {
        throw ParseError(n.pos, "malformed number '" + n.text + "'");
      }
    }
    if (t.kind == Tok::symbol && t.text == "(") {
      ts_.next();
      ts_.open();
      FreeStarPoly r = expr();
      ts_.close();
      ts_.expect_symbol(")");
      return r;
    }
    if (t.kind == Tok::ident) {
      const Token id = ts_.next();
      if (id.text == "e" && ts_.at_symbol("[")) return unit_ref(id);
      auto g = pres_.find(id.text);
      // Bare `i` is the imaginary unit unless a generator takes the name.
      if (!g && id.text == "i") return FreeStarPoly(GaussRat::imag_unit());
      if (!g) throw ParseError(id.pos, "unknown generator '" + id.text + "'");
      return FreeStarPoly::gen(*g);
    }
    ts_.fail({"number", "generator", "'('"});
  }

  FreeStarPoly unit_ref(const Token& at) {
    if (!fd_) throw ParseError(at.pos, "matrix units e[k,i,j] are only available in algebras given by blocks");
    ts_.expect_symbol("[");
    ts_.open();
    const std::size_t k = ts_.expect_int();
    ts_.expect_symbol(",");
    const std::size_t i = ts_.expect_int();
    ts_.expect_symbol(",");
    const std::size_t j = ts_.expect_int();
    ts_.close();
    ts_.expect_symbol("]");
    const FdAlgebra& a = fd_->algebra;
    if (k < 1 || k > a.block_count() || i < 1 || j < 1 || i > a.block_size(k - 1) || j > a.block_size(k - 1))
      throw ParseError(at.pos, "matrix unit e[" + std::to_string(k) + "," + std::to_string(i) + "," +
                                   std::to_string(j) + "] is out of range for " + a.str());
    return FreeStarPoly::letter(fd_->basis_letter[a.index(k - 1, i - 1, j - 1)]);
  }

  TokenStream& ts_;
  const Presentation& pres_;
  const FdPresentation* fd_;
};

inline FreeStarPoly parse_poly(const std::string& text, const Presentation& pres, const FdPresentation* fd = nullptr) {
  TokenStream ts(tokenize(text));
  ts.open();
  FreeStarPoly p = ExprParser(ts, pres, fd).expr();
  if (ts.peek().kind != Tok::end) ts.fail({"end of input"});
  return p;
}

// Value of a polynomial over the matrix-unit presentation inside the algebra itself.
inline FdElement evaluate_in(const FdPresentation& fp, const FreeStarPoly& p) {
  const FdAlgebra& A = fp.algebra;
  std::vector<FdElement> letter_value(2 * fp.presentation.generator_count(), FdElement(A));
  for (std::size_t a = 0; a < A.dim(); ++a) letter_value[fp.basis_letter[a]] = FdElement::basis(A, a);
  for (std::size_t g = 0; g < fp.presentation.generator_count(); ++g)
    if (fp.presentation.generator(g).self_adjoint) letter_value[2 * g + 1] = letter_value[2 * g];
  FdElement r(A);
  for (const auto& [w, c] : p.terms()) {
    FdElement t = FdElement::unit(A);
    for (Letter l : w) t = t * letter_value.at(l);
    r += c * t;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Printers. Output always parses back to the same canonical value.

// Coefficient text for a non-leading position: returns the sign separately when the
// coefficient is a signed real or a signed pure imaginary.
inline std::pair<bool, std::string> split_sign(const GaussRat& c) {
  if (c.is_real() || c.re() == 0) {
    const bool neg = c.is_real() ? c.re() < 0 : c.im() < 0;
    return {neg, (neg ? -c : c).str()};
  }
  return {false, c.str()};
}

template <class WordText>
inline std::string format_terms(const FreeStarPoly& p, WordText&& word_text) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    auto [neg, mag] = split_sign(c);
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    if (w.empty()) {
      s += mag;
    } else {
      if (mag != "1") s += mag + " ";
      s += word_text(w);
    }
  }
  return s;
}

inline std::string format_poly(const FreeStarPoly& p, const Presentation& pres) {
  return format_terms(p, [&](const Word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " " : "") + pres.letter_name(w[k]);
    return s;
  });
}

inline std::string format_unit(const FdAlgebra& a, std::size_t idx) {
  const auto& u = a.unit(idx);
  return "e[" + std::to_string(u.block + 1) + "," + std::to_string(u.row + 1) + "," + std::to_string(u.col + 1) + "]";
}

inline std::string format_element(const FdElement& x) {
  const FdAlgebra& a = x.algebra();
  std::string s;
  bool first = true;
  for (std::size_t idx = 0; idx < a.dim(); ++idx) {
    if (x[idx].is_zero()) continue;
    auto [neg, mag] = split_sign(x[idx]);
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    if (mag != "1") s += mag + " ";
    s += format_unit(a, idx);
  }
  return first ? "0" : s;
}

// Relation q = 0 printed as "leading term = minus the rest".
inline std::string format_relation(const FreeStarPoly& q, const Presentation& pres) {
  if (q.is_zero()) return "0 = 0";
  FreeStarPoly lead = FreeStarPoly::word(q.leading_word(), q.leading_coeff());
  return format_poly(lead, pres) + " = " + format_poly(lead - q, pres);
}

inline std::string format_presentation(const Presentation& p) {
  std::string s = "present < ";
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    s += (g ? ", " : "") + p.generator(g).name;
    if (p.generator(g).self_adjoint) s += "!";
  }
  s += " |";
  for (std::size_t i = 0; i < p.relations().size(); ++i) s += (i ? ", " : " ") + format_relation(p.relations()[i], p);
  return s + " >";
}

// Parses the body after `present`: "< gens | relations >".
inline Presentation parse_presentation_body(TokenStream& ts) {
  Presentation p;
  ts.expect_symbol("<");
  ts.open();
  if (!ts.at_symbol("|")) {
    for (;;) {
      const Token g = ts.expect_ident("generator name");
      const bool sa = ts.accept_symbol("!");
      if (p.find(g.text)) throw ParseError(g.pos, "duplicate generator '" + g.text + "'");
      p.add_generator(g.text, sa);
      if (!ts.accept_symbol(",")) break;
    }
  }
  if (!ts.at_symbol("|") && !ts.at_symbol(">")) ts.fail({"','", "'|'", "'>'"});
  if (ts.accept_symbol("|") && !ts.at_symbol(">")) {
    for (;;) {
      ExprParser ep(ts, p);
      FreeStarPoly lhs = ep.expr();
      ts.expect_symbol("=");
      FreeStarPoly rhs = ep.expr();
      p.add_relation(lhs - rhs);
      if (!ts.accept_symbol(",")) break;
    }
  }
  ts.close();
  ts.expect_symbol(">");
  return p;
}

inline Presentation parse_presentation(const std::string& text) {
  TokenStream ts(tokenize(text));
  if (ts.at_ident("present")) ts.next();
  Presentation p = parse_presentation_body(ts);
  while (ts.peek().kind == Tok::newline) ts.next();
  if (ts.peek().kind != Tok::end) ts.fail({"end of input"});
  return p;
}

}  // namespace qmor
