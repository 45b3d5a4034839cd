#pragma once

// Noncommutative polynomials over Gaussian rationals in generators and their formal adjoints.
//
// A letter is 2 * generator + (1 if adjoint). Words are ordered degree-lexicographically by
// letter code, so each adjoint letter sits immediately after its base letter.

#include "qmor/gaussian_rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace qmor {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

constexpr Letter make_letter(std::size_t gen, bool adjoint = false) {
  return static_cast<Letter>(2 * gen + (adjoint ? 1 : 0));
}
constexpr std::size_t generator_of(Letter l) { return l >> 1; }
constexpr bool is_adjoint(Letter l) { return (l & 1U) != 0; }

struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Which generators are declared self-adjoint; their adjoint letter is the letter itself.
using SelfAdjointMask = std::vector<bool>;

inline Letter adjoint_letter(Letter l, const SelfAdjointMask& sa) {
  const std::size_t g = generator_of(l);
  if (g < sa.size() && sa[g]) return l;
  return l ^ 1U;
}

class FreeStarPoly {
 public:
  using Terms = std::map<Word, GaussRat, DegLex>;

  FreeStarPoly() = default;
  FreeStarPoly(GaussRat c) {  // NOLINT: scalars embed as multiples of the unit
    if (!c.is_zero()) terms_.emplace(Word{}, std::move(c));
  }
  FreeStarPoly(int c) : FreeStarPoly(GaussRat(c)) {}  // NOLINT

  static FreeStarPoly word(Word w, GaussRat c = 1) {
    FreeStarPoly p;
    if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
    return p;
  }
  static FreeStarPoly letter(Letter l) { return word(Word{l}); }
  static FreeStarPoly gen(std::size_t g, bool adjoint = false) { return letter(make_letter(g, adjoint)); }

  const Terms& terms() const { return terms_; }
  // Direct access for in-place rewriting; callers must not store zero coefficients.
  Terms& mutable_terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  GaussRat constant_term() const {
    auto it = terms_.find(Word{});
    return it == terms_.end() ? GaussRat{} : it->second;
  }
  std::size_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

  // Largest word and its coefficient. Undefined on zero.
  const Word& leading_word() const { return terms_.rbegin()->first; }
  const GaussRat& leading_coeff() const { return terms_.rbegin()->second; }

  void add_term(const Word& w, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FreeStarPoly& operator+=(const FreeStarPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  FreeStarPoly& operator-=(const FreeStarPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  FreeStarPoly& operator*=(const GaussRat& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend FreeStarPoly operator+(FreeStarPoly a, const FreeStarPoly& b) { return a += b; }
  friend FreeStarPoly operator-(FreeStarPoly a, const FreeStarPoly& b) { return a -= b; }
  friend FreeStarPoly operator-(FreeStarPoly a) { return a *= GaussRat(-1); }
  friend FreeStarPoly operator*(const GaussRat& s, FreeStarPoly a) { return a *= s; }

  friend FreeStarPoly operator*(const FreeStarPoly& a, const FreeStarPoly& b) {
    FreeStarPoly r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add_term(concat(wa, wb), ca * cb);
    return r;
  }

  // Conjugate-linear anti-automorphism: reverses words, swaps letters with their adjoints.
  FreeStarPoly adjoint(const SelfAdjointMask& sa) const {
    FreeStarPoly r;
    for (const auto& [w, c] : terms_) {
      Word v(w.rbegin(), w.rend());
      for (auto& l : v) l = adjoint_letter(l, sa);
      r.add_term(v, c.conj());
    }
    return r;
  }

  // Rewrites adjoint letters of self-adjoint generators to the base letter.
  FreeStarPoly canonical(const SelfAdjointMask& sa) const {
    FreeStarPoly r;
    for (const auto& [w, c] : terms_) {
      Word v = w;
      for (auto& l : v)
        if (is_adjoint(l) && generator_of(l) < sa.size() && sa[generator_of(l)]) l ^= 1U;
      r.add_term(v, c);
    }
    return r;
  }

  // Scaled so the leading coefficient is 1; zero stays zero.
  FreeStarPoly monic() const {
    if (is_zero()) return *this;
    return (GaussRat(1) / leading_coeff()) * *this;
  }

  // Image under letter -> polynomial substitution.
  template <class LetterImage>
  FreeStarPoly substitute(LetterImage&& image_of) const {
    FreeStarPoly r;
    for (const auto& [w, c] : terms_) {
      FreeStarPoly t(c);
      for (Letter l : w) {
        t = t * image_of(l);
        if (t.is_zero()) break;
      }
      r += t;
    }
    return r;
  }

  std::size_t max_generator() const {
    std::size_t m = 0;
    for (const auto& [w, c] : terms_)
      for (Letter l : w) m = std::max(m, generator_of(l) + 1);
    return m;
  }

  friend bool operator==(const FreeStarPoly& a, const FreeStarPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const FreeStarPoly& a, const FreeStarPoly& b) { return !(a == b); }
  friend bool operator<(const FreeStarPoly& a, const FreeStarPoly& b) {
    return std::lexicographical_compare(
        a.terms_.rbegin(), a.terms_.rend(), b.terms_.rbegin(), b.terms_.rend(), [](const auto& x, const auto& y) {
          if (x.first != y.first) return DegLex{}(x.first, y.first);
          const auto& cx = x.second;
          const auto& cy = y.second;
          if (cx.re() != cy.re()) return cx.re() < cy.re();
          return cx.im() < cy.im();
        });
  }

 private:
  Terms terms_;
};

}  // namespace qmor
