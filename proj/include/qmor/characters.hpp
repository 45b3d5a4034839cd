#pragma once

// Characters (unital *-homomorphisms to C) of presentations whose generators are all
// self-adjoint idempotents after abelianization, found by backtracking over {0, 1}.

#include "qmor/presentation.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmor {

using Character = std::vector<GaussRat>;  // generator -> scalar

struct UnsupportedSpectrum : std::invalid_argument {
  UnsupportedSpectrum(std::size_t g, const std::string& name)
      : std::invalid_argument("generator '" + name + "' is not provably a self-adjoint idempotent"), generator(g) {}
  std::size_t generator;
};

inline GaussRat evaluate(const Character& chi, const FreeStarPoly& p) {
  GaussRat v;
  for (const auto& [w, c] : p.terms()) {
    GaussRat t = c;
    for (Letter l : w) {
      const GaussRat& x = chi.at(generator_of(l));
      t *= is_adjoint(l) ? x.conj() : x;
      if (t.is_zero()) break;
    }
    v += t;
  }
  return v;
}

// Throws UnsupportedSpectrum unless every generator is a self-adjoint idempotent modulo the
// abelianized relations.
inline void require_projection_generators(const Presentation& p, std::size_t budget = kDefaultBudget) {
  const Presentation ab = abelianize(p);
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    const FreeStarPoly x = FreeStarPoly::gen(g);
    const bool sa = p.generator(g).self_adjoint || ab.normal_form(x - FreeStarPoly::gen(g, true), budget).value.is_zero();
    if (!sa || !ab.normal_form(x * x - x, budget).value.is_zero()) throw UnsupportedSpectrum(g, p.generator(g).name);
  }
}

// Visits characters in lexicographic order of their {0,1} assignment; the visitor returns
// false to stop. Every visited character has been re-checked against every relation.
inline void for_each_character(const Presentation& p, const std::function<bool(const Character&)>& visit,
                               std::size_t budget = kDefaultBudget) {
  require_projection_generators(p, budget);
  const std::size_t n = p.generator_count();
  std::vector<std::vector<const FreeStarPoly*>> due(n + 1);
  for (const auto& q : p.relations()) {
    if (q.is_constant()) {
      if (!q.is_zero()) return;  // 1 = 0: no characters
      continue;
    }
    due[q.max_generator()].push_back(&q);
  }
  Character chi(n);
  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t g) {
    if (stop) return;
    if (g == n) {
      for (const auto& q : p.relations())
        if (!evaluate(chi, q).is_zero()) return;
      stop = !visit(chi);
      return;
    }
    for (int v : {0, 1}) {
      chi[g] = v;
      bool ok = true;
      for (const auto* q : due[g + 1])
        if (!evaluate(chi, *q).is_zero()) {
          ok = false;
          break;
        }
      if (ok) go(g + 1);
      if (stop) return;
    }
    chi[g] = 0;
  };
  go(0);
}

inline std::vector<Character> enumerate_characters(const Presentation& p, std::size_t budget = kDefaultBudget) {
  std::vector<Character> out;
  for_each_character(p, [&](const Character& c) {
    out.push_back(c);
    return true;
  }, budget);
  return out;
}

}  // namespace qmor
