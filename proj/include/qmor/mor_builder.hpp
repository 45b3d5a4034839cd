#pragma once

// The presented algebra Mor(B, C) for a finitely presented B and a finite-dimensional C.
//
// Each generator t of B gets a C-valued tableau t -> sum_a u_a (x) x_{t,a}; the relations of
// Mor(B, C) are the C-coordinates of every relation of B evaluated on the tableaux, plus
// whatever adjointness ties the tableau entries together.

#include "qmor/presented_hom.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmor {

// Element of C (x) A stored as one polynomial per matrix unit of C.
using CPoly = std::vector<FreeStarPoly>;

inline CPoly cpoly_scalar(const FdAlgebra& C, const FreeStarPoly& s) {
  CPoly r(C.dim());
  for (std::size_t k = 0; k < C.block_count(); ++k)
    for (std::size_t i = 0; i < C.block_size(k); ++i) r[C.index(k, i, i)] = s;
  return r;
}

inline CPoly cpoly_mul(const FdAlgebra& C, const CPoly& a, const CPoly& b) {
  CPoly r(C.dim());
  for (std::size_t x = 0; x < C.dim(); ++x) {
    if (a[x].is_zero()) continue;
    for (std::size_t y = 0; y < C.dim(); ++y) {
      if (b[y].is_zero()) continue;
      if (auto z = C.product_index(x, y)) r[*z] += a[x] * b[y];
    }
  }
  return r;
}

inline CPoly cpoly_add(CPoly a, const CPoly& b) {
  for (std::size_t x = 0; x < a.size(); ++x) a[x] += b[x];
  return a;
}

inline CPoly cpoly_adjoint(const FdAlgebra& C, const CPoly& a, const SelfAdjointMask& sa) {
  CPoly r(C.dim());
  for (std::size_t x = 0; x < C.dim(); ++x) r[C.adjoint_index(x)] = a[x].adjoint(sa);
  return r;
}

struct GeneratorOrigin {
  std::size_t source_gen = 0;  // generator t of B
  std::size_t unit = 0;        // matrix unit a of C
};

struct MorPresentation {
  Presentation source;  // star-closed presentation of B
  FdAlgebra target;
  Presentation base;
  std::vector<CPoly> tableau;            // per generator of B
  std::vector<GeneratorOrigin> origin;   // per generator of base
  std::optional<FdPresentation> source_fd;

  CPoly phi_letter(Letter l) const {
    const CPoly& t = tableau.at(generator_of(l));
    if (!is_adjoint(l) || source.generator(generator_of(l)).self_adjoint) return t;
    return cpoly_adjoint(target, t, base.self_adjoint_mask());
  }

  // Homomorphic extension B -> C (x) base of the tableaux, in coordinates.
  CPoly phi(const FreeStarPoly& b) const {
    CPoly r(target.dim());
    const FreeStarPoly cb = source.canonical(b);
    for (const auto& [w, c] : cb.terms()) {
      CPoly t = cpoly_scalar(target, FreeStarPoly(c));
      for (Letter l : w) t = cpoly_mul(target, t, phi_letter(l));
      r = cpoly_add(std::move(r), t);
    }
    for (auto& x : r) x = base.canonical(x);
    return r;
  }

  // The matrix-unit letter of an element of B when B was given as an algebra.
  FreeStarPoly source_element(const FdElement& x) const {
    if (!source_fd) throw std::logic_error("Mor source is not a finite-dimensional algebra");
    return source_fd->element(x);
  }
};

inline std::string mor_generator_name(const std::string& t, const FdAlgebra& C, std::size_t a) {
  const auto& u = C.unit(a);
  return "x_" + t + "_" + std::to_string(u.block + 1) + "_" + std::to_string(u.row + 1) + "_" +
         std::to_string(u.col + 1);
}

struct MorOptions {
  bool eliminate = false;  // substitute away generators fixed by linear relations
};

inline MorPresentation eliminate_linear(const MorPresentation& m);

inline MorPresentation build_mor(const Presentation& B, const FdAlgebra& C, const MorOptions& opt = {}) {
  MorPresentation m;
  m.source = star_close(B);
  m.target = C;
  const std::size_t nb = m.source.generator_count();
  m.tableau.assign(nb, CPoly(C.dim()));

  // Tableau entries: one new generator per (t, a), except that a self-adjoint t forces
  // x_{t,a*} = x_{t,a}^*, so below-diagonal entries reuse the adjoint letter.
  for (std::size_t t = 0; t < nb; ++t) {
    const auto& g = m.source.generator(t);
    for (std::size_t a = 0; a < C.dim(); ++a) {
      const std::size_t as = C.adjoint_index(a);
      if (g.self_adjoint && as < a) continue;
      const std::size_t x = m.base.add_generator(mor_generator_name(g.name, C, a), g.self_adjoint && as == a);
      m.origin.push_back({t, a});
      m.tableau[t][a] = FreeStarPoly::gen(x);
    }
    if (g.self_adjoint)
      for (std::size_t a = 0; a < C.dim(); ++a)
        if (C.adjoint_index(a) < a) m.tableau[t][a] = m.base.adjoint(m.tableau[t][C.adjoint_index(a)]);
  }

  std::set<FreeStarPoly> seen;
  std::vector<FreeStarPoly> rels;
  for (const auto& r : m.source.relations())
    for (const auto& q : m.phi(r)) {
      FreeStarPoly c = m.base.canonical(q);
      if (!c.is_zero() && seen.insert(c.monic()).second) rels.push_back(std::move(c));
    }
  for (const auto& q : star_close(rels, m.base.self_adjoint_mask())) m.base.add_relation(q);
  return opt.eliminate ? eliminate_linear(m) : m;
}

inline MorPresentation build_mor(const FdAlgebra& B, const FdAlgebra& C, const MorOptions& opt = {}) {
  FdPresentation fp = present(B);
  MorPresentation m = build_mor(fp.presentation, C, opt);
  m.source_fd = std::move(fp);
  return m;
}

// Matrix unit of B named by each generator of its matrix-unit presentation.
inline std::vector<std::size_t> generator_basis(const FdPresentation& fp) {
  std::vector<std::size_t> out(fp.presentation.generator_count());
  for (std::size_t a = 0; a < fp.algebra.dim(); ++a)
    if (!is_adjoint(fp.basis_letter[a])) out[generator_of(fp.basis_letter[a])] = a;
  return out;
}

// Repeatedly uses a relation whose leading term is a single letter to express that generator
// through lower ones, then drops it. Relations that become zero or duplicate are removed, as
// are relations already implied by the remaining ones.
inline MorPresentation eliminate_linear(const MorPresentation& in) {
  MorPresentation m = in;
  for (;;) {
    const Presentation& p = m.base;
    std::optional<std::size_t> victim;
    FreeStarPoly value;
    for (const auto& q : p.relations()) {
      if (q.degree() != 1) continue;
      const Letter l = q.leading_word().front();
      const std::size_t g = generator_of(l);
      FreeStarPoly rest = q;
      rest.add_term(q.leading_word(), -q.leading_coeff());
      FreeStarPoly v = (GaussRat(-1) / q.leading_coeff()) * rest;
      if (is_adjoint(l)) v = p.adjoint(v);
      bool mentions = false;
      for (const auto& [w, c] : v.terms())
        for (Letter k : w) mentions = mentions || generator_of(k) == g;
      if (mentions) continue;
      if (p.generator(g).self_adjoint && p.canonical(v) != p.adjoint(v)) continue;
      victim = g;
      value = p.canonical(v);
      break;
    }
    if (!victim) break;

    const std::size_t g = *victim;
    const SelfAdjointMask& mask = p.self_adjoint_mask();
    auto image = [&](Letter l) {
      const std::size_t h = generator_of(l);
      if (h == g) return is_adjoint(l) ? value.adjoint(mask) : value;
      return FreeStarPoly::letter(h < g ? l : l - 2);
    };
    Presentation next;
    std::vector<GeneratorOrigin> origin;
    for (std::size_t h = 0; h < p.generator_count(); ++h) {
      if (h == g) continue;
      const auto& gen = p.generator(h);
      next.add_generator(gen.name, gen.self_adjoint, gen.norm_bound);
      origin.push_back(m.origin[h]);
    }
    std::set<FreeStarPoly> seen;
    std::vector<FreeStarPoly> rels;
    for (const auto& q : p.relations()) {
      FreeStarPoly c = next.canonical(q.canonical(mask).substitute(image));
      if (!c.is_zero() && seen.insert(c.monic()).second) rels.push_back(std::move(c));
    }
    for (auto& row : m.tableau)
      for (auto& x : row) x = next.canonical(x.substitute(image));
    // Keep a relation only if the others do not already reduce it to zero.
    std::vector<bool> keep(rels.size(), true);
    for (std::size_t i = rels.size(); i-- > 0;) {
      std::vector<FreeStarPoly> others;
      for (std::size_t j = 0; j < rels.size(); ++j)
        if (j != i && keep[j]) others.push_back(rels[j]);
      if (RewriteSystem(others, 2 * next.generator_count()).reduce(rels[i], 10000).value.is_zero()) keep[i] = false;
    }
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (keep[i]) next.add_relation(rels[i]);
    m.base = std::move(next);
    m.origin = std::move(origin);
  }
  return m;
}

// Phi: B -> C (x) Mor(B, C), with C carried by its matrix-unit presentation in leg 1.
inline PresentedHom canonical_phi(const MorPresentation& m, std::size_t budget = kDefaultBudget) {
  const FdPresentation cp = present(m.target);
  const Presentation target = tensor_presentation({cp.presentation, m.base});
  std::vector<FreeStarPoly> images;
  for (std::size_t t = 0; t < m.source.generator_count(); ++t) {
    FreeStarPoly x;
    for (std::size_t a = 0; a < m.target.dim(); ++a)
      x += FreeStarPoly::letter(cp.basis_letter[a]) * embed_leg(target, 1, m.tableau[t][a]);
    images.push_back(std::move(x));
  }
  return make_presented_hom("Phi", m.source, target, std::move(images), budget);
}

// Every relation of B vanishes coordinatewise in Mor(B, C).
inline std::vector<EqualityVerdict> check_relations_vanish(const MorPresentation& m,
                                                           std::size_t budget = kDefaultBudget) {
  std::vector<EqualityVerdict> out;
  for (const auto& r : m.source.relations())
    for (const auto& q : m.phi(r)) out.push_back(presentation_equal(q, 0, m.base, budget, {false, {}}));
  return out;
}

}  // namespace qmor
