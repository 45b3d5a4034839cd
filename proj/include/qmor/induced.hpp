#pragma once

// Mor(f, g): Mor(B1, C1) -> Mor(B2, C2) for f: B1 -> B2 and g: C2 -> C1, the functor laws,
// and constructive surjectivity of Mor(f, id) for surjective f.

#include "qmor/exact_linalg.hpp"
#include "qmor/mor_builder.hpp"

#include <stdexcept>
#include <vector>

namespace qmor {

struct NotSurjective : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// f is given by the image of every generator of B1 as a polynomial over the generators of B2.
// x_{t,a} goes to the a-coordinate of (g (x) id) Phi_2(f(t)).
inline PresentedHom induced_from_images(const MorPresentation& m1, const MorPresentation& m2,
                                        const std::vector<FreeStarPoly>& f_images, const StarHom& g,
                                        std::size_t budget = kDefaultBudget) {
  if (!(g.source() == m2.target) || !(g.target() == m1.target))
    throw AlgebraMismatch("induced map: g must go from the second target to the first");
  if (f_images.size() != m1.source.generator_count())
    throw std::invalid_argument("induced map: need one image per generator of the first source");
  std::vector<CPoly> lifted;
  for (const auto& x : f_images) lifted.push_back(m2.phi(x));
  std::vector<FreeStarPoly> images;
  for (const auto& o : m1.origin) {
    FreeStarPoly y;
    const CPoly& v = lifted[o.source_gen];
    for (std::size_t c = 0; c < m2.target.dim(); ++c) {
      if (v[c].is_zero()) continue;
      const GaussRat& w = g.image(c)[o.unit];
      if (!w.is_zero()) y += w * v[c];
    }
    images.push_back(std::move(y));
  }
  return make_presented_hom("Mor(f,g)", m1.base, m2.base, std::move(images), budget);
}

inline std::vector<FreeStarPoly> generator_images(const StarHom& f, const FdPresentation& src,
                                                  const FdPresentation& dst) {
  std::vector<FreeStarPoly> out;
  for (std::size_t a : generator_basis(src)) out.push_back(dst.element(f.image(a)));
  return out;
}

inline PresentedHom induced_mor(const StarHom& f, const StarHom& g, const MorPresentation& m1,
                                const MorPresentation& m2, std::size_t budget = kDefaultBudget) {
  if (!m1.source_fd || !m2.source_fd) throw std::logic_error("induced_mor needs algebra sources");
  if (!(f.source() == m1.source_fd->algebra) || !(f.target() == m2.source_fd->algebra))
    throw AlgebraMismatch("induced map: f does not match the sources");
  return induced_from_images(m1, m2, generator_images(f, *m1.source_fd, *m2.source_fd), g, budget);
}

struct FunctorCheck {
  std::vector<EqualityVerdict> composition;  // per generator of Mor(B1, C1)
  std::vector<EqualityVerdict> identity;     // per generator of Mor(B1, C1)
  Verdict verdict() const {
    auto all = composition;
    all.insert(all.end(), identity.begin(), identity.end());
    return summarize(all);
  }
};

// Mor(f' f, g g') = Mor(f', g') Mor(f, g) and Mor(id, id) = id, generator by generator.
// f: B1 -> B2, f': B2 -> B3, g: C2 -> C1, g': C3 -> C2.
inline FunctorCheck check_functor_laws(const StarHom& f, const StarHom& f2, const StarHom& g, const StarHom& g2,
                                       const MorPresentation& m1, const MorPresentation& m2,
                                       const MorPresentation& m3, std::size_t budget = kDefaultBudget) {
  FunctorCheck out;
  const PresentedHom lhs = induced_mor(compose(f2, f), compose(g, g2), m1, m3, budget);
  const PresentedHom first = induced_mor(f, g, m1, m2, budget);
  const PresentedHom second = induced_mor(f2, g2, m2, m3, budget);
  const PresentedHom rhs = compose(second, first, budget, true);
  out.composition = compare_on_generators(lhs, rhs, budget);
  const PresentedHom id = induced_mor(identity_hom(f.source()), identity_hom(m1.target), m1, m1, budget);
  out.identity = compare_on_generators(id, identity_hom(m1.base, budget), budget);
  return out;
}

// For surjective f: B1 -> B2, every generator x_{s,a} of Mor(B2, C) is hit by the a-coordinate
// of Phi_1(b) for any b with f(b) = e_s.
struct SurjectivityCheck {
  PresentedHom map;
  Coverage coverage;
};

inline SurjectivityCheck check_surjectivity(const StarHom& f, const MorPresentation& m1, const MorPresentation& m2,
                                            std::size_t budget = kDefaultBudget) {
  if (!(m1.target == m2.target)) throw AlgebraMismatch("surjectivity: both Mor algebras need the same target");
  SurjectivityCheck out{induced_mor(f, identity_hom(m1.target), m1, m2, budget), {}};
  const auto basis = generator_basis(*m2.source_fd);
  const ExactMatrix fm = f.matrix();
  std::vector<FreeStarPoly> pre;
  for (const auto& o : m2.origin) {
    std::vector<GaussRat> rhs(f.target().dim());
    rhs[basis[o.source_gen]] = 1;
    auto b = solve_linear(fm, rhs);
    if (!b) throw NotSurjective("matrix unit " + FdElement::basis(f.target(), basis[o.source_gen]).str() +
                                " is not in the image");
    pre.push_back(m1.phi(m1.source_element(FdElement(f.source(), *b)))[o.unit]);
  }
  out.coverage = verify_coverage(out.map, std::move(pre), budget);
  return out;
}

}  // namespace qmor
