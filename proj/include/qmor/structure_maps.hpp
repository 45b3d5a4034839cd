#pragma once

// Canonical maps between Mor algebras: the exponential law, the direct-sum and tensor splits,
// and the composition map (comultiplication when B = C = D). Every image is read off by slicing
// the composite of the universal maps, never typed in by hand.

#include "qmor/induced.hpp"

#include <stdexcept>
#include <vector>

namespace qmor {

inline Verdict combine(std::initializer_list<Verdict> vs) {
  bool unknown = false;
  for (Verdict v : vs) {
    if (v == Verdict::distinct) return Verdict::distinct;
    if (v == Verdict::unknown) unknown = true;
  }
  return unknown ? Verdict::unknown : Verdict::equal;
}

inline Verdict coverage_verdict(const Coverage& c) { return summarize(c.verdicts); }

// ---------------------------------------------------------------------------
// Exponential law: Mor(B, C1 (x) C2) ~ Mor(Mor(B, C1), C2).

struct ExpLaw {
  TensorProduct c12;
  MorPresentation m12;     // Mor(B, C1 (x) C2)
  MorPresentation m1;      // Mor(B, C1)
  MorPresentation nested;  // Mor(Mor(B, C1), C2)
  PresentedHom psi;        // m12 -> nested
  PresentedHom psi_inv;    // nested -> m12
  PresentedHom gamma;      // m1 -> C2 (x) m12
  std::vector<EqualityVerdict> inverse_on_m12;     // psi_inv psi = id
  std::vector<EqualityVerdict> inverse_on_nested;  // psi psi_inv = id
  std::vector<EqualityVerdict> gamma_identity;     // (id (x) psi) gamma = Phi_nested

  Verdict verdict() const {
    return combine({psi.verdict(), psi_inv.verdict(), gamma.verdict(), summarize(inverse_on_m12),
                    summarize(inverse_on_nested), summarize(gamma_identity)});
  }
};

inline ExpLaw exp_law(const Presentation& B, const FdAlgebra& c1, const FdAlgebra& c2,
                      std::size_t budget = kDefaultBudget) {
  ExpLaw e{tensor(c1, c2), {}, {}, {}, {}, {}, {}, {}, {}, {}};
  e.m12 = build_mor(B, e.c12.algebra);
  e.m1 = build_mor(B, c1);
  e.nested = build_mor(e.m1.base, c2);

  // psi: the (a, b) coordinate of Phi_12(t) goes to the b coordinate of Phi_nested applied to
  // the a coordinate of Phi_1(t).
  std::vector<FreeStarPoly> psi;
  for (const auto& o : e.m12.origin) {
    auto [a, b] = e.c12.split(o.unit);
    psi.push_back(e.nested.phi(e.m1.tableau[o.source_gen][a])[b]);
  }
  e.psi = make_presented_hom("Psi", e.m12.base, e.nested.base, std::move(psi), budget);

  // psi_inv: z_{y,b} with y = x_{t,a} goes to the (a, b) coordinate of Phi_12(t).
  std::vector<FreeStarPoly> inv;
  for (const auto& o : e.nested.origin) {
    const GeneratorOrigin& y = e.m1.origin[o.source_gen];
    inv.push_back(e.m12.tableau[y.source_gen][e.c12.index(y.unit, o.unit)]);
  }
  e.psi_inv = make_presented_hom("Psi'", e.nested.base, e.m12.base, std::move(inv), budget);

  const FdPresentation p2 = present(c2);
  const Presentation gamma_target = tensor_presentation({p2.presentation, e.m12.base});
  std::vector<FreeStarPoly> gamma;
  for (const auto& o : e.m1.origin) {
    FreeStarPoly x;
    for (std::size_t b = 0; b < c2.dim(); ++b)
      x += FreeStarPoly::letter(p2.basis_letter[b]) *
           embed_leg(gamma_target, 1, e.m12.tableau[o.source_gen][e.c12.index(o.unit, b)]);
    gamma.push_back(std::move(x));
  }
  e.gamma = make_presented_hom("Gamma", e.m1.base, gamma_target, std::move(gamma), budget);

  const PresentedHom id_m12 = identity_hom(e.m12.base, budget);
  const PresentedHom id_nested = identity_hom(e.nested.base, budget);
  e.inverse_on_m12 = compare_on_generators(compose(e.psi_inv, e.psi, budget, true), id_m12, budget);
  e.inverse_on_nested = compare_on_generators(compose(e.psi, e.psi_inv, budget, true), id_nested, budget);
  const PresentedHom lifted = tensor_homs({identity_hom(p2.presentation, budget), e.psi}, budget);
  e.gamma_identity =
      compare_on_generators(compose(lifted, e.gamma, budget, true), canonical_phi(e.nested, budget), budget);
  return e;
}

inline ExpLaw exp_law(const FdAlgebra& B, const FdAlgebra& c1, const FdAlgebra& c2,
                      std::size_t budget = kDefaultBudget) {
  return exp_law(present(B).presentation, c1, c2, budget);
}

// ---------------------------------------------------------------------------
// Direct-sum split: Mor(B_1 + ... + B_n, C_1 + ... + C_n) onto the Mor(B_i, C_i), with
// generators that pair different slots sent to zero.
//
// A unital map needs a unital codomain: the unit relation sum_t x_{t,a} = 1 lands on the slot
// unit in a presented direct sum. SplitCodomain::tensor is the default; direct_sum keeps the
// literal codomain and reports the unit relations as distinct.

enum class SplitCodomain { tensor, direct_sum };

struct DirectSumSplit {
  DirectSum bsum;
  DirectSum csum;
  MorPresentation domain;
  std::vector<MorPresentation> slots;
  Presentation codomain;
  std::vector<std::size_t> slot_offset;  // first codomain generator of each slot
  PresentedHom psi;
  Coverage coverage;
  std::size_t cross_generators = 0;
  std::size_t cross_zero = 0;

  Verdict verdict() const {
    return combine({psi.verdict(), coverage_verdict(coverage),
                    cross_zero == cross_generators ? Verdict::equal : Verdict::distinct});
  }
};

inline DirectSumSplit direct_sum_split(const std::vector<FdAlgebra>& bs, const std::vector<FdAlgebra>& cs,
                                       SplitCodomain kind = SplitCodomain::tensor,
                                       std::size_t budget = kDefaultBudget) {
  if (bs.size() != cs.size() || bs.empty()) throw std::invalid_argument("direct-sum split needs matching slot lists");
  DirectSumSplit d{direct_sum(bs), direct_sum(cs), {}, {}, {}, {}, {}, {}, 0, 0};
  d.domain = build_mor(d.bsum.algebra, d.csum.algebra);
  std::vector<Presentation> bases;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    d.slots.push_back(build_mor(bs[i], cs[i]));
    bases.push_back(d.slots.back().base);
  }
  if (kind == SplitCodomain::tensor) {
    d.codomain = tensor_presentation(bases);
    d.slot_offset = leg_offsets(d.codomain);
  } else {
    DirectSumPresentation ds = direct_sum_presentation(bases);
    d.codomain = ds.presentation;
    d.slot_offset = ds.slot_offset;
  }
  auto embed = [&](std::size_t slot, const FreeStarPoly& p) {
    const Letter shift = static_cast<Letter>(2 * d.slot_offset[slot]);
    return p.substitute([&](Letter l) { return FreeStarPoly::letter(l + shift); });
  };

  const auto dom_basis = generator_basis(*d.domain.source_fd);
  std::vector<FreeStarPoly> images;
  for (const auto& o : d.domain.origin) {
    auto [bi, b] = d.bsum.locate(dom_basis[o.source_gen]);
    auto [ci, c] = d.csum.locate(o.unit);
    if (bi != ci) {
      ++d.cross_generators;
      images.emplace_back();
      continue;
    }
    const MorPresentation& s = d.slots[bi];
    images.push_back(embed(bi, s.phi(s.source_element(FdElement::basis(bs[bi], b)))[c]));
  }
  d.psi = make_presented_hom("Psi", d.domain.base, d.codomain, std::move(images), budget);
  for (std::size_t g = 0; g < d.domain.origin.size(); ++g) {
    const auto& o = d.domain.origin[g];
    if (d.bsum.locate(dom_basis[o.source_gen]).first != d.csum.locate(o.unit).first && d.psi.images[g].is_zero())
      ++d.cross_zero;
  }

  std::vector<std::size_t> targets;
  std::vector<FreeStarPoly> pre;
  for (std::size_t i = 0; i < d.slots.size(); ++i) {
    const MorPresentation& s = d.slots[i];
    const auto basis = generator_basis(*s.source_fd);
    for (std::size_t g = 0; g < s.base.generator_count(); ++g) {
      const auto& o = s.origin[g];
      const FdElement b = FdElement::basis(d.bsum.algebra, d.bsum.embed(i, basis[o.source_gen]));
      targets.push_back(d.slot_offset[i] + g);
      pre.push_back(d.domain.phi(d.domain.source_element(b))[d.csum.embed(i, o.unit)]);
    }
  }
  d.coverage = verify_preimages(d.psi, std::move(targets), std::move(pre), budget);
  return d;
}

// ---------------------------------------------------------------------------
// Composition map Mor(B, D) -> Mor(C, D) (x) Mor(B, C):
// w_{t,d} -> sum_c v_{c,d} (x) y_{t,c}, read off from (Phi_CD (x) id) Phi_BC.

struct CompositionMap {
  MorPresentation bd;
  MorPresentation cd;
  MorPresentation bc;
  PresentedHom psi;
};

inline CompositionMap composition_map(const FdAlgebra& B, const FdAlgebra& C, const FdAlgebra& D,
                                      std::size_t budget = kDefaultBudget) {
  CompositionMap m{build_mor(B, D), build_mor(C, D), build_mor(B, C), {}};
  const Presentation target = tensor_presentation({m.cd.base, m.bc.base});
  std::vector<CPoly> v(C.dim());
  for (std::size_t c = 0; c < C.dim(); ++c) v[c] = m.cd.phi(m.cd.source_element(FdElement::basis(C, c)));
  std::vector<FreeStarPoly> images;
  for (const auto& o : m.bd.origin) {
    FreeStarPoly x;
    for (std::size_t c = 0; c < C.dim(); ++c) {
      const FreeStarPoly& y = m.bc.tableau[o.source_gen][c];
      if (y.is_zero() || v[c][o.unit].is_zero()) continue;
      x += embed_leg(target, 0, v[c][o.unit]) * embed_leg(target, 1, y);
    }
    images.push_back(std::move(x));
  }
  m.psi = make_presented_hom("Delta", m.bd.base, target, std::move(images), budget);
  return m;
}

struct CoassociativityCheck {
  CompositionMap delta;
  std::vector<EqualityVerdict> verdicts;  // per generator: (id (x) D) D = (D (x) id) D
  Verdict verdict() const { return combine({delta.psi.verdict(), summarize(verdicts)}); }
};

inline CoassociativityCheck check_coassociativity(const FdAlgebra& B, std::size_t budget = kDefaultBudget) {
  CoassociativityCheck c{composition_map(B, B, B, budget), {}};
  const PresentedHom& d = c.delta.psi;
  const PresentedHom id = identity_hom(c.delta.bd.base, budget);
  const PresentedHom left = compose(tensor_homs({id, d}, budget), d, budget, true);
  const PresentedHom right = compose(tensor_homs({d, id}, budget), d, budget, true);
  c.verdicts = compare_on_generators(left, right, budget);
  return c;
}

// ---------------------------------------------------------------------------
// Tensor split for commutative C: Mor(B1 (x) B2, C) -> Mor(B1, C) (x) Mor(B2, C), read off
// from m_C (Phi_1 (x) Phi_2) on the generators b (x) 1 and 1 (x) b.

struct NoncommutativeTarget : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TensorSplit {
  Presentation b12;
  MorPresentation domain;
  MorPresentation m1;
  MorPresentation m2;
  PresentedHom psi;
  Coverage coverage;
  Verdict verdict() const { return combine({psi.verdict(), coverage_verdict(coverage)}); }
};

inline TensorSplit tensor_split(const Presentation& B1, const Presentation& B2, const FdAlgebra& C,
                                std::size_t budget = kDefaultBudget) {
  if (!C.is_commutative())
    throw NoncommutativeTarget("tensor split needs a commutative target, got " + C.str());
  TensorSplit s{tensor_presentation({B1, B2}), {}, build_mor(B1, C), build_mor(B2, C), {}, {}};
  s.domain = build_mor(s.b12, C);
  const Presentation target = tensor_presentation({s.m1.base, s.m2.base});
  const std::size_t n1 = s.m1.source.generator_count();
  auto lift = [&](std::size_t leg, const CPoly& p) {
    CPoly r(C.dim());
    for (std::size_t a = 0; a < C.dim(); ++a) r[a] = embed_leg(target, leg, p[a]);
    return r;
  };
  std::vector<FreeStarPoly> images;
  for (const auto& o : s.domain.origin) {
    const bool first = o.source_gen < n1;
    const CPoly p1 = lift(0, first ? s.m1.phi(FreeStarPoly::gen(o.source_gen)) : s.m1.phi(1));
    const CPoly p2 = lift(1, first ? s.m2.phi(1) : s.m2.phi(FreeStarPoly::gen(o.source_gen - n1)));
    images.push_back(cpoly_mul(C, p1, p2)[o.unit]);
  }
  s.psi = make_presented_hom("Psi", s.domain.base, target, std::move(images), budget);

  std::vector<FreeStarPoly> pre;
  for (const auto& o : s.m1.origin) pre.push_back(s.domain.phi(FreeStarPoly::gen(o.source_gen))[o.unit]);
  for (const auto& o : s.m2.origin) pre.push_back(s.domain.phi(FreeStarPoly::gen(n1 + o.source_gen))[o.unit]);
  s.coverage = verify_coverage(s.psi, std::move(pre), budget);
  return s;
}

}  // namespace qmor
