#pragma once

// Morphisms between presented *-algebras given on generators, with per-relation
// well-definedness verdicts.

#include "qmor/equality.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qmor {

struct RelationVerdict {
  enum class Kind { relation, self_adjoint };
  Kind kind = Kind::relation;
  std::size_t index = 0;  // relation index, or generator index for self-adjointness checks
  EqualityVerdict verdict;
};

inline Verdict summarize(const std::vector<EqualityVerdict>& vs) {
  bool unknown = false;
  for (const auto& v : vs) {
    if (v.status == Verdict::distinct) return Verdict::distinct;
    if (v.status == Verdict::unknown) unknown = true;
  }
  return unknown ? Verdict::unknown : Verdict::equal;
}

class PresentedHom {
 public:
  std::string name;
  Presentation source;
  Presentation target;
  std::vector<FreeStarPoly> images;  // per source generator, over target generators
  std::vector<RelationVerdict> welldef;
  bool checked = false;

  FreeStarPoly image_of(Letter l) const {
    const FreeStarPoly& x = images.at(generator_of(l));
    if (!is_adjoint(l) || source.generator(generator_of(l)).self_adjoint) return x;
    return target.adjoint(x);
  }

  FreeStarPoly apply(const FreeStarPoly& p) const {
    return target.canonical(source.canonical(p).substitute([&](Letter l) { return image_of(l); }));
  }

  Verdict verdict() const {
    if (!checked) return Verdict::unknown;
    std::vector<EqualityVerdict> vs;
    for (const auto& r : welldef) vs.push_back(r.verdict);
    return summarize(vs);
  }

  std::size_t rewrite_steps() const {
    std::size_t s = 0;
    for (const auto& r : welldef) s += r.verdict.steps;
    return s;
  }
};

struct UnprovenHom : std::logic_error {
  using std::logic_error::logic_error;
};

// Verifies that every relation of the source maps to zero and that images of self-adjoint
// generators are self-adjoint.
inline void check_well_defined(PresentedHom& h, std::size_t budget = kDefaultBudget,
                               const CertificateSources& certs = {}) {
  h.welldef.clear();
  for (std::size_t i = 0; i < h.source.relations().size(); ++i)
    h.welldef.push_back({RelationVerdict::Kind::relation, i,
                         presentation_equal(h.apply(h.source.relations()[i]), 0, h.target, budget, certs)});
  for (std::size_t g = 0; g < h.source.generator_count(); ++g) {
    if (!h.source.generator(g).self_adjoint) continue;
    const FreeStarPoly& x = h.images[g];
    h.welldef.push_back({RelationVerdict::Kind::self_adjoint, g,
                         presentation_equal(x, h.target.adjoint(x), h.target, budget, certs)});
  }
  h.checked = true;
}

inline PresentedHom make_presented_hom(std::string name, Presentation source, Presentation target,
                                       std::vector<FreeStarPoly> images, std::size_t budget = kDefaultBudget,
                                       const CertificateSources& certs = {}) {
  if (images.size() != source.generator_count())
    throw std::invalid_argument("presented hom '" + name + "': need one image per source generator");
  PresentedHom h{std::move(name), std::move(source), std::move(target), {}, {}, false};
  for (auto& x : images) {
    if (x.max_generator() > h.target.generator_count())
      throw UnknownSymbol("image mentions a generator outside the target");
    h.images.push_back(h.target.canonical(x));
  }
  check_well_defined(h, budget, certs);
  return h;
}

inline PresentedHom identity_hom(const Presentation& p, std::size_t budget = kDefaultBudget) {
  std::vector<FreeStarPoly> images;
  for (std::size_t g = 0; g < p.generator_count(); ++g) images.push_back(FreeStarPoly::gen(g));
  return make_presented_hom("id", p, p, std::move(images), budget);
}

// g o f. Refuses inputs whose well-definedness is not `equal` unless forced.
inline PresentedHom compose(const PresentedHom& g, const PresentedHom& f, std::size_t budget = kDefaultBudget,
                            bool force = false) {
  if (!f.target.same_signature(g.source)) throw std::invalid_argument("compose: signatures do not match");
  if (!force && (f.verdict() != Verdict::equal || g.verdict() != Verdict::equal))
    throw UnprovenHom("compose: '" + g.name + "' or '" + f.name + "' is not proven well defined");
  std::vector<FreeStarPoly> images;
  for (const auto& x : f.images) images.push_back(g.apply(x));
  return make_presented_hom(g.name + "*" + f.name, f.source, g.target, std::move(images), budget);
}

// h_1 (x) ... (x) h_n between presented tensor products. Each part's source and target may
// themselves be tensor presentations; legs are flattened in order.
inline PresentedHom tensor_homs(const std::vector<PresentedHom>& parts, std::size_t budget = kDefaultBudget) {
  std::vector<Presentation> sources, targets;
  for (const auto& h : parts) {
    sources.push_back(h.source);
    targets.push_back(h.target);
  }
  Presentation src = tensor_presentation(sources);
  Presentation dst = tensor_presentation(targets);
  std::vector<FreeStarPoly> images;
  std::string name;
  std::size_t dst_off = 0;
  for (const auto& h : parts) {
    for (const auto& x : h.images)
      images.push_back(x.substitute([&](Letter l) { return FreeStarPoly::letter(l + static_cast<Letter>(2 * dst_off)); }));
    dst_off += h.target.generator_count();
    name += (name.empty() ? "" : "(x)") + h.name;
  }
  return make_presented_hom(name, src, dst, std::move(images), budget);
}

// Generator-wise comparison of two homs with the same source and target.
inline std::vector<EqualityVerdict> compare_on_generators(const PresentedHom& a, const PresentedHom& b,
                                                          std::size_t budget = kDefaultBudget) {
  if (!a.source.same_signature(b.source) || !a.target.same_signature(b.target))
    throw std::invalid_argument("compare_on_generators: homs have different shapes");
  std::vector<EqualityVerdict> out;
  for (std::size_t g = 0; g < a.images.size(); ++g)
    out.push_back(presentation_equal(a.images[g], b.images[g], a.target, budget));
  return out;
}

// Constructive surjectivity: listed target generators, each with a candidate preimage whose
// image rewrites back to the generator.
struct Coverage {
  std::vector<std::size_t> targets;     // generator indices of the hom's target
  std::vector<FreeStarPoly> preimages;  // aligned with targets
  std::vector<EqualityVerdict> verdicts;
  bool covered() const { return summarize(verdicts) == Verdict::equal; }
};

inline Coverage verify_preimages(const PresentedHom& h, std::vector<std::size_t> targets,
                                 std::vector<FreeStarPoly> preimages, std::size_t budget = kDefaultBudget) {
  if (preimages.size() != targets.size()) throw std::invalid_argument("verify_preimages: size mismatch");
  Coverage c;
  for (std::size_t i = 0; i < targets.size(); ++i)
    c.verdicts.push_back(presentation_equal(h.apply(preimages[i]), FreeStarPoly::gen(targets[i]), h.target, budget));
  c.targets = std::move(targets);
  c.preimages = std::move(preimages);
  return c;
}

inline Coverage verify_coverage(const PresentedHom& h, std::vector<FreeStarPoly> preimages,
                                std::size_t budget = kDefaultBudget) {
  if (preimages.size() != h.target.generator_count())
    throw std::invalid_argument("verify_coverage: need one candidate per target generator");
  std::vector<std::size_t> targets(preimages.size());
  for (std::size_t g = 0; g < targets.size(); ++g) targets[g] = g;
  return verify_preimages(h, std::move(targets), std::move(preimages), budget);
}

}  // namespace qmor
