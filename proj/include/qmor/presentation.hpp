#pragma once

// Finitely presented unital *-algebras: named generators (optionally self-adjoint) and
// relations q = 0 over Gaussian rationals.

#include "qmor/fd_algebra.hpp"
#include "qmor/free_star.hpp"
#include "qmor/rewriting.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qmor {

inline constexpr std::size_t kDefaultBudget = 100000;

struct UnknownSymbol : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Generator {
  std::string name;
  bool self_adjoint = false;
  std::optional<double> norm_bound;  // recorded only
};

class Presentation {
 public:
  Presentation() = default;

  std::size_t add_generator(std::string name, bool self_adjoint = false, std::optional<double> norm_bound = {}) {
    if (index_.count(name)) throw std::invalid_argument("duplicate generator '" + name + "'");
    index_.emplace(name, gens_.size());
    gens_.push_back({std::move(name), self_adjoint, norm_bound});
    mask_.push_back(self_adjoint);
    cache_.reset();
    return gens_.size() - 1;
  }

  // Stored canonically (adjoint letters of self-adjoint generators folded). Zero relations are dropped.
  void add_relation(const FreeStarPoly& q) {
    if (q.max_generator() > gens_.size()) throw UnknownSymbol("relation mentions an undeclared generator");
    FreeStarPoly c = q.canonical(mask_);
    if (c.is_zero()) return;
    relations_.push_back(std::move(c));
    cache_.reset();
  }

  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t g) const { return gens_.at(g); }
  std::size_t generator_count() const { return gens_.size(); }
  const std::vector<FreeStarPoly>& relations() const { return relations_; }
  const SelfAdjointMask& self_adjoint_mask() const { return mask_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require(const std::string& name) const {
    auto g = find(name);
    if (!g) throw UnknownSymbol("unknown generator '" + name + "'");
    return *g;
  }

  FreeStarPoly gen(const std::string& name, bool adjoint = false) const {
    return canonical(FreeStarPoly::gen(require(name), adjoint));
  }
  FreeStarPoly canonical(const FreeStarPoly& p) const { return p.canonical(mask_); }
  FreeStarPoly adjoint(const FreeStarPoly& p) const { return p.adjoint(mask_); }
  Letter adjoint(Letter l) const { return adjoint_letter(l, mask_); }

  std::string letter_name(Letter l) const {
    const auto& g = gens_.at(generator_of(l));
    return is_adjoint(l) && !g.self_adjoint ? g.name + "^*" : g.name;
  }

  // Letters in order: each generator followed by its adjoint when that is a distinct letter.
  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      out.push_back(make_letter(g));
      if (!gens_[g].self_adjoint) out.push_back(make_letter(g, true));
    }
    return out;
  }

  // A relation that is a nonzero constant presents the zero algebra.
  bool degenerate() const {
    for (const auto& q : relations_)
      if (q.is_constant() && !q.is_zero()) return true;
    return false;
  }

  // Monic canonical relation set, for set comparisons.
  std::set<FreeStarPoly> relation_set() const {
    std::set<FreeStarPoly> s;
    for (const auto& q : relations_) s.insert(q.monic());
    return s;
  }

  // Tensor legs (for presented tensor products); empty means a single leg.
  const std::vector<Presentation>& legs() const { return legs_; }
  void set_legs(std::vector<Presentation> legs) { legs_ = std::move(legs); }
  std::vector<Presentation> flat_legs() const {
    if (legs_.empty()) return {*this};
    return legs_;
  }

  const RewriteSystem& rewrite_system() const {
    auto c = cache();
    std::call_once(c->once, [&] { c->system = RewriteSystem(relations_, 2 * gens_.size()); });
    return c->system;
  }

  NormalForm normal_form(const FreeStarPoly& p, std::size_t budget = kDefaultBudget, bool trace = false) const {
    if (p.max_generator() > gens_.size()) throw UnknownSymbol("polynomial mentions an undeclared generator");
    return rewrite_system().reduce(canonical(p), budget, trace);
  }

  bool same_signature(const Presentation& o) const {
    if (gens_.size() != o.gens_.size()) return false;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      if (gens_[g].name != o.gens_[g].name || gens_[g].self_adjoint != o.gens_[g].self_adjoint) return false;
    return true;
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.same_signature(b) && a.relation_set() == b.relation_set();
  }

 private:
  struct Cache {
    std::once_flag once;
    RewriteSystem system;
  };
  std::shared_ptr<Cache> cache() const {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    if (!cache_) cache_ = std::make_shared<Cache>();
    return cache_;
  }

  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> index_;
  SelfAdjointMask mask_;
  std::vector<FreeStarPoly> relations_;
  std::vector<Presentation> legs_;
  mutable std::shared_ptr<Cache> cache_;
  std::shared_ptr<std::mutex> cache_mutex_ = std::make_shared<std::mutex>();
};

// Adds the adjoint of every relation not already present up to a scalar. Idempotent.
inline std::vector<FreeStarPoly> star_close(const std::vector<FreeStarPoly>& relations, const SelfAdjointMask& sa) {
  std::vector<FreeStarPoly> out;
  std::set<FreeStarPoly> seen;
  auto push = [&](const FreeStarPoly& q) {
    FreeStarPoly c = q.canonical(sa);
    if (c.is_zero()) return;
    if (seen.insert(c.monic()).second) out.push_back(c);
  };
  for (const auto& q : relations) push(q);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) push(out[i].adjoint(sa));
  return out;
}

inline Presentation star_close(const Presentation& p) {
  Presentation r;
  for (const auto& g : p.generators()) r.add_generator(g.name, g.self_adjoint, g.norm_bound);
  for (const auto& q : star_close(p.relations(), p.self_adjoint_mask())) r.add_relation(q);
  r.set_legs(p.legs());
  return r;
}

inline bool is_star_closed(const Presentation& p) {
  auto s = p.relation_set();
  for (const auto& q : p.relations())
    if (!s.count(p.adjoint(q).monic())) return false;
  return true;
}

// Adds [x, y] = 0 for every pair of letters (generators and adjoints) not already present.
inline Presentation abelianize(const Presentation& p) {
  Presentation r = p;
  r.set_legs({});
  auto have = p.relation_set();
  const auto letters = p.letters();
  for (std::size_t i = 0; i < letters.size(); ++i)
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      FreeStarPoly c = FreeStarPoly::word({letters[j], letters[i]}) - FreeStarPoly::word({letters[i], letters[j]});
      if (have.insert(c.monic()).second) r.add_relation(c);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Matrix-unit presentation of a finite-dimensional algebra.
//
// Generators e_(k,i,j) for i <= j (diagonal ones self-adjoint); e_(k,j,i) is the adjoint
// letter of e_(k,i,j). Names are 1-based: "e<k>" for 1x1 blocks, "e<k>_<i>_<j>" otherwise.
// Relations: all products e_a e_b = [structure constant] and sum of diagonal units = 1.

struct FdPresentation {
  FdAlgebra algebra;
  Presentation presentation;
  std::vector<Letter> basis_letter;  // matrix unit index -> letter

  FreeStarPoly element(const FdElement& x) const {
    FreeStarPoly p;
    for (std::size_t a = 0; a < algebra.dim(); ++a)
      if (!x[a].is_zero()) p.add_term(Word{basis_letter[a]}, x[a]);
    return p;
  }
};

inline std::string matrix_unit_name(const FdAlgebra& alg, std::size_t idx) {
  const auto& u = alg.unit(idx);
  if (alg.block_size(u.block) == 1) return "e" + std::to_string(u.block + 1);
  return "e" + std::to_string(u.block + 1) + "_" + std::to_string(u.row + 1) + "_" + std::to_string(u.col + 1);
}

inline FdPresentation present(const FdAlgebra& alg) {
  FdPresentation fp{alg, {}, std::vector<Letter>(alg.dim())};
  for (std::size_t a = 0; a < alg.dim(); ++a) {
    const auto& u = alg.unit(a);
    if (u.row <= u.col) fp.basis_letter[a] = make_letter(fp.presentation.add_generator(matrix_unit_name(alg, a), u.row == u.col));
  }
  for (std::size_t a = 0; a < alg.dim(); ++a) {
    const auto& u = alg.unit(a);
    if (u.row > u.col) fp.basis_letter[a] = fp.basis_letter[alg.adjoint_index(a)] ^ 1U;
  }
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = 0; b < alg.dim(); ++b) {
      FreeStarPoly q = FreeStarPoly::word({fp.basis_letter[a], fp.basis_letter[b]});
      if (auto c = alg.product_index(a, b)) q -= FreeStarPoly::letter(fp.basis_letter[*c]);
      fp.presentation.add_relation(q);
    }
  fp.presentation.add_relation(fp.element(FdElement::unit(alg)) - FreeStarPoly(1));
  return fp;
}

// ---------------------------------------------------------------------------
// Presented tensor product: legs flattened, generators renamed "L<leg>.<name>", relations of
// every leg, and commutation of letters from different legs (rewritten so lower legs come first).

inline Presentation tensor_presentation(const std::vector<Presentation>& factors) {
  std::vector<Presentation> legs;
  for (const auto& f : factors)
    for (auto& l : f.flat_legs()) legs.push_back(std::move(l));

  Presentation t;
  std::vector<std::size_t> offset;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    offset.push_back(t.generator_count());
    for (const auto& g : legs[i].generators())
      t.add_generator("L" + std::to_string(i + 1) + "." + g.name, g.self_adjoint, g.norm_bound);
  }
  auto shift = [](const FreeStarPoly& p, std::size_t off) {
    return p.substitute([&](Letter l) { return FreeStarPoly::letter(l + static_cast<Letter>(2 * off)); });
  };
  for (std::size_t i = 0; i < legs.size(); ++i)
    for (const auto& q : legs[i].relations()) t.add_relation(shift(q, offset[i]));
  for (std::size_t i = 0; i < legs.size(); ++i)
    for (std::size_t j = i + 1; j < legs.size(); ++j)
      for (Letter a : legs[i].letters())
        for (Letter b : legs[j].letters()) {
          Letter sa = a + static_cast<Letter>(2 * offset[i]);
          Letter sb = b + static_cast<Letter>(2 * offset[j]);
          t.add_relation(FreeStarPoly::word({sb, sa}) - FreeStarPoly::word({sa, sb}));
        }
  t.set_legs(legs.size() > 1 ? legs : std::vector<Presentation>{});
  return t;
}

// First generator index of each flattened leg inside a tensor presentation.
inline std::vector<std::size_t> leg_offsets(const Presentation& t) {
  std::vector<std::size_t> off;
  std::size_t o = 0;
  for (const auto& l : t.flat_legs()) {
    off.push_back(o);
    o += l.generator_count();
  }
  return off;
}

// Letter of a leg's generator inside the tensor presentation.
inline FreeStarPoly embed_leg(const Presentation& t, std::size_t leg, const FreeStarPoly& p) {
  const std::size_t off = leg_offsets(t).at(leg);
  return p.substitute([&](Letter l) { return FreeStarPoly::letter(l + static_cast<Letter>(2 * off)); });
}

// ---------------------------------------------------------------------------
// Presented direct sum: slot units s<i> (orthogonal projections summing to 1) followed by each
// slot's generators renamed "S<i>.<name>". Slot generators are absorbed by their own slot unit
// and killed by the others; slot relations have their constant term multiplied by the slot unit.

struct DirectSumPresentation {
  Presentation presentation;
  std::vector<std::size_t> slot_unit;    // generator index of s<i>
  std::vector<std::size_t> slot_offset;  // first generator index of slot i
};

inline DirectSumPresentation direct_sum_presentation(const std::vector<Presentation>& slots) {
  DirectSumPresentation ds;
  Presentation& p = ds.presentation;
  for (std::size_t i = 0; i < slots.size(); ++i) ds.slot_unit.push_back(p.add_generator("s" + std::to_string(i + 1), true));
  for (std::size_t i = 0; i < slots.size(); ++i) {
    ds.slot_offset.push_back(p.generator_count());
    for (const auto& g : slots[i].generators())
      p.add_generator("S" + std::to_string(i + 1) + "." + g.name, g.self_adjoint, g.norm_bound);
  }
  auto unit = [&](std::size_t i) { return FreeStarPoly::gen(ds.slot_unit[i]); };
  FreeStarPoly total = -FreeStarPoly(1);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    total += unit(i);
    p.add_relation(unit(i) * unit(i) - unit(i));
    for (std::size_t j = 0; j < slots.size(); ++j)
      if (i != j) p.add_relation(unit(i) * unit(j));
  }
  p.add_relation(total);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Letter shift = static_cast<Letter>(2 * ds.slot_offset[i]);
    for (Letter l : slots[i].letters()) {
      FreeStarPoly x = FreeStarPoly::letter(l + shift);
      for (std::size_t j = 0; j < slots.size(); ++j) {
        if (i == j) {
          p.add_relation(unit(j) * x - x);
          p.add_relation(x * unit(j) - x);
        } else {
          p.add_relation(unit(j) * x);
          p.add_relation(x * unit(j));
        }
      }
      for (std::size_t j = 0; j < slots.size(); ++j) {
        if (i == j) continue;
        for (Letter m : slots[j].letters()) {
          FreeStarPoly y = FreeStarPoly::letter(m + static_cast<Letter>(2 * ds.slot_offset[j]));
          p.add_relation(x * y);
        }
      }
    }
    for (const auto& q : slots[i].relations()) {
      FreeStarPoly h;
      for (const auto& [w, c] : q.terms()) {
        if (w.empty()) {
          h += c * unit(i);
        } else {
          Word v = w;
          for (auto& l : v) l += shift;
          h.add_term(v, c);
        }
      }
      p.add_relation(h);
    }
  }
  return ds;
}

}  // namespace qmor
