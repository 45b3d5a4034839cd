#pragma once

// Bounded noncommutative rewriting modulo a set of relations.
//
// Each relation q = 0 is oriented by its degree-lexicographic leading word:
//   lead(q) -> lead(q) - q / lc(q).
// Rewriting replaces the first occurrence of a rule's left side inside the largest reducible
// term. Every application is recorded as (c, u, rule, v), meaning c * u * (lhs - rhs) * v was
// subtracted, so p - normal_form(p) is an explicit two-sided ideal combination of rule
// polynomials. Rules produced by the optional critical-pair pass carry their own derivation
// in terms of earlier rules.

#include "qmor/free_star.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qmor {

struct RewriteStep {
  GaussRat coeff;
  Word left;
  std::size_t rule = 0;
  Word right;
};

struct Rule {
  Word lhs;
  FreeStarPoly rhs;
  // Original relation index, or nullopt for rules found by completion.
  std::optional<std::size_t> relation;
  // For completion rules: lhs - rhs == sum of coeff * left * rule_poly(rule) * right.
  std::vector<RewriteStep> derivation;

  FreeStarPoly poly() const { return FreeStarPoly::word(lhs) - rhs; }
};

struct NormalForm {
  FreeStarPoly value;
  std::size_t steps = 0;
  bool exhausted = false;
  std::vector<RewriteStep> trace;
};

struct CompletionOptions {
  std::size_t max_new_rules = 200;
  std::size_t max_degree = 6;
  std::size_t reduction_budget = 100000;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;

  RewriteSystem(const std::vector<FreeStarPoly>& relations, std::size_t letter_count) : letters_(letter_count) {
    by_first_.resize(letter_count);
    for (std::size_t i = 0; i < relations.size(); ++i) {
      if (relations[i].is_zero()) continue;
      FreeStarPoly q = relations[i].monic();
      Rule r;
      r.lhs = q.leading_word();
      r.rhs = FreeStarPoly::word(r.lhs) - q;
      r.relation = i;
      add_rule(std::move(r));
    }
  }

  const std::vector<Rule>& rules() const { return rules_; }
  bool degenerate() const { return degenerate_; }

  NormalForm reduce(const FreeStarPoly& p, std::size_t budget, bool record_trace = false) const {
    NormalForm nf;
    nf.value = p;
    if (degenerate_) {
      // 1 -> 0 kills everything: p = p * 1.
      if (record_trace)
        for (const auto& [w, c] : p.terms()) nf.trace.push_back({c, w, empty_rule_, {}});
      nf.value = FreeStarPoly{};
      nf.steps = p.size();
      return nf;
    }
    auto& terms = nf.value.mutable_terms();
    // Rewrites only produce smaller words, so everything above the cursor stays irreducible.
    auto it = terms.empty() ? terms.end() : std::prev(terms.end());
    while (it != terms.end()) {
      const Word w = it->first;
      auto hit = find_match(w);
      if (!hit) {
        if (it == terms.begin()) break;
        --it;
        continue;
      }
      if (nf.steps == budget) {
        nf.exhausted = true;
        break;
      }
      const auto [pos, ri] = *hit;
      const Rule& rule = rules_[ri];
      const GaussRat c = it->second;
      Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
      Word right(w.begin() + static_cast<std::ptrdiff_t>(pos + rule.lhs.size()), w.end());
      terms.erase(it);
      for (const auto& [rw, rc] : rule.rhs.terms()) nf.value.add_term(concat(concat(left, rw), right), c * rc);
      if (record_trace) nf.trace.push_back({c, std::move(left), ri, std::move(right)});
      ++nf.steps;
      it = terms.lower_bound(w);
      if (it == terms.begin()) break;
      --it;
    }
    return nf;
  }

  // Bounded Buchberger-style pass over overlaps and inclusions of left sides.
  // Returns the number of rules added.
  std::size_t complete(const CompletionOptions& opt) {
    std::size_t added = 0;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        for (const auto& [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
          for (auto& s : critical_pairs(a, b, opt.max_degree)) {
            if (added >= opt.max_new_rules) return added;
            NormalForm nf = reduce(s.value, opt.reduction_budget, true);
            if (nf.value.is_zero() || nf.exhausted) continue;
            Rule r;
            const GaussRat inv = GaussRat(1) / nf.value.leading_coeff();
            for (auto& st : s.derivation) r.derivation.push_back({st.coeff * inv, st.left, st.rule, st.right});
            for (auto& st : nf.trace) r.derivation.push_back({-st.coeff * inv, st.left, st.rule, st.right});
            FreeStarPoly q = nf.value.monic();
            r.lhs = q.leading_word();
            r.rhs = FreeStarPoly::word(r.lhs) - q;
            add_rule(std::move(r));
            ++added;
          }
        }
      }
    }
    return added;
  }

 private:
  struct Critical {
    FreeStarPoly value;
    std::vector<RewriteStep> derivation;
  };

  void add_rule(Rule r) {
    if (r.lhs.empty()) {
      degenerate_ = true;
      empty_rule_ = rules_.size();
    } else {
      for (Letter l : r.lhs)
        if (l >= letters_) {
          letters_ = l + 1;
          by_first_.resize(letters_);
        }
      by_first_[r.lhs.front()].push_back(rules_.size());
    }
    rules_.push_back(std::move(r));
  }

  std::optional<std::pair<std::size_t, std::size_t>> find_match(const Word& w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      if (w[pos] >= by_first_.size()) continue;
      for (std::size_t ri : by_first_[w[pos]]) {
        const Word& lhs = rules_[ri].lhs;
        if (pos + lhs.size() <= w.size() && std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)))
          return std::pair{pos, ri};
      }
    }
    return std::nullopt;
  }

  std::vector<Critical> critical_pairs(std::size_t a, std::size_t b, std::size_t max_degree) const {
    std::vector<Critical> out;
    const Word& la = rules_[a].lhs;
    const Word& lb = rules_[b].lhs;
    const FreeStarPoly pa = rules_[a].poly();
    const FreeStarPoly pb = rules_[b].poly();
    // Overlap: la = X Y, lb = Y Z with Y nonempty and proper.
    for (std::size_t k = 1; k < la.size() && k < lb.size(); ++k) {
      if (!std::equal(la.end() - static_cast<std::ptrdiff_t>(k), la.end(), lb.begin())) continue;
      if (la.size() + lb.size() - k > max_degree) continue;
      Word x(la.begin(), la.end() - static_cast<std::ptrdiff_t>(k));
      Word z(lb.begin() + static_cast<std::ptrdiff_t>(k), lb.end());
      Critical c;
      c.value = pa * FreeStarPoly::word(z) - FreeStarPoly::word(x) * pb;
      c.derivation = {{1, {}, a, z}, {-1, x, b, {}}};
      out.push_back(std::move(c));
    }
    // Inclusion: la = X lb Z.
    if (a != b && lb.size() <= la.size()) {
      for (std::size_t pos = 0; pos + lb.size() <= la.size(); ++pos) {
        if (!std::equal(lb.begin(), lb.end(), la.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
        Word x(la.begin(), la.begin() + static_cast<std::ptrdiff_t>(pos));
        Word z(la.begin() + static_cast<std::ptrdiff_t>(pos + lb.size()), la.end());
        Critical c;
        c.value = pa - FreeStarPoly::word(x) * pb * FreeStarPoly::word(z);
        c.derivation = {{1, {}, a, {}}, {-1, x, b, z}};
        out.push_back(std::move(c));
        break;
      }
    }
    return out;
  }

  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_first_;
  std::size_t letters_ = 0;
  bool degenerate_ = false;
  std::size_t empty_rule_ = 0;
};

// Sum of coeff * left * rule_poly * right over a trace.
inline FreeStarPoly expand_trace(const RewriteSystem& rs, const std::vector<RewriteStep>& trace) {
  FreeStarPoly sum;
  for (const auto& st : trace)
    sum += st.coeff * (FreeStarPoly::word(st.left) * rs.rules().at(st.rule).poly() * FreeStarPoly::word(st.right));
  return sum;
}

// p - nf.value == expanded trace, and every completion rule used is justified by its derivation.
inline bool verify_trace(const RewriteSystem& rs, const FreeStarPoly& p, const NormalForm& nf) {
  if (p - nf.value != expand_trace(rs, nf.trace)) return false;
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    const Rule& r = rs.rules()[i];
    if (r.relation) continue;
    for (const auto& st : r.derivation)
      if (st.rule >= i) return false;
    if (r.poly() != expand_trace(rs, r.derivation)) return false;
  }
  return true;
}

}  // namespace qmor
