#pragma once

// Tri-state equality in a presented algebra: equal (with a rewrite trace), distinct (with a
// separating character or matrix representation), or unknown.

#include "qmor/characters.hpp"
#include "qmor/rep_search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmor {

enum class Verdict { equal, distinct, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::distinct: return "distinct";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

struct EqualityVerdict {
  Verdict status = Verdict::unknown;
  std::size_t steps = 0;
  bool exhausted = false;
  FreeStarPoly residue;            // normal form of p - q as far as rewriting got
  std::vector<RewriteStep> trace;  // rewrite trace (kept for `equal`)
  std::optional<Character> character;
  std::optional<std::size_t> model;  // index into the supplied models
  double margin = 0;               // ||rho(p) - rho(q)||_F for a model certificate
};

struct CertificateSources {
  bool characters = true;
  std::vector<MatrixModel> models;
};

// A model separates p and q only if the gap beats its own residual by three orders of magnitude.
inline constexpr double kCertificateMargin = 1e3;

inline EqualityVerdict presentation_equal(const FreeStarPoly& p, const FreeStarPoly& q, const Presentation& pres,
                                          std::size_t budget = kDefaultBudget,
                                          const CertificateSources& certs = {}) {
  EqualityVerdict v;
  const FreeStarPoly diff = pres.canonical(p - q);
  NormalForm nf = pres.normal_form(diff, budget, true);
  v.steps = nf.steps;
  v.exhausted = nf.exhausted;
  v.residue = nf.value;
  if (nf.value.is_zero()) {
    v.status = Verdict::equal;
    v.trace = std::move(nf.trace);
    return v;
  }
  if (certs.characters) {
    try {
      for_each_character(pres, [&](const Character& chi) {
        if (!evaluate(chi, diff).is_zero()) {
          v.character = chi;
          return false;
        }
        return true;
      }, budget);
    } catch (const UnsupportedSpectrum&) {
    }
    if (v.character) {
      v.status = Verdict::distinct;
      return v;
    }
  }
  for (std::size_t k = 0; k < certs.models.size(); ++k) {
    const auto& m = certs.models[k];
    if (m.matrices.size() != pres.generator_count()) continue;
    const double res = relation_residual(m, pres);
    const double gap = evaluate(m, diff).norm();
    if (gap > kCertificateMargin * res && gap > 1e-9) {
      v.status = Verdict::distinct;
      v.model = k;
      v.margin = gap;
      return v;
    }
  }
  return v;
}

// Re-checks a verdict from its payload alone.
inline bool check_verdict(const EqualityVerdict& v, const FreeStarPoly& p, const FreeStarPoly& q,
                          const Presentation& pres, const CertificateSources& certs = {}) {
  const FreeStarPoly diff = pres.canonical(p - q);
  switch (v.status) {
    case Verdict::equal: {
      NormalForm nf;
      nf.value = FreeStarPoly{};
      nf.trace = v.trace;
      return verify_trace(pres.rewrite_system(), diff, nf);
    }
    case Verdict::distinct: {
      if (v.character) {
        for (const auto& r : pres.relations())
          if (!evaluate(*v.character, r).is_zero()) return false;
        return !evaluate(*v.character, diff).is_zero();
      }
      if (v.model && *v.model < certs.models.size()) {
        const auto& m = certs.models[*v.model];
        const double res = relation_residual(m, pres);
        const double gap = evaluate(m, diff).norm();
        return gap > kCertificateMargin * res && gap > 1e-9;
      }
      return false;
    }
    case Verdict::unknown: return true;
  }
  return false;
}

}  // namespace qmor
