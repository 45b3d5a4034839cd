#pragma once

// Random finite-dimensional algebras, unital *-homomorphisms and commuting squares
// for property checks. Every generated hom is exact: block embeddings with
// multiplicity, conjugated by a random monomial unitary (entries in {1, i, -1, -i}).

#include "qmor/fd_algebra.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace qmor {

// Algebras of dimension <= 4: C, C^2, C^3, C^4, M_2.
inline FdAlgebra random_small_algebra(std::mt19937_64& rng) {
  static const std::vector<std::vector<std::size_t>> shapes = {{1}, {1, 1}, {1, 1, 1}, {1, 1, 1, 1}, {2}};
  std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
  return FdAlgebra(shapes[pick(rng)]);
}

namespace detail {

inline void multiplicity_solutions(const std::vector<std::size_t>& sizes, std::size_t k, std::size_t remaining,
                                   std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (k == sizes.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (std::size_t c = 0; c * sizes[k] <= remaining; ++c) {
    cur[k] = c;
    multiplicity_solutions(sizes, k + 1, remaining - c * sizes[k], cur, out);
  }
  cur[k] = 0;
}

}  // namespace detail

// A random unital *-hom source -> target, or nullopt if none exists.
inline std::optional<StarHom> random_star_hom(const FdAlgebra& source, const FdAlgebra& target,
                                              std::mt19937_64& rng) {
  std::vector<FdElement> images(source.dim(), FdElement(target));
  const GaussRat phases[4] = {1, GaussRat::imag_unit(), -1, -GaussRat::imag_unit()};

  for (std::size_t l = 0; l < target.block_count(); ++l) {
    const std::size_t n = target.block_size(l);
    std::vector<std::vector<std::size_t>> sols;
    std::vector<std::size_t> cur(source.block_count());
    detail::multiplicity_solutions(source.blocks(), 0, n, cur, sols);
    if (sols.empty()) return std::nullopt;
    const auto& mult = sols[std::uniform_int_distribution<std::size_t>(0, sols.size() - 1)(rng)];

    std::vector<std::size_t> copies;
    for (std::size_t k = 0; k < mult.size(); ++k) copies.insert(copies.end(), mult[k], k);
    std::shuffle(copies.begin(), copies.end(), rng);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<GaussRat> phase(n);
    std::uniform_int_distribution<int> ph(0, 3);
    for (auto& p : phase) p = phases[ph(rng)];

    // U E_ab U* = phase_a conj(phase_b) E_{perm a, perm b}
    std::size_t offset = 0;
    for (std::size_t k : copies) {
      const std::size_t m = source.block_size(k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t a = offset + i, b = offset + j;
          images[source.index(k, i, j)][target.index(l, perm[a], perm[b])] += phase[a] * phase[b].conj();
        }
      offset += m;
    }
  }
  return StarHom::unchecked(source, target, std::move(images));
}

inline Functional random_functional(const FdAlgebra& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-3, 3);
  std::vector<GaussRat> coeffs;
  for (std::size_t a = 0; a < alg.dim(); ++a) coeffs.emplace_back(mpq_class(c(rng)), mpq_class(c(rng)));
  return Functional(alg, std::move(coeffs));
}

inline FdElement random_element(const FdAlgebra& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-3, 3);
  FdElement x(alg);
  for (std::size_t a = 0; a < alg.dim(); ++a) x[a] = GaussRat(mpq_class(c(rng)), mpq_class(c(rng)));
  return x;
}

// Commuting square built as Phi = Phi0 o Lambda, Phi' = (id (x) Gamma) o Phi0, so that
// (id (x) Gamma) Phi = Phi' Lambda holds by construction.
struct CommutingSquare {
  StarHom lambda;  // B -> B'
  StarHom gamma;   // A -> A'
  StarHom phi;     // B -> C (x) A
  StarHom phi2;    // B' -> C (x) A'
  TensorProduct ca;
  TensorProduct ca2;
};

inline CommutingSquare random_commuting_square(std::mt19937_64& rng) {
  for (;;) {
    FdAlgebra b = random_small_algebra(rng), b2 = random_small_algebra(rng);
    FdAlgebra c = random_small_algebra(rng), a = random_small_algebra(rng), a2 = random_small_algebra(rng);
    TensorProduct ca = tensor(c, a), ca2 = tensor(c, a2);
    auto lambda = random_star_hom(b, b2, rng);
    auto phi0 = random_star_hom(b2, ca.algebra, rng);
    auto gamma = random_star_hom(a, a2, rng);
    if (!lambda || !phi0 || !gamma) continue;
    StarHom id_gamma = tensor_hom(identity_hom(c), *gamma, ca, ca2);
    return {*lambda, *gamma, compose(*phi0, *lambda), compose(id_gamma, *phi0), ca, ca2};
  }
}

}  // namespace qmor
