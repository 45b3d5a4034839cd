#pragma once

// Finite-dimensional C*-algebras as multi-matrix algebras M_{n_1} + ... + M_{n_r}.
//
// Basis: matrix units e_(k,i,j), 0-based internally, ordered lexicographically by
// (block, row, col). Linear index of e_(k,i,j) is offset(k) + i * n_k + j.

#include "qmor/gaussian_rational.hpp"

#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmor {

struct InvalidShape : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AlgebraMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnitIndex {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const UnitIndex&, const UnitIndex&) = default;
};

class FdAlgebra {
 public:
  FdAlgebra() : FdAlgebra(std::vector<std::size_t>{1}) {}

  explicit FdAlgebra(std::vector<std::size_t> blocks) {
    if (blocks.empty()) throw InvalidShape("algebra needs at least one block");
    auto d = std::make_shared<Data>();
    d->blocks = std::move(blocks);
    for (std::size_t n : d->blocks) {
      if (n == 0) throw InvalidShape("block sizes must be positive");
      d->offsets.push_back(d->dim);
      d->dim += n * n;
    }
    for (std::size_t k = 0; k < d->blocks.size(); ++k)
      for (std::size_t i = 0; i < d->blocks[k]; ++i)
        for (std::size_t j = 0; j < d->blocks[k]; ++j) d->units.push_back({k, i, j});
    data_ = std::move(d);
  }

  const std::vector<std::size_t>& blocks() const { return data_->blocks; }
  std::size_t block_count() const { return data_->blocks.size(); }
  std::size_t block_size(std::size_t k) const { return data_->blocks.at(k); }
  std::size_t block_offset(std::size_t k) const { return data_->offsets.at(k); }
  std::size_t dim() const { return data_->dim; }

  std::size_t index(std::size_t k, std::size_t i, std::size_t j) const {
    const std::size_t n = block_size(k);
    if (i >= n || j >= n) throw std::out_of_range("matrix unit index out of range");
    return data_->offsets[k] + i * n + j;
  }
  std::size_t index(const UnitIndex& u) const { return index(u.block, u.row, u.col); }
  const UnitIndex& unit(std::size_t idx) const { return data_->units.at(idx); }

  std::size_t adjoint_index(std::size_t idx) const {
    const auto& u = unit(idx);
    return index(u.block, u.col, u.row);
  }
  bool is_diagonal(std::size_t idx) const {
    const auto& u = unit(idx);
    return u.row == u.col;
  }

  // e_a e_b is either zero or a single matrix unit.
  std::optional<std::size_t> product_index(std::size_t a, std::size_t b) const {
    const auto& ua = unit(a);
    const auto& ub = unit(b);
    if (ua.block != ub.block || ua.col != ub.row) return std::nullopt;
    return index(ua.block, ua.row, ub.col);
  }

  bool is_commutative() const {
    for (std::size_t n : blocks())
      if (n != 1) return false;
    return true;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t k = 0; k < blocks().size(); ++k) {
      if (k) s += ",";
      s += std::to_string(blocks()[k]);
    }
    return s + "]";
  }

  friend bool operator==(const FdAlgebra& a, const FdAlgebra& b) {
    return a.data_ == b.data_ || a.blocks() == b.blocks();
  }
  friend std::ostream& operator<<(std::ostream& os, const FdAlgebra& a) { return os << a.str(); }

 private:
  struct Data {
    std::vector<std::size_t> blocks;
    std::vector<std::size_t> offsets;
    std::vector<UnitIndex> units;
    std::size_t dim = 0;
  };
  std::shared_ptr<const Data> data_;
};

inline FdAlgebra make_algebra(const std::vector<long>& blocks) {
  std::vector<std::size_t> b;
  for (long n : blocks) {
    if (n <= 0) throw InvalidShape("block sizes must be positive");
    b.push_back(static_cast<std::size_t>(n));
  }
  return FdAlgebra(std::move(b));
}

// C^n: n one-dimensional blocks.
inline FdAlgebra commutative_algebra(std::size_t n) {
  return FdAlgebra(std::vector<std::size_t>(n, 1));
}

class FdElement {
 public:
  FdElement() = default;
  explicit FdElement(FdAlgebra alg) : alg_(std::move(alg)), coords_(alg_.dim()) {}
  FdElement(FdAlgebra alg, std::vector<GaussRat> coords) : alg_(std::move(alg)), coords_(std::move(coords)) {
    if (coords_.size() != alg_.dim()) throw InvalidShape("coordinate vector has wrong length");
  }

  static FdElement basis(const FdAlgebra& alg, std::size_t idx) {
    FdElement e(alg);
    e.coords_.at(idx) = 1;
    return e;
  }
  static FdElement unit(const FdAlgebra& alg) {
    FdElement e(alg);
    for (std::size_t k = 0; k < alg.block_count(); ++k)
      for (std::size_t i = 0; i < alg.block_size(k); ++i) e.coords_[alg.index(k, i, i)] = 1;
    return e;
  }

  const FdAlgebra& algebra() const { return alg_; }
  const std::vector<GaussRat>& coords() const { return coords_; }
  const GaussRat& operator[](std::size_t idx) const { return coords_.at(idx); }
  GaussRat& operator[](std::size_t idx) { return coords_.at(idx); }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  FdElement adjoint() const {
    FdElement r(alg_);
    for (std::size_t a = 0; a < coords_.size(); ++a) r.coords_[alg_.adjoint_index(a)] = coords_[a].conj();
    return r;
  }

  FdElement& operator+=(const FdElement& o) {
    same(o);
    for (std::size_t a = 0; a < coords_.size(); ++a) coords_[a] += o.coords_[a];
    return *this;
  }
  FdElement& operator-=(const FdElement& o) {
    same(o);
    for (std::size_t a = 0; a < coords_.size(); ++a) coords_[a] -= o.coords_[a];
    return *this;
  }
  FdElement& operator*=(const GaussRat& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend FdElement operator+(FdElement a, const FdElement& b) { return a += b; }
  friend FdElement operator-(FdElement a, const FdElement& b) { return a -= b; }
  friend FdElement operator*(GaussRat s, FdElement a) { return a *= s; }

  friend FdElement operator*(const FdElement& x, const FdElement& y) {
    x.same(y);
    const FdAlgebra& A = x.alg_;
    FdElement r(A);
    // Blockwise matrix product; only pairs sharing a block and an inner index contribute.
    for (std::size_t k = 0; k < A.block_count(); ++k) {
      const std::size_t n = A.block_size(k);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) {
          const GaussRat& a = x.coords_[A.index(k, i, m)];
          if (a.is_zero()) continue;
          for (std::size_t j = 0; j < n; ++j) {
            const GaussRat& b = y.coords_[A.index(k, m, j)];
            if (!b.is_zero()) r.coords_[A.index(k, i, j)] += a * b;
          }
        }
    }
    return r;
  }

  friend bool operator==(const FdElement& a, const FdElement& b) {
    return a.alg_ == b.alg_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const FdElement& a, const FdElement& b) { return !(a == b); }

  std::string str() const {
    std::string s;
    for (std::size_t a = 0; a < coords_.size(); ++a) {
      if (coords_[a].is_zero()) continue;
      const auto& u = alg_.unit(a);
      if (!s.empty()) s += " + ";
      if (!coords_[a].is_one()) s += coords_[a].str() + " ";
      s += "e[" + std::to_string(u.block + 1) + "," + std::to_string(u.row + 1) + "," +
           std::to_string(u.col + 1) + "]";
    }
    return s.empty() ? "0" : s;
  }

 private:
  void same(const FdElement& o) const {
    if (!(alg_ == o.alg_)) throw AlgebraMismatch("elements live in different algebras");
  }

  FdAlgebra alg_;
  std::vector<GaussRat> coords_;
};

// Linear functional: value on x is sum over matrix units of coeffs[a] * x[a].
class Functional {
 public:
  explicit Functional(FdAlgebra alg) : alg_(std::move(alg)), coeffs_(alg_.dim()) {}
  Functional(FdAlgebra alg, std::vector<GaussRat> coeffs) : alg_(std::move(alg)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != alg_.dim()) throw InvalidShape("functional has wrong length");
  }

  static Functional dual(const FdAlgebra& alg, std::size_t idx) {
    Functional w(alg);
    w.coeffs_.at(idx) = 1;
    return w;
  }
  // Unnormalised trace: sum of the diagonal coordinates.
  static Functional trace(const FdAlgebra& alg) {
    Functional w(alg);
    for (std::size_t a = 0; a < alg.dim(); ++a)
      if (alg.is_diagonal(a)) w.coeffs_[a] = 1;
    return w;
  }

  const FdAlgebra& algebra() const { return alg_; }
  const std::vector<GaussRat>& coeffs() const { return coeffs_; }
  const GaussRat& operator[](std::size_t idx) const { return coeffs_.at(idx); }

  GaussRat operator()(const FdElement& x) const {
    if (!(x.algebra() == alg_)) throw AlgebraMismatch("functional applied to element of another algebra");
    GaussRat v;
    for (std::size_t a = 0; a < coeffs_.size(); ++a)
      if (!coeffs_[a].is_zero() && !x[a].is_zero()) v += coeffs_[a] * x[a];
    return v;
  }

 private:
  FdAlgebra alg_;
  std::vector<GaussRat> coeffs_;
};

// Algebraic tensor product L (x) R together with the bijection (a, b) <-> matrix unit.
// Block (k, l) comes at position k * |blocks(R)| + l and has size n_k * m_l.
struct TensorProduct {
  FdAlgebra left;
  FdAlgebra right;
  FdAlgebra algebra;

  std::size_t index(std::size_t a, std::size_t b) const {
    const auto& ua = left.unit(a);
    const auto& ub = right.unit(b);
    const std::size_t m = right.block_size(ub.block);
    return algebra.index(ua.block * right.block_count() + ub.block, ua.row * m + ub.row, ua.col * m + ub.col);
  }

  std::pair<std::size_t, std::size_t> split(std::size_t idx) const {
    const auto& u = algebra.unit(idx);
    const std::size_t k = u.block / right.block_count();
    const std::size_t l = u.block % right.block_count();
    const std::size_t m = right.block_size(l);
    return {left.index(k, u.row / m, u.col / m), right.index(l, u.row % m, u.col % m)};
  }

  FdElement elementary(const FdElement& x, const FdElement& y) const {
    FdElement r(algebra);
    for (std::size_t a = 0; a < left.dim(); ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < right.dim(); ++b)
        if (!y[b].is_zero()) r[index(a, b)] += x[a] * y[b];
    }
    return r;
  }
};

inline TensorProduct tensor(const FdAlgebra& a, const FdAlgebra& b) {
  std::vector<std::size_t> blocks;
  for (std::size_t n : a.blocks())
    for (std::size_t m : b.blocks()) blocks.push_back(n * m);
  return {a, b, FdAlgebra(std::move(blocks))};
}

inline FdAlgebra direct_sum(const FdAlgebra& a, const FdAlgebra& b) {
  std::vector<std::size_t> blocks = a.blocks();
  blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
  return FdAlgebra(std::move(blocks));
}

// n-fold direct sum that remembers which blocks came from which summand.
struct DirectSum {
  std::vector<FdAlgebra> summands;
  FdAlgebra algebra;
  std::vector<std::size_t> first_block;  // per summand

  std::size_t embed(std::size_t slot, std::size_t idx) const {
    const auto& u = summands.at(slot).unit(idx);
    return algebra.index(first_block[slot] + u.block, u.row, u.col);
  }
  // Summand owning a matrix unit of the sum, and the unit's index inside that summand.
  std::pair<std::size_t, std::size_t> locate(std::size_t idx) const {
    const auto& u = algebra.unit(idx);
    std::size_t slot = 0;
    while (slot + 1 < summands.size() && first_block[slot + 1] <= u.block) ++slot;
    return {slot, summands[slot].index(u.block - first_block[slot], u.row, u.col)};
  }
};

inline DirectSum direct_sum(const std::vector<FdAlgebra>& parts) {
  if (parts.empty()) throw InvalidShape("direct sum of nothing");
  DirectSum s{parts, parts.front(), {}};
  std::vector<std::size_t> blocks;
  for (const auto& p : parts) {
    s.first_block.push_back(blocks.size());
    blocks.insert(blocks.end(), p.blocks().begin(), p.blocks().end());
  }
  s.algebra = FdAlgebra(std::move(blocks));
  return s;
}

struct HomViolation : std::invalid_argument {
  enum class Kind { wrong_arity, not_unital, not_multiplicative, not_star_preserving };
  HomViolation(Kind k, std::size_t a, std::size_t b, const std::string& what)
      : std::invalid_argument(what), kind(k), first(a), second(b) {}
  Kind kind;
  std::size_t first;   // witnessing basis pair (source indices)
  std::size_t second;
};

// Unital *-homomorphism between finite-dimensional algebras, stored on matrix units.
class StarHom {
 public:
  const FdAlgebra& source() const { return source_; }
  const FdAlgebra& target() const { return target_; }
  const std::vector<FdElement>& images() const { return images_; }
  const FdElement& image(std::size_t idx) const { return images_.at(idx); }

  FdElement operator()(const FdElement& x) const {
    if (!(x.algebra() == source_)) throw AlgebraMismatch("hom applied outside its source");
    FdElement r(target_);
    for (std::size_t a = 0; a < source_.dim(); ++a)
      if (!x[a].is_zero()) r += x[a] * images_[a];
    return r;
  }

  // Matrix of the underlying linear map, target-major: m[b][a] = coefficient of e_b in f(e_a).
  std::vector<std::vector<GaussRat>> matrix() const {
    std::vector<std::vector<GaussRat>> m(target_.dim(), std::vector<GaussRat>(source_.dim()));
    for (std::size_t a = 0; a < source_.dim(); ++a)
      for (std::size_t b = 0; b < target_.dim(); ++b) m[b][a] = images_[a][b];
    return m;
  }

  friend bool operator==(const StarHom& f, const StarHom& g) {
    return f.source_ == g.source_ && f.target_ == g.target_ && f.images_ == g.images_;
  }

  // Builds without verification; make_hom is the checked entry point.
  static StarHom unchecked(FdAlgebra source, FdAlgebra target, std::vector<FdElement> images) {
    StarHom h;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.images_ = std::move(images);
    return h;
  }

 private:
  FdAlgebra source_;
  FdAlgebra target_;
  std::vector<FdElement> images_;
};

// Verifies unitality, multiplicativity and *-preservation on all basis pairs.
// Throws HomViolation naming the first failing pair.
inline StarHom make_hom(const FdAlgebra& source, const FdAlgebra& target, std::vector<FdElement> images) {
  using K = HomViolation::Kind;
  if (images.size() != source.dim())
    throw HomViolation(K::wrong_arity, images.size(), source.dim(), "need one image per source matrix unit");
  for (const auto& x : images)
    if (!(x.algebra() == target)) throw AlgebraMismatch("image does not live in the target algebra");

  StarHom h = StarHom::unchecked(source, target, std::move(images));
  if (h(FdElement::unit(source)) != FdElement::unit(target))
    throw HomViolation(K::not_unital, 0, 0, "image of the unit is not the unit");
  for (std::size_t a = 0; a < source.dim(); ++a) {
    if (h.image(source.adjoint_index(a)) != h.image(a).adjoint())
      throw HomViolation(K::not_star_preserving, a, source.adjoint_index(a), "f(e*) != f(e)*");
    for (std::size_t b = 0; b < source.dim(); ++b) {
      auto p = source.product_index(a, b);
      FdElement lhs = p ? h.image(*p) : FdElement(target);
      if (lhs != h.image(a) * h.image(b))
        throw HomViolation(K::not_multiplicative, a, b, "f(e_a e_b) != f(e_a) f(e_b)");
    }
  }
  return h;
}

inline StarHom identity_hom(const FdAlgebra& a) {
  std::vector<FdElement> im;
  for (std::size_t i = 0; i < a.dim(); ++i) im.push_back(FdElement::basis(a, i));
  return StarHom::unchecked(a, a, std::move(im));
}

// g o f
inline StarHom compose(const StarHom& g, const StarHom& f) {
  if (!(f.target() == g.source())) throw AlgebraMismatch("cannot compose: middle algebras differ");
  std::vector<FdElement> im;
  for (const auto& x : f.images()) im.push_back(g(x));
  return StarHom::unchecked(f.source(), g.target(), std::move(im));
}

// f (x) g between tensor products.
inline StarHom tensor_hom(const StarHom& f, const StarHom& g, const TensorProduct& src, const TensorProduct& dst) {
  if (!(src.left == f.source() && src.right == g.source() && dst.left == f.target() && dst.right == g.target()))
    throw AlgebraMismatch("tensor_hom: factors do not match");
  std::vector<FdElement> im(src.algebra.dim());
  for (std::size_t idx = 0; idx < src.algebra.dim(); ++idx) {
    auto [a, b] = src.split(idx);
    im[idx] = dst.elementary(f.image(a), g.image(b));
  }
  return StarHom::unchecked(src.algebra, dst.algebra, std::move(im));
}

// Slice map (w (x) id): L (x) R -> R.
inline FdElement slice(const Functional& w, const TensorProduct& t, const FdElement& x) {
  if (!(w.algebra() == t.left)) throw AlgebraMismatch("functional does not act on the left tensor leg");
  if (!(x.algebra() == t.algebra)) throw AlgebraMismatch("element is not in the tensor algebra");
  FdElement r(t.right);
  for (std::size_t idx = 0; idx < t.algebra.dim(); ++idx) {
    if (x[idx].is_zero()) continue;
    auto [a, b] = t.split(idx);
    if (!w[a].is_zero()) r[b] += w[a] * x[idx];
  }
  return r;
}

struct SquareNotCommuting : std::logic_error {
  explicit SquareNotCommuting(std::size_t b)
      : std::logic_error("(id (x) Gamma) Phi != Phi' Lambda on basis element " + std::to_string(b)), basis(b) {}
  std::size_t basis;
};

// Square
//      B  --Phi-->  C (x) A
//   Lambda|            | id (x) Gamma
//      B' --Phi'--> C (x) A'
// True iff the square commutes on every matrix unit of B.
inline bool square_commutes(const StarHom& lambda, const StarHom& gamma, const StarHom& phi, const TensorProduct& ca,
                            const StarHom& phi2, const TensorProduct& ca2) {
  if (!(phi.target() == ca.algebra && phi2.target() == ca2.algebra && ca.left == ca2.left &&
        lambda.source() == phi.source() && lambda.target() == phi2.source() && gamma.source() == ca.right &&
        gamma.target() == ca2.right))
    throw AlgebraMismatch("square shapes do not line up");
  StarHom id_gamma = tensor_hom(identity_hom(ca.left), gamma, ca, ca2);
  for (std::size_t b = 0; b < phi.source().dim(); ++b)
    if (id_gamma(phi.image(b)) != phi2(lambda.image(b))) return false;
  return true;
}

// Gamma (w (x) id) Phi(b) == (w (x) id) Phi' Lambda(b) for all basis b. The square must commute;
// SquareNotCommuting is thrown otherwise.
inline bool check_slice_identity(const StarHom& lambda, const StarHom& gamma, const StarHom& phi,
                                 const TensorProduct& ca, const StarHom& phi2, const TensorProduct& ca2,
                                 const Functional& w) {
  StarHom id_gamma = tensor_hom(identity_hom(ca.left), gamma, ca, ca2);
  for (std::size_t b = 0; b < phi.source().dim(); ++b)
    if (id_gamma(phi.image(b)) != phi2(lambda.image(b))) throw SquareNotCommuting(b);
  for (std::size_t b = 0; b < phi.source().dim(); ++b) {
    FdElement lhs = gamma(slice(w, ca, phi.image(b)));
    FdElement rhs = slice(w, ca2, phi2(lambda.image(b)));
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace qmor
