#pragma once

// Numerical search for d-dimensional matrix representations of a presentation.
//
// Minimises L = sum_k ||r_k(X)||_F^2 over generator matrices by projected gradient descent
// with a cosine-decayed step and seeded random restarts. Self-adjoint idempotent generators
// are kept on the set of orthogonal projections (spectral thresholding at 1/2 after every
// step); other self-adjoint generators are kept Hermitian.
//
// Floating point stays inside this header. Symbolic code only consumes MatrixModel as a
// distinctness certificate.

#include "qmor/presentation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <istream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qmor {

using CMatrix = Eigen::MatrixXcd;

struct MatrixModel {
  std::size_t dimension = 0;
  std::vector<std::string> names;
  std::vector<bool> self_adjoint;
  std::vector<CMatrix> matrices;  // one per generator
  double residual = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  std::size_t restart = 0;
  std::size_t iterations = 0;
  std::vector<double> loss_trace;  // loss sampled every 100 iterations
};

namespace detail {

inline std::vector<CMatrix> letter_matrices(const std::vector<CMatrix>& gens) {
  std::vector<CMatrix> out;
  out.reserve(2 * gens.size());
  for (const auto& x : gens) {
    out.push_back(x);
    out.push_back(x.adjoint());
  }
  return out;
}

inline CMatrix eval_poly(const std::vector<CMatrix>& letters, const FreeStarPoly& p, std::size_t d) {
  CMatrix r = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& [w, c] : p.terms()) {
    CMatrix t = CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Letter l : w) t = t * letters.at(l);
    r += c.to_complex() * t;
  }
  return r;
}

inline CMatrix nearest_projection(const CMatrix& x) {
  const CMatrix h = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& v = es.eigenvectors();
  CMatrix p = CMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k)
    if (es.eigenvalues()[k] > 0.5) p += v.col(k) * v.col(k).adjoint();
  return p;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

inline CMatrix evaluate(const MatrixModel& m, const FreeStarPoly& p) {
  if (p.max_generator() > m.matrices.size()) throw std::invalid_argument("polynomial outside the model's generators");
  return detail::eval_poly(detail::letter_matrices(m.matrices), p, m.dimension);
}

// Max Frobenius norm of the relations, recomputed from scratch.
inline double relation_residual(const MatrixModel& m, const Presentation& pres) {
  const auto letters = detail::letter_matrices(m.matrices);
  double r = 0;
  for (const auto& q : pres.relations()) r = std::max(r, detail::eval_poly(letters, q, m.dimension).norm());
  return r;
}

inline double operator_norm(const CMatrix& x) {
  if (x.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(x);
  return svd.singularValues()(0);
}

struct SearchOptions {
  std::size_t restarts = 20;
  std::size_t iterations = 3000;
  double tolerance = 1e-8;
  double step = 0.05;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct SearchResult {
  std::optional<MatrixModel> model;    // best successful restart
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<MatrixModel> successes;  // every restart under tolerance, by restart index
};

namespace detail {

struct Constraint {
  bool hermitian = false;
  bool projection = false;
};

inline std::vector<Constraint> constraints_for(const Presentation& pres) {
  std::vector<Constraint> cs(pres.generator_count());
  for (std::size_t g = 0; g < cs.size(); ++g) {
    if (!pres.generator(g).self_adjoint) continue;
    cs[g].hermitian = true;
    FreeStarPoly x = FreeStarPoly::gen(g);
    cs[g].projection = pres.normal_form(x * x - x, 1000).value.is_zero();
  }
  return cs;
}

inline MatrixModel run_restart(const Presentation& pres, const std::vector<Constraint>& cs, std::size_t d,
                               const SearchOptions& opt, std::size_t restart) {
  const auto di = static_cast<Eigen::Index>(d);
  std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(restart + 1)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&] {
    CMatrix x(di, di);
    for (Eigen::Index i = 0; i < di; ++i)
      for (Eigen::Index j = 0; j < di; ++j) x(i, j) = {gauss(rng), gauss(rng)};
    return x;
  };

  MatrixModel m;
  m.dimension = d;
  m.seed = opt.seed;
  m.restart = restart;
  for (std::size_t g = 0; g < pres.generator_count(); ++g) {
    m.names.push_back(pres.generator(g).name);
    m.self_adjoint.push_back(pres.generator(g).self_adjoint);
    if (cs[g].projection) {
      // Random rank: half the time uniform on 1..d-1 (nontrivial projections), otherwise 0..d.
      std::size_t rank;
      if (d >= 2 && std::uniform_int_distribution<int>(0, 1)(rng) == 0)
        rank = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
      else
        rank = std::uniform_int_distribution<std::size_t>(0, d)(rng);
      Eigen::HouseholderQR<CMatrix> qr(random_matrix());
      CMatrix q = qr.householderQ();
      CMatrix p = CMatrix::Zero(di, di);
      for (std::size_t k = 0; k < rank; ++k) p += q.col(static_cast<Eigen::Index>(k)) * q.col(static_cast<Eigen::Index>(k)).adjoint();
      m.matrices.push_back(p);
    } else if (cs[g].hermitian) {
      CMatrix x = random_matrix() / std::sqrt(static_cast<double>(d));
      m.matrices.push_back((x + x.adjoint()) / 2.0);
    } else {
      m.matrices.push_back(random_matrix() / std::sqrt(static_cast<double>(d)));
    }
  }

  const auto& rels = pres.relations();
  std::vector<CMatrix> grad(m.matrices.size(), CMatrix::Zero(di, di));
  for (std::size_t it = 0; it < opt.iterations; ++it) {
    const auto letters = letter_matrices(m.matrices);
    for (auto& g : grad) g.setZero();
    double loss = 0, residual = 0;
    for (const auto& q : rels) {
      const CMatrix r = eval_poly(letters, q, d);
      const double fn = r.norm();
      loss += fn * fn;
      residual = std::max(residual, fn);
      if (fn == 0) continue;
      const CMatrix rstar = r.adjoint();
      for (const auto& [w, c] : q.terms()) {
        if (w.empty()) continue;
        const std::complex<double> cc = c.to_complex();
        // prefix[p] = L_0 ... L_{p-1}, suffix[p] = L_{p+1} ... L_{m-1}
        std::vector<CMatrix> prefix(w.size() + 1), suffix(w.size() + 1);
        prefix[0] = CMatrix::Identity(di, di);
        for (std::size_t p = 0; p < w.size(); ++p) prefix[p + 1] = prefix[p] * letters[w[p]];
        suffix[w.size()] = CMatrix::Identity(di, di);
        for (std::size_t p = w.size(); p-- > 0;) suffix[p] = letters[w[p]] * suffix[p + 1];
        for (std::size_t p = 0; p < w.size(); ++p) {
          const CMatrix& pre = prefix[p];
          const CMatrix& suf = suffix[p + 1];
          if (is_adjoint(w[p]))
            grad[generator_of(w[p])] += 2.0 * cc * suf * rstar * pre;
          else
            grad[generator_of(w[p])] += 2.0 * std::conj(cc) * pre.adjoint() * r * suf.adjoint();
        }
      }
    }
    m.residual = residual;
    m.iterations = it;
    if (it % 100 == 0) m.loss_trace.push_back(loss);
    if (residual <= opt.tolerance) break;
    const double t = static_cast<double>(it) / static_cast<double>(opt.iterations);
    const double eta = opt.step * (0.1 + 0.9 * 0.5 * (1 + std::cos(std::numbers::pi * t)));
    for (std::size_t g = 0; g < m.matrices.size(); ++g) {
      CMatrix x = m.matrices[g] - eta * grad[g];
      if (cs[g].projection)
        x = nearest_projection(x);
      else if (cs[g].hermitian)
        x = (x + x.adjoint()) / 2.0;
      m.matrices[g] = std::move(x);
    }
  }
  m.residual = relation_residual(m, pres);
  return m;
}

}  // namespace detail

inline SearchResult find_representation(const Presentation& pres, std::size_t dimension, const SearchOptions& opt = {}) {
  if (dimension == 0) throw std::invalid_argument("representation dimension must be at least 1");
  const auto cs = detail::constraints_for(pres);
  std::vector<MatrixModel> runs(opt.restarts);
  std::size_t threads = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  for (std::size_t base = 0; base < opt.restarts; base += threads) {
    std::vector<std::future<MatrixModel>> batch;
    for (std::size_t r = base; r < std::min(opt.restarts, base + threads); ++r)
      batch.push_back(std::async(std::launch::async, [&, r] { return detail::run_restart(pres, cs, dimension, opt, r); }));
    for (std::size_t k = 0; k < batch.size(); ++k) runs[base + k] = batch[k].get();
  }
  SearchResult res;
  for (const auto& m : runs) {
    // Ties go to the lowest restart index, so the result does not depend on scheduling.
    if (m.residual < res.best_residual) res.best_residual = m.residual;
    if (m.residual <= opt.tolerance) {
      res.successes.push_back(m);
      if (!res.model || m.residual < res.model->residual) res.model = m;
    }
  }
  return res;
}

// Operator norm of [a, b] evaluated in the model.
inline double commutator_witness(const MatrixModel& m, const FreeStarPoly& a, const FreeStarPoly& b) {
  const CMatrix x = evaluate(m, a);
  const CMatrix y = evaluate(m, b);
  return operator_norm(x * y - y * x);
}

// ---------------------------------------------------------------------------
// Model files (format "qmor-model v1"):
//   qmor-model v1
//   dimension <d>
//   seed <s>
//   restart <r>
//   iterations <n>
//   residual <r>
//   generator <name> <0|1 self-adjoint>
//   <d lines, each with d pairs "re im">       (row-major)
//   ... one generator block per generator ...
//   end

inline void write_model(std::ostream& os, const MatrixModel& m) {
  os.precision(17);
  os << "qmor-model v1\n"
     << "dimension " << m.dimension << "\n"
     << "seed " << m.seed << "\n"
     << "restart " << m.restart << "\n"
     << "iterations " << m.iterations << "\n"
     << "residual " << m.residual << "\n";
  for (std::size_t g = 0; g < m.matrices.size(); ++g) {
    os << "generator " << m.names[g] << " " << (m.self_adjoint[g] ? 1 : 0) << "\n";
    const auto& x = m.matrices[g];
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) os << (j ? " " : "") << x(i, j).real() << " " << x(i, j).imag();
      os << "\n";
    }
  }
  os << "end\n";
}

inline MatrixModel read_model(std::istream& is) {
  auto fail = [](const std::string& what) { return std::runtime_error("model file: " + what); };
  std::string tok, ver;
  if (!(is >> tok >> ver) || tok != "qmor-model" || ver != "v1") throw fail("missing 'qmor-model v1' header");
  MatrixModel m;
  auto expect = [&](const char* key, auto& value) {
    if (!(is >> tok) || tok != key || !(is >> value)) throw fail(std::string("expected '") + key + "'");
  };
  expect("dimension", m.dimension);
  expect("seed", m.seed);
  expect("restart", m.restart);
  expect("iterations", m.iterations);
  std::string res;
  expect("residual", res);
  m.residual = std::stod(res);
  const auto d = static_cast<Eigen::Index>(m.dimension);
  while (is >> tok && tok != "end") {
    if (tok != "generator") throw fail("expected 'generator' or 'end'");
    std::string name;
    int sa = 0;
    if (!(is >> name >> sa)) throw fail("bad generator line");
    CMatrix x(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        double re, im;
        if (!(is >> re >> im)) throw fail("truncated matrix for " + name);
        x(i, j) = {re, im};
      }
    m.names.push_back(name);
    m.self_adjoint.push_back(sa != 0);
    m.matrices.push_back(std::move(x));
  }
  if (tok != "end") throw fail("missing 'end'");
  return m;
}

}  // namespace qmor
