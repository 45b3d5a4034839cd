#pragma once

// Exact complex rationals a + b i with a, b in Q, backed by GMP.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qmor {

class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long re) : re_(re) {}  // NOLINT: integers convert implicitly
  GaussRat(int re) : re_(re) {}   // NOLINT
  GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRat imag_unit() { return {0, 1}; }
  static GaussRat frac(long num, long den) { return GaussRat(mpq_class(num, den)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRat conj() const { return {re_, -im_}; }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return {-re_, -im_}; }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw std::domain_error("GaussRat: division by zero");
    mpq_class n = o.norm2();
    GaussRat q = *this;
    q *= o.conj();
    re_ = q.re_ / n;
    im_ = q.im_ / n;
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  // Canonical text: "3/2", "-1/2i", "(1+2i)". Parenthesised only when both parts are nonzero.
  std::string str() const {
    std::ostringstream os;
    if (sgn(im_) == 0) {
      os << re_.get_str();
    } else if (sgn(re_) == 0) {
      os << im_.get_str() << 'i';
    } else {
      os << '(' << re_.get_str() << (sgn(im_) > 0 ? "+" : "-") << mpq_class(abs(im_)).get_str()
         << "i)";
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << z.str(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace qmor
