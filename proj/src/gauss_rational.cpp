#include "qplane/gauss_rational.hpp"

#include <sstream>
#include <stdexcept>

namespace qplane {

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& v) {
  if (sgn(v) < 0) return std::nullopt;
  mpz_class num = v.get_num();
  mpz_class den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

std::string rational_text(const mpq_class& v) { return v.get_str(); }

}  // namespace

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::from_string(const std::string& text) {
  mpq_class v;
  if (v.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
  if (sgn(v.get_den()) == 0) throw std::domain_error("zero denominator in literal: " + text);
  v.canonicalize();
  return GaussRational(v, 0);
}

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

std::optional<GaussRational> GaussRational::sqrt() const {
  if (sgn(im_) == 0) {
    if (sgn(re_) >= 0) {
      auto r = rational_sqrt(re_);
      if (!r) return std::nullopt;
      return GaussRational(*r, 0);
    }
    auto r = rational_sqrt(-re_);
    if (!r) return std::nullopt;
    return GaussRational(0, *r);
  }
  auto modulus = rational_sqrt(norm());
  if (!modulus) return std::nullopt;
  auto x = rational_sqrt((*modulus + re_) / 2);
  auto y = rational_sqrt((*modulus - re_) / 2);
  if (!x || !y) return std::nullopt;
  mpq_class ys = sgn(im_) < 0 ? mpq_class(-*y) : *y;
  return GaussRational(*x, ys);
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const GaussRational& a, const GaussRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool GaussRational::prints_negative() const {
  if (sgn(re_) != 0 && sgn(im_) != 0) return false;
  if (sgn(re_) != 0) return sgn(re_) < 0;
  return sgn(im_) < 0;
}

std::string GaussRational::to_string() const {
  if (sgn(im_) == 0) return rational_text(re_);
  auto imag_part = [](const mpq_class& v) {
    if (v == 1) return std::string("i");
    if (v == -1) return std::string("-i");
    return rational_text(v) + "*i";
  };
  if (sgn(re_) == 0) return imag_part(im_);
  std::ostringstream os;
  os << '(' << rational_text(re_);
  if (sgn(im_) > 0) {
    os << '+' << imag_part(im_);
  } else {
    os << '-' << imag_part(-im_);
  }
  os << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussRational& v) { return os << v.to_string(); }

}  // namespace qplane
