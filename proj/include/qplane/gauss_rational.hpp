#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>

namespace qplane {

/// Exact element re + im*i of the Gaussian rationals Q(i).
///
/// Both parts are GMP rationals kept in lowest terms with positive
/// denominator, so structural equality is value equality.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0);

  static GaussRational i() { return GaussRational(0, 1); }
  /// Parses the decimal integer or "p/q" fraction `text` (real part only).
  static GaussRational from_string(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  /// Multiplicative inverse; throws std::domain_error on zero.
  GaussRational inverse() const;
  /// Exact square root with non-negative real part (positive imaginary part
  /// when purely imaginary), if it exists in Q(i).
  std::optional<GaussRational> sqrt() const;

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Arbitrary but fixed total order (real part first); used for canonical sorting only.
  friend std::strong_ordering operator<=>(const GaussRational& a, const GaussRational& b);

  /// Canonical text: "3/2", "-i", "3/2*i", "(1/2-3*i)".
  std::string to_string() const;
  /// True when the printed form should be preceded by " - " after negation
  /// (negative real, or zero real with negative imaginary part).
  bool prints_negative() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& v);

}  // namespace qplane
