#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qplane/gauss_rational.hpp"

namespace qplane {

/// Dense univariate polynomial in s over Q(i); coefficient k multiplies s^k.
/// Trailing zero coefficients are never stored, so the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(GaussRational c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<GaussRational> coeffs);

  static Polynomial monomial(GaussRational c, int degree);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const GaussRational& lead() const { return coeffs_.back(); }
  const std::vector<GaussRational>& coeffs() const { return coeffs_; }
  GaussRational coeff(int k) const;
  /// Largest k with s^k dividing the polynomial; 0 for zero.
  int low_order() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const GaussRational& c) const;
  /// Multiplies by s^k (k >= 0) or drops the k lowest coefficients (k < 0, must divide).
  Polynomial shifted(int k) const;

  /// Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  /// Exact quotient; throws if the division leaves a remainder.
  Polynomial exact_div(const Polynomial& divisor) const;
  Polynomial monic() const;

  GaussRational eval(const GaussRational& x) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;
  friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<GaussRational> coeffs_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace qplane
