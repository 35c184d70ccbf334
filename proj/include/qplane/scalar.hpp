#pragma once

#include <compare>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qplane/gauss_rational.hpp"
#include "qplane/polynomial.hpp"

namespace qplane {

/// Raised when a scalar expression cannot be evaluated: division by zero,
/// division by a non-monomial auxiliary expression, or a pole at a
/// specialization point.
class ScalarError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reduced rational function in s = q^{1/2} over Q(i).
///
/// Stored as s^shift * num / den with num(0) != 0, den monic, den(0) != 0 and
/// gcd(num, den) = 1. Zero is num = 0, den = 1, shift = 0.
class RationalFunction {
 public:
  RationalFunction() : den_(GaussRational(1)) {}
  RationalFunction(GaussRational c);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction s_power(int k);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
  bool is_constant() const { return shift_ == 0 && num_.is_constant() && den_.is_one(); }
  /// Constant value; only meaningful when is_constant().
  GaussRational constant() const { return num_.coeff(0); }
  bool is_laurent() const { return den_.is_one(); }

  int shift() const { return shift_; }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  /// Numerator/denominator with the power of s folded in (den monic).
  Polynomial full_numerator() const;
  Polynomial full_denominator() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o) { return *this += -o; }
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o) { return *this *= o.inverse(); }
  RationalFunction inverse() const;

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

  /// Value at s = point; throws ScalarError at a pole.
  GaussRational eval(const GaussRational& point) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;
  friend std::strong_ordering operator<=>(const RationalFunction& a, const RationalFunction& b);

  /// Canonical text in s, terms in descending degree.
  std::string to_string() const;
  /// Number of printed summands (used to decide on parentheses).
  std::size_t term_count() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
  int shift_ = 0;
};

/// Product of auxiliary central symbols with integer exponents, sorted by name.
using AuxMonomial = std::vector<std::pair<std::string, int>>;

AuxMonomial aux_multiply(const AuxMonomial& a, const AuxMonomial& b);
AuxMonomial aux_inverse(const AuxMonomial& a);

/// Specialization s -> value (value != 0).
struct Specialization {
  GaussRational s_value;

  explicit Specialization(GaussRational value);
  /// Specialization realizing q -> `q_value`, choosing the principal square root.
  static Specialization from_q(const GaussRational& q_value);
};

/// Element of the coefficient field: a finite sum of auxiliary monomials
/// (e.g. rho^-1) with rational-function coefficients in s.
///
/// Terms are sorted by monomial and never zero, so the zero scalar is the
/// empty sum and equality is structural.
class Scalar {
 public:
  struct Term {
    AuxMonomial aux;
    RationalFunction coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Scalar() = default;
  Scalar(long v);             // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(GaussRational v);    // NOLINT(google-explicit-constructor)
  Scalar(RationalFunction v); // NOLINT(google-explicit-constructor)

  static Scalar s();
  static Scalar q();
  static Scalar i();
  static Scalar aux(const std::string& symbol, int exponent = 1);
  static Scalar rational(long num, long den);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// True when free of s and of auxiliary symbols.
  bool is_constant() const;
  GaussRational constant() const;
  /// True when no auxiliary symbol occurs.
  bool is_pure() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].aux.empty()); }
  /// True when the scalar is invertible: a single nonzero term.
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  /// The rational-function part of a pure scalar; throws otherwise.
  const RationalFunction& rational_function() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  /// Inverse of a nonzero monomial scalar; throws ScalarError otherwise.
  Scalar inverse() const;
  Scalar pow(int exponent) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) = default;
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  /// Substitutes s = sp.s_value; aux part preserved; throws ScalarError at a pole.
  Scalar specialize(const Specialization& sp) const;
  /// Substitutes a value (possibly s-dependent) for an auxiliary symbol.
  Scalar substitute_aux(const std::string& symbol, const Scalar& value) const;
  /// Returns the set of auxiliary symbols used.
  std::set<std::string> aux_symbols() const;

  std::string to_string() const;
  /// True when printing needs parentheses as a multiplicative factor.
  bool needs_parens() const;
  /// True when the canonical text starts with a minus sign that can be split off.
  bool prints_negative() const;

 private:
  void insert_term(AuxMonomial aux, RationalFunction coeff);
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& v);

/// Parses a scalar expression (grammar: expr/term/factor/atom over rationals,
/// i, s, q, rho and any extra auxiliary symbol names). Throws ParseError.
Scalar parse_scalar(const std::string& text, const std::set<std::string>& aux_symbols = {"rho"});

/// Syntax error with byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qplane
