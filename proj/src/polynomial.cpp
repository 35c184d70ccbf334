#include "qplane/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace qplane {

Polynomial::Polynomial(GaussRational c) {
  if (!c.is_zero()) coeffs_.push_back(std::move(c));
}

Polynomial::Polynomial(std::vector<GaussRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(GaussRational c, int degree) {
  if (c.is_zero()) return {};
  std::vector<GaussRational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = std::move(c);
  Polynomial p;
  p.coeffs_ = std::move(v);
  return p;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussRational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

int Polynomial::low_order() const {
  int k = 0;
  while (k < static_cast<int>(coeffs_.size()) && coeffs_[static_cast<std::size_t>(k)].is_zero()) ++k;
  return is_zero() ? 0 : k;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(const GaussRational& c) const {
  if (c.is_zero()) return {};
  Polynomial r = *this;
  for (auto& v : r.coeffs_) v *= c;
  return r;
}

Polynomial Polynomial::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Polynomial r;
  if (k > 0) {
    r.coeffs_.assign(static_cast<std::size_t>(k), GaussRational{});
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
  }
  if (-k > low_order()) throw std::logic_error("Polynomial::shifted: s^k does not divide");
  r.coeffs_.assign(coeffs_.begin() + (-k), coeffs_.end());
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  Polynomial rem = *this;
  if (rem.degree() < divisor.degree()) return {Polynomial{}, rem};
  std::vector<GaussRational> quot(static_cast<std::size_t>(rem.degree() - divisor.degree() + 1));
  GaussRational inv_lead = divisor.lead().inverse();
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    int shift = rem.degree() - divisor.degree();
    GaussRational factor = rem.lead() * inv_lead;
    for (std::size_t k = 0; k < divisor.coeffs_.size(); ++k) {
      rem.coeffs_[k + static_cast<std::size_t>(shift)] -= factor * divisor.coeffs_[k];
    }
    quot[static_cast<std::size_t>(shift)] = std::move(factor);
    rem.trim();
  }
  return {Polynomial(std::move(quot)), rem};
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw std::logic_error("Polynomial::exact_div: nonzero remainder");
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || lead().is_one()) return *this;
  return scaled(lead().inverse());
}

GaussRational Polynomial::eval(const GaussRational& x) const {
  GaussRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() <=> b.coeffs_.size();
  for (std::size_t k = a.coeffs_.size(); k-- > 0;) {
    auto c = a.coeffs_[k] <=> b.coeffs_[k];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.is_constant()) return Polynomial(GaussRational(1));
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

}  // namespace qplane
