#include "qplane/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qplane {

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(GaussRational c) : num_(std::move(c)), den_(GaussRational(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ScalarError("division by the zero polynomial");
  normalize();
}

RationalFunction RationalFunction::s_power(int k) {
  RationalFunction r(GaussRational(1));
  r.shift_ = k;
  return r;
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(GaussRational(1));
    shift_ = 0;
    return;
  }
  int low_num = num_.low_order();
  if (low_num > 0) {
    num_ = num_.shifted(-low_num);
    shift_ += low_num;
  }
  int low_den = den_.low_order();
  if (low_den > 0) {
    den_ = den_.shifted(-low_den);
    shift_ -= low_den;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  if (!den_.lead().is_one()) {
    GaussRational inv = den_.lead().inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Polynomial RationalFunction::full_numerator() const { return shift_ > 0 ? num_.shifted(shift_) : num_; }

Polynomial RationalFunction::full_denominator() const { return shift_ < 0 ? den_.shifted(-shift_) : den_; }

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int base = std::min(shift_, o.shift_);
  Polynomial a = num_.shifted(shift_ - base);
  Polynomial b = o.num_.shifted(o.shift_ - base);
  if (den_ == o.den_) {
    num_ = a + b;
    shift_ = base;
    normalize();
    return *this;
  }
  Polynomial g = gcd(den_, o.den_);
  Polynomial left_cof = o.den_.exact_div(g);
  Polynomial right_cof = den_.exact_div(g);
  num_ = a * left_cof + b * right_cof;
  den_ = den_ * left_cof;
  shift_ = base;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = o;
  shift_ += o.shift_;
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  Polynomial g1 = gcd(num_, o.den_);
  Polynomial g2 = gcd(o.num_, den_);
  Polynomial a = g1.is_constant() ? num_ : num_.exact_div(g1);
  Polynomial b = g2.is_constant() ? o.num_ : o.num_.exact_div(g2);
  Polynomial c = g2.is_constant() ? den_ : den_.exact_div(g2);
  Polynomial d = g1.is_constant() ? o.den_ : o.den_.exact_div(g1);
  num_ = a * b;
  den_ = c * d;
  if (!den_.lead().is_one()) {
    GaussRational inv = den_.lead().inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ScalarError("division by zero");
  RationalFunction r;
  GaussRational lead_inv = num_.lead().inverse();
  r.num_ = den_.scaled(lead_inv);
  r.den_ = num_.scaled(lead_inv);
  r.shift_ = -shift_;
  return r;
}

GaussRational RationalFunction::eval(const GaussRational& point) const {
  if (is_zero()) return {};
  if (point.is_zero() && shift_ < 0) throw ScalarError("pole at specialization point s = 0");
  GaussRational d = den_.eval(point);
  if (d.is_zero()) throw ScalarError("pole at specialization point s = " + point.to_string());
  GaussRational v = num_.eval(point) / d;
  GaussRational p = shift_ >= 0 ? point : point.inverse();
  for (int k = 0; k < std::abs(shift_); ++k) v *= p;
  return v;
}

std::strong_ordering operator<=>(const RationalFunction& a, const RationalFunction& b) {
  if (auto c = a.shift_ <=> b.shift_; c != 0) return c;
  if (auto c = a.num_ <=> b.num_; c != 0) return c;
  return a.den_ <=> b.den_;
}

namespace {

std::string s_part(int e) {
  if (e == 1) return "s";
  return "s^" + std::to_string(e);
}

/// Prints sum of coeffs[k] * s^(k + shift) in descending degree.
std::string laurent_text(const Polynomial& p, int shift) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& c = p.coeffs();
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    const GaussRational& v = c[static_cast<std::size_t>(k)];
    if (v.is_zero()) continue;
    int e = k + shift;
    bool neg = v.prints_negative();
    GaussRational shown = (neg && !first) ? -v : v;
    if (!first) os << (neg ? " - " : " + ");
    if (e == 0) {
      os << shown.to_string();
    } else if (shown.is_one()) {
      os << s_part(e);
    } else if (shown == GaussRational(-1)) {
      os << '-' << s_part(e);
    } else {
      os << shown.to_string() << '*' << s_part(e);
    }
    first = false;
  }
  return os.str();
}

std::size_t nonzero_count(const Polynomial& p) {
  return static_cast<std::size_t>(
      std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const GaussRational& v) { return !v.is_zero(); }));
}

}  // namespace

std::size_t RationalFunction::term_count() const {
  if (is_zero()) return 1;
  if (den_.is_one()) return nonzero_count(num_);
  return 1;
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return laurent_text(num_, shift_);
  std::string top = laurent_text(num_, shift_);
  if (nonzero_count(num_) > 1) top = "(" + top + ")";
  return top + "/(" + laurent_text(den_, 0) + ")";
}

// ---------------------------------------------------------------------------
// Auxiliary monomials

AuxMonomial aux_multiply(const AuxMonomial& a, const AuxMonomial& b) {
  AuxMonomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

AuxMonomial aux_inverse(const AuxMonomial& a) {
  AuxMonomial out = a;
  for (auto& [name, e] : out) e = -e;
  return out;
}

Specialization::Specialization(GaussRational value) : s_value(std::move(value)) {
  if (s_value.is_zero()) throw ScalarError("specialization value of s must be nonzero");
}

Specialization Specialization::from_q(const GaussRational& q_value) {
  auto root = q_value.sqrt();
  if (!root) throw ScalarError("q = " + q_value.to_string() + " has no square root in Q(i)");
  return Specialization(*root);
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(long v) : Scalar(GaussRational(v)) {}

Scalar::Scalar(GaussRational v) {
  if (!v.is_zero()) terms_.push_back({{}, RationalFunction(std::move(v))});
}

Scalar::Scalar(RationalFunction v) {
  if (!v.is_zero()) terms_.push_back({{}, std::move(v)});
}

Scalar Scalar::s() { return Scalar(RationalFunction::s_power(1)); }
Scalar Scalar::q() { return Scalar(RationalFunction::s_power(2)); }
Scalar Scalar::i() { return Scalar(GaussRational::i()); }

Scalar Scalar::aux(const std::string& symbol, int exponent) {
  Scalar r;
  if (exponent == 0) return Scalar(1);
  r.terms_.push_back({{{symbol, exponent}}, RationalFunction(GaussRational(1))});
  return r;
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw ScalarError("division by zero");
  return Scalar(GaussRational(mpq_class(num, den)));
}

bool Scalar::is_one() const { return terms_.size() == 1 && terms_[0].aux.empty() && terms_[0].coeff.is_one(); }

bool Scalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].aux.empty() && terms_[0].coeff.is_constant());
}

GaussRational Scalar::constant() const {
  if (terms_.empty()) return {};
  if (!is_constant()) throw ScalarError("scalar " + to_string() + " is not constant");
  return terms_[0].coeff.constant();
}

const RationalFunction& Scalar::rational_function() const {
  static const RationalFunction zero;
  if (terms_.empty()) return zero;
  if (!is_pure()) throw ScalarError("scalar " + to_string() + " involves auxiliary symbols");
  return terms_[0].coeff;
}

void Scalar::insert_term(AuxMonomial aux, RationalFunction coeff) {
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), aux,
                             [](const Term& t, const AuxMonomial& m) { return t.aux < m; });
  if (it != terms_.end() && it->aux == aux) {
    it->coeff += coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
    return;
  }
  terms_.insert(it, Term{std::move(aux), std::move(coeff)});
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  if (terms_.size() == 1 && o.terms_.size() == 1 && terms_[0].aux == o.terms_[0].aux) {
    terms_[0].coeff += o.terms_[0].coeff;
    if (terms_[0].coeff.is_zero()) terms_.clear();
    return *this;
  }
  for (const auto& t : o.terms_) insert_term(t.aux, t.coeff);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (terms_.empty()) return *this;
  if (o.terms_.empty()) {
    terms_.clear();
    return *this;
  }
  if (terms_.size() == 1 && o.terms_.size() == 1) {
    terms_[0].coeff *= o.terms_[0].coeff;
    if (!o.terms_[0].aux.empty()) terms_[0].aux = aux_multiply(terms_[0].aux, o.terms_[0].aux);
    return *this;
  }
  Scalar out;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) out.insert_term(aux_multiply(a.aux, b.aux), a.coeff * b.coeff);
  }
  return *this = std::move(out);
}

Scalar Scalar::inverse() const {
  if (terms_.empty()) throw ScalarError("division by zero");
  if (terms_.size() != 1) {
    throw ScalarError("division by non-monomial auxiliary expression " + to_string());
  }
  Scalar r;
  r.terms_.push_back({aux_inverse(terms_[0].aux), terms_[0].coeff.inverse()});
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int exponent) const {
  Scalar base = exponent < 0 ? inverse() : *this;
  Scalar acc(1);
  for (int k = 0; k < std::abs(exponent); ++k) acc *= base;
  return acc;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (auto c = a.terms_[k].aux <=> b.terms_[k].aux; c != 0) return c;
    if (auto c = a.terms_[k].coeff <=> b.terms_[k].coeff; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

Scalar Scalar::specialize(const Specialization& sp) const {
  Scalar out;
  for (const auto& t : terms_) out.insert_term(t.aux, RationalFunction(t.coeff.eval(sp.s_value)));
  return out;
}

Scalar Scalar::substitute_aux(const std::string& symbol, const Scalar& value) const {
  Scalar out;
  for (const auto& t : terms_) {
    AuxMonomial rest;
    int e = 0;
    for (const auto& [name, exp] : t.aux) {
      if (name == symbol) {
        e = exp;
      } else {
        rest.emplace_back(name, exp);
      }
    }
    Scalar piece;
    piece.terms_.push_back({std::move(rest), t.coeff});
    out += piece * value.pow(e);
  }
  return out;
}

std::set<std::string> Scalar::aux_symbols() const {
  std::set<std::string> out;
  for (const auto& t : terms_) {
    for (const auto& [name, e] : t.aux) out.insert(name);
  }
  return out;
}

namespace {

std::string aux_text(const AuxMonomial& m) {
  std::string out;
  for (const auto& [name, e] : m) {
    if (!out.empty()) out += '*';
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool coeff_prints_negative(const RationalFunction& c) {
  std::string t = c.to_string();
  return !t.empty() && t[0] == '-' && c.term_count() == 1;
}

}  // namespace

bool Scalar::needs_parens() const {
  if (terms_.size() > 1) return true;
  if (terms_.empty()) return false;
  return terms_[0].aux.empty() && terms_[0].coeff.term_count() > 1;
}

bool Scalar::prints_negative() const {
  if (terms_.empty()) return false;
  return coeff_prints_negative(terms_[0].coeff);
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    RationalFunction c = t.coeff;
    bool neg = coeff_prints_negative(c);
    if (!first) {
      os << (neg ? " - " : " + ");
      if (neg) c = -c;
    }
    if (t.aux.empty()) {
      os << c.to_string();
    } else if (c.is_one()) {
      os << aux_text(t.aux);
    } else if (c == RationalFunction(GaussRational(-1))) {
      os << '-' << aux_text(t.aux);
    } else if (c.term_count() > 1) {
      os << '(' << c.to_string() << ")*" << aux_text(t.aux);
    } else {
      os << c.to_string() << '*' << aux_text(t.aux);
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& v) { return os << v.to_string(); }

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class ScalarParser {
 public:
  ScalarParser(const std::string& text, const std::set<std::string>& aux) : text_(text), aux_(aux) {}

  Scalar parse() {
    Scalar v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = factor();
    while (true) {
      if (accept('*')) {
        v *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Scalar d = factor();
        try {
          v /= d;
        } catch (const ScalarError& e) {
          throw ParseError(e.what(), at);
        }
      } else {
        return v;
      }
    }
  }

  Scalar factor() {
    Scalar base = atom();
    if (accept('^')) {
      int e = signed_int();
      std::size_t at = pos_;
      try {
        return base.pow(e);
      } catch (const ScalarError& err) {
        throw ParseError(err.what(), at);
      }
    }
    return base;
  }

  int signed_int() {
    bool paren = accept('(');
    skip_ws();
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", pos_);
    int v = std::stoi(text_.substr(start, pos_ - start));
    if (paren && !accept(')')) throw ParseError("expected ')'", pos_);
    return neg ? -v : v;
  }

  Scalar atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Scalar(GaussRational::from_string(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = text_.substr(start, pos_ - start);
      if (name == "i") return Scalar::i();
      if (name == "s") return Scalar::s();
      if (name == "q") return Scalar::q();
      if (aux_.contains(name)) return Scalar::aux(name);
      throw ParseError("unknown symbol '" + name + "'", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  const std::string& text_;
  const std::set<std::string>& aux_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text, const std::set<std::string>& aux_symbols) {
  return ScalarParser(text, aux_symbols).parse();
}

}  // namespace qplane
