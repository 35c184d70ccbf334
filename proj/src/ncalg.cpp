#include "qplane/ncalg.hpp"

#include <algorithm>
#include <cctype>

namespace qplane {

int kind_inversions(const Word& w) {
  int counts[3] = {0, 0, 0};
  int inv = 0;
  // Count, for each letter, how many earlier letters have a larger kind.
  for (const auto& g : w) {
    int k = static_cast<int>(g.kind);
    for (int larger = k + 1; larger < 3; ++larger) inv += counts[larger];
    ++counts[k];
  }
  return inv;
}

bool WordLess::operator()(const Word& a, const Word& b) const {
  int ia = kind_inversions(a), ib = kind_inversions(b);
  if (ia != ib) return ia < ib;
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(Scalar c) {
  if (!c.is_zero()) terms_.emplace(Word{}, std::move(c));
}

AlgebraElement::AlgebraElement(Word w, Scalar c) {
  if (!c.is_zero()) terms_.emplace(std::move(w), std::move(c));
}

AlgebraElement AlgebraElement::generator(Kind kind, int rank) {
  return AlgebraElement(Word{Generator{kind, static_cast<std::uint8_t>(rank)}});
}

Scalar AlgebraElement::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

bool AlgebraElement::only_kind(Kind kind) const {
  for (const auto& [w, c] : terms_) {
    for (const auto& g : w) {
      if (g.kind != kind) return false;
    }
  }
  return true;
}

bool AlgebraElement::is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

int AlgebraElement::max_degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void AlgebraElement::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(Scalar(-1)); }

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement out;
  if (c.is_zero()) return out;
  for (const auto& [w, v] : terms_) out.add(w, v * c);
  return out;
}

AlgebraElement concat(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  }
  return out;
}

AlgebraElement AlgebraElement::specialize(const Specialization& sp) const {
  AlgebraElement out;
  for (const auto& [w, c] : terms_) out.add(w, c.specialize(sp));
  return out;
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> names_by_index, std::vector<int> rank_of_index)
    : names_(std::move(names_by_index)), rank_of_index_(std::move(rank_of_index)) {
  const int n = static_cast<int>(names_.size());
  if (static_cast<int>(rank_of_index_.size()) != n) throw std::invalid_argument("alphabet: rank list size mismatch");
  if (n > 80) throw std::invalid_argument("alphabet: too many generators");
  index_of_rank_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int r = rank_of_index_[static_cast<std::size_t>(i)];
    if (r < 0 || r >= n || index_of_rank_[static_cast<std::size_t>(r)] != -1) {
      throw std::invalid_argument("alphabet: generator order is not a permutation");
    }
    index_of_rank_[static_cast<std::size_t>(r)] = i;
  }
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty() || !seen.insert(name).second) throw std::invalid_argument("alphabet: empty or duplicate name");
  }
}

std::optional<int> Alphabet::rank_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i) {
    if (names_[static_cast<std::size_t>(i)] == name) return rank_of_index(i);
  }
  return std::nullopt;
}

std::string Alphabet::letter(const Generator& g) const {
  const std::string& name = name_of_rank(g.rank);
  switch (g.kind) {
    case Kind::Coord: return name;
    case Kind::Diff: return "d(" + name + ")";
    case Kind::Deriv: return "D(" + name + ")";
  }
  return name;
}

std::string Alphabet::word_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (p) out += "*";
    out += letter(w[p]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conventions

std::string to_string(DerivConvention c) {
  switch (c) {
    case DerivConvention::none: return "none";
    case DerivConvention::right_kl: return "right_kl";
    case DerivConvention::right_lk: return "right_lk";
    case DerivConvention::left_kl: return "left_kl";
    case DerivConvention::left_lk: return "left_lk";
  }
  return "none";
}

std::vector<DerivConvention> deriv_convention_candidates() {
  return {DerivConvention::right_kl, DerivConvention::right_lk, DerivConvention::left_kl, DerivConvention::left_lk};
}

// ---------------------------------------------------------------------------
// RewriteSystem

const RewriteRule* RewriteSystem::rule(const Generator& a, const Generator& b) const {
  const auto& r = table_[slot(a, b)];
  return r ? &*r : nullptr;
}

std::vector<RewriteRule> RewriteSystem::rules() const {
  std::vector<RewriteRule> out;
  for (const auto& r : table_) {
    if (r) out.push_back(*r);
  }
  std::sort(out.begin(), out.end(), [](const RewriteRule& a, const RewriteRule& b) {
    return WordLess{}(Word{b.first, b.second}, Word{a.first, a.second});
  });
  return out;
}

std::vector<RewriteRule> RewriteSystem::rules(const std::string& family) const {
  std::vector<RewriteRule> out;
  for (auto& r : rules()) {
    if (r.family == family) out.push_back(std::move(r));
  }
  return out;
}

void RewriteSystem::set_rule(RewriteRule r) {
  Word lhs{r.first, r.second};
  for (const auto& [w, c] : r.rhs.terms()) {
    if (!WordLess{}(w, lhs)) {
      throw RuleError("rule " + alphabet_.word_string(lhs) + " -> ... does not decrease: contains " +
                      alphabet_.word_string(w));
    }
  }
  auto& cell = table_[slot(r.first, r.second)];
  if (cell) throw RuleError("two rules for pattern " + alphabet_.word_string(lhs));
  cell = std::move(r);
}

void RewriteSystem::override_rule(const Generator& a, const Generator& b, AlgebraElement rhs) {
  auto& cell = table_[slot(a, b)];
  if (!cell) throw RuleError("no rule to override for " + alphabet_.word_string({a, b}));
  cell->rhs = std::move(rhs);
}

void RewriteSystem::check_degree(const Word& w) const {
  if (static_cast<int>(w.size()) > degree_cap_) {
    throw DegreeCapError("word of length " + std::to_string(w.size()) + " exceeds degree cap " +
                         std::to_string(degree_cap_));
  }
}

std::optional<std::size_t> RewriteSystem::find_redex(const Word& w, Strategy strategy) const {
  if (w.size() < 2) return std::nullopt;
  if (strategy == Strategy::leftmost) {
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (table_[slot(w[p], w[p + 1])]) return p;
    }
  } else {
    for (std::size_t p = w.size() - 1; p-- > 0;) {
      if (table_[slot(w[p], w[p + 1])]) return p;
    }
  }
  return std::nullopt;
}

AlgebraElement RewriteSystem::normal_form(const AlgebraElement& e, Strategy strategy) const {
  // Every rewrite lowers the measure, so popping the largest pending word
  // sees each word exactly once with its full coefficient.
  AlgebraElement::Terms work;
  for (const auto& [w, c] : e.terms()) {
    check_degree(w);
    work.emplace(w, c);
  }
  AlgebraElement out;
  while (!work.empty()) {
    auto node = work.extract(std::prev(work.end()));
    const Word& w = node.key();
    const Scalar& c = node.mapped();
    auto pos = find_redex(w, strategy);
    if (!pos) {
      out.add(w, c);
      continue;
    }
    const auto& r = *table_[slot(w[*pos], w[*pos + 1])];
    for (const auto& [frag, rc] : r.rhs.terms()) {
      Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*pos));
      nw.insert(nw.end(), frag.begin(), frag.end());
      nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(*pos + 2), w.end());
      Scalar v = c * rc;
      auto [it, inserted] = work.try_emplace(std::move(nw), v);
      if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return out;
}

AlgebraElement RewriteSystem::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  return normal_form(concat(a, b));
}

bool RewriteSystem::is_normal(const AlgebraElement& e) const {
  for (const auto& [w, c] : e.terms()) {
    if (find_redex(w, Strategy::leftmost)) return false;
  }
  return true;
}

namespace {

void require_coord(const AlgebraElement& f, const char* what) {
  if (!f.only_kind(Kind::Coord)) throw std::invalid_argument(std::string(what) + ": argument must be a function");
}

bool has_kind(const Word& w, Kind kind) {
  return std::any_of(w.begin(), w.end(), [&](const Generator& g) { return g.kind == kind; });
}

}  // namespace

AlgebraElement RewriteSystem::derivative_action(int rank, const AlgebraElement& f) const {
  require_coord(f, "derivative_action");
  AlgebraElement out;
  const AlgebraElement full = normal_form(concat(partial(rank), f));
  for (const auto& [w, c] : full.terms()) {
    if (!has_kind(w, Kind::Deriv)) out.add(w, c);
  }
  return out;
}

std::map<int, AlgebraElement> RewriteSystem::transport(int rank, const AlgebraElement& f) const {
  require_coord(f, "transport");
  std::map<int, AlgebraElement> out;
  const AlgebraElement full = normal_form(concat(partial(rank), f));
  for (const auto& [w, c] : full.terms()) {
    if (w.empty() || w.back().kind != Kind::Deriv) continue;
    Word prefix(w.begin(), w.end() - 1);
    out[w.back().rank].add(prefix, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

bool RewriteSystem::is_central(const AlgebraElement& e, bool all_kinds) const {
  std::vector<Kind> kinds{Kind::Coord};
  if (all_kinds) kinds = {Kind::Coord, Kind::Diff, Kind::Deriv};
  for (Kind k : kinds) {
    for (int r = 0; r < dim(); ++r) {
      auto g = AlgebraElement::generator(k, r);
      if (!normal_form(concat(e, g) - concat(g, e)).is_zero()) return false;
    }
  }
  return true;
}

ConfluenceReport RewriteSystem::overlap_test(const std::vector<Kind>& kinds) const {
  ConfluenceReport rep;
  std::vector<Generator> letters;
  for (Kind k : kinds) {
    for (int r = 0; r < dim(); ++r) letters.push_back({k, static_cast<std::uint8_t>(r)});
  }
  for (const auto& a : letters) {
    for (const auto& b : letters) {
      for (const auto& c : letters) {
        Word w{a, b, c};
        ++rep.overlaps;
        AlgebraElement e(w);
        if (normal_form(e, Strategy::leftmost) != normal_form(e, Strategy::rightmost)) rep.mismatches.push_back(w);
      }
    }
  }
  return rep;
}

ConfluenceReport RewriteSystem::confluence_selftest(std::size_t sample_count, int max_degree,
                                                    std::uint64_t seed) const {
  ConfluenceReport rep = overlap_test({Kind::Coord, Kind::Diff, Kind::Deriv});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, std::max(1, max_degree));
  std::uniform_int_distribution<int> letter(0, 3 * dim() - 1);
  for (std::size_t k = 0; k < sample_count; ++k) {
    Word w;
    int l = len(rng);
    for (int p = 0; p < l; ++p) {
      int code = letter(rng);
      w.push_back({static_cast<Kind>(code / dim()), static_cast<std::uint8_t>(code % dim())});
    }
    ++rep.samples;
    AlgebraElement e(w);
    if (normal_form(e, Strategy::leftmost) != normal_form(e, Strategy::rightmost)) rep.mismatches.push_back(w);
  }
  return rep;
}

std::string RewriteSystem::to_string(const AlgebraElement& e) const { return element_to_string(e, alphabet_); }

AlgebraElement RewriteSystem::parse(const std::string& text) const {
  return parse_element(text, alphabet_, aux_symbols_);
}

// ---------------------------------------------------------------------------
// Deriving the rules

namespace {

/// Rules rewriting the pivot monomials of the relation rows
/// Σ_{kl} rows(r, k*n + l) g^k g^l = 0.
std::vector<RewriteRule> quadratic_rules(const Alphabet& alpha, Kind kind, const Matrix& rows, const char* family) {
  const int n = alpha.dim();
  std::vector<std::pair<int, int>> mons;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) mons.emplace_back(k, l);
  }
  std::sort(mons.begin(), mons.end(), [&](const auto& a, const auto& b) {
    auto ka = std::make_pair(alpha.rank_of_index(a.first), alpha.rank_of_index(a.second));
    auto kb = std::make_pair(alpha.rank_of_index(b.first), alpha.rank_of_index(b.second));
    return ka > kb;
  });
  Matrix m(rows.rows(), static_cast<Eigen::Index>(mons.size()));
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < mons.size(); ++c) {
      m(r, static_cast<Eigen::Index>(c)) = rows(r, mons[c].first * n + mons[c].second);
    }
  }
  auto red = rref<Scalar>(m);
  auto word_of = [&](std::size_t c) {
    return Word{alpha.at_index(kind, mons[c].first), alpha.at_index(kind, mons[c].second)};
  };
  std::vector<RewriteRule> out;
  for (std::size_t r = 0; r < red.pivots.size(); ++r) {
    auto p = static_cast<std::size_t>(red.pivots[r]);
    RewriteRule rule;
    Word lhs = word_of(p);
    rule.first = lhs[0];
    rule.second = lhs[1];
    rule.family = family;
    for (std::size_t c = p + 1; c < mons.size(); ++c) {
      const Scalar& v = red.reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (!v.is_zero()) rule.rhs.add(word_of(c), -v);
    }
    out.push_back(std::move(rule));
  }
  return out;
}

Matrix deriv_rows(const LegMatrix& f, DerivConvention conv) {
  const int n = f.base_dim();
  const Eigen::Index size = f.size();
  LegMatrix m = LegMatrix::identity(n) - f;
  Matrix out = Matrix::Constant(size, size, Scalar(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Eigen::Index row = i * n + j;
          switch (conv) {
            case DerivConvention::right_kl: out(row, k * n + l) = m(k, l, i, j); break;
            case DerivConvention::right_lk: out(row, l * n + k) = m(k, l, i, j); break;
            case DerivConvention::left_kl: out(row, k * n + l) = m(i, j, k, l); break;
            case DerivConvention::left_lk: out(row, l * n + k) = m(i, j, k, l); break;
            case DerivConvention::none: break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

RewriteSystem build_rewrite_system(const CalculusData& data) {
  RewriteSystem sys;
  sys.alphabet_ = data.alphabet;
  sys.aux_symbols_ = data.aux_symbols;
  sys.deriv_convention_ = data.deriv_convention;
  sys.degree_cap_ = data.degree_cap;
  sys.b_ = data.b;
  sys.c_ = data.c;
  sys.d_ = data.d;
  sys.f_ = data.f;
  const int n = data.alphabet.dim();
  for (const LegMatrix* m : {&data.b, &data.c, &data.d, &data.f}) {
    if (m->base_dim() != n || m->legs() != 2) throw std::invalid_argument("matrix shape does not match the alphabet");
  }
  sys.table_.assign(static_cast<std::size_t>(9 * n * n), std::nullopt);
  const Alphabet& alpha = sys.alphabet_;
  auto e = LegMatrix::identity(n);

  for (auto& r : quadratic_rules(alpha, Kind::Coord, (e - data.b).matrix(), "coord")) sys.set_rule(std::move(r));
  for (auto& r : quadratic_rules(alpha, Kind::Diff, (e + data.d).matrix(), "diff")) sys.set_rule(std::move(r));
  if (data.deriv_convention != DerivConvention::none) {
    for (auto& r : quadratic_rules(alpha, Kind::Deriv, deriv_rows(data.f, data.deriv_convention), "deriv-deriv")) {
      sys.set_rule(std::move(r));
    }
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      // ξ^a x^b -> D^{ab}_{ij} x^i ξ^j
      RewriteRule dc{alpha.at_index(Kind::Diff, a), alpha.at_index(Kind::Coord, b), {}, "diff-coord"};
      // ∂_a x^b -> δ + C^{bj}_{al} x^l ∂_j
      RewriteRule pc{alpha.at_index(Kind::Deriv, a), alpha.at_index(Kind::Coord, b), {}, "deriv-coord"};
      // ∂_a ξ^b -> D^{bj}_{al} ξ^l ∂_j
      RewriteRule pd{alpha.at_index(Kind::Deriv, a), alpha.at_index(Kind::Diff, b), {}, "deriv-diff"};
      if (a == b) pc.rhs.add({}, Scalar(1));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          dc.rhs.add({alpha.at_index(Kind::Coord, i), alpha.at_index(Kind::Diff, j)}, data.d(a, b, i, j));
          pc.rhs.add({alpha.at_index(Kind::Coord, j), alpha.at_index(Kind::Deriv, i)}, data.c(b, i, a, j));
          pd.rhs.add({alpha.at_index(Kind::Diff, j), alpha.at_index(Kind::Deriv, i)}, data.d(b, i, a, j));
        }
      }
      sys.set_rule(std::move(dc));
      sys.set_rule(std::move(pc));
      sys.set_rule(std::move(pd));
    }
  }

  if (data.central) {
    AlgebraElement rel = sys.normal_form(*data.central) - AlgebraElement(Scalar::aux(data.central_symbol));
    if (rel.is_zero()) throw RuleError("central element reduces to its value symbol");
    auto lead = std::prev(rel.terms().end());
    const Word lhs = lead->first;
    const Scalar lc = lead->second;
    if (lhs.size() != 2) throw RuleError("quotient relation must have a quadratic leading monomial");
    if (!lc.is_monomial()) throw RuleError("quotient relation has a non-invertible leading coefficient");
    RewriteRule q{lhs[0], lhs[1], {}, "quotient"};
    Scalar inv = lc.inverse();
    for (const auto& [w, c] : rel.terms()) {
      if (w != lhs) q.rhs.add(w, -c * inv);
    }
    sys.quotient_ = q;
    sys.set_rule(std::move(q));
  }
  return sys;
}

std::vector<DerivConventionTrial> select_deriv_conventions(CalculusData data) {
  std::vector<DerivConventionTrial> out;
  for (auto conv : deriv_convention_candidates()) {
    DerivConventionTrial t;
    t.convention = conv;
    data.deriv_convention = conv;
    try {
      auto sys = build_rewrite_system(data);
      t.built = true;
      const int n = sys.dim();
      // ∂∂g overlaps for every third letter g.
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          for (Kind k : {Kind::Coord, Kind::Diff, Kind::Deriv}) {
            for (int c = 0; c < n; ++c) {
              Word w{{Kind::Deriv, static_cast<std::uint8_t>(a)},
                     {Kind::Deriv, static_cast<std::uint8_t>(b)},
                     {k, static_cast<std::uint8_t>(c)}};
              ++t.confluence.overlaps;
              AlgebraElement e(w);
              if (sys.normal_form(e, Strategy::leftmost) != sys.normal_form(e, Strategy::rightmost)) {
                t.confluence.mismatches.push_back(w);
              }
            }
          }
        }
      }
    } catch (const std::exception& ex) {
      t.error = ex.what();
    }
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text

std::string element_to_string(const AlgebraElement& e, const Alphabet& alphabet) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    bool negative = c.prints_negative();
    Scalar mag = negative ? -c : c;
    std::string body;
    if (w.empty()) {
      body = mag.to_string();
      if (mag.needs_parens() && negative) body = "(" + body + ")";
    } else if (mag.is_one()) {
      body = alphabet.word_string(w);
    } else {
      std::string ct = mag.to_string();
      if (mag.needs_parens()) ct = "(" + ct + ")";
      body = ct + "*" + alphabet.word_string(w);
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

namespace {

class ElementParser {
 public:
  ElementParser(const std::string& text, const Alphabet& alphabet, const std::set<std::string>& aux)
      : text_(text), alpha_(alphabet), aux_(aux) {
    for (int r = 0; r < alpha_.dim(); ++r) names_.push_back(alpha_.name_of_rank(r));
  }

  AlgebraElement parse() {
    AlgebraElement e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool starts_with(const std::string& s) const { return text_.compare(pos_, s.size(), s) == 0; }

  AlgebraElement expr() {
    AlgebraElement e = term();
    for (;;) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  AlgebraElement term() {
    AlgebraElement e = factor();
    for (;;) {
      if (accept('*')) {
        e = concat(e, factor());
      } else if (peek('/')) {
        std::size_t at = pos_;
        ++pos_;
        AlgebraElement d = factor();
        if (!d.is_scalar()) {
          pos_ = at;
          fail("division by a non-scalar");
        }
        Scalar v = d.constant_term();
        if (v.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        if (!v.is_monomial()) {
          pos_ = at;
          fail("division by a non-monomial auxiliary expression");
        }
        e = e.scaled(v.inverse());
      } else {
        return e;
      }
    }
  }

  int signed_int() {
    skip();
    bool paren = accept('(');
    skip();
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int v = std::stoi(text_.substr(start, pos_ - start));
    if (paren && !accept(')')) fail("expected ')'");
    return neg ? -v : v;
  }

  AlgebraElement factor() {
    AlgebraElement base = atom();
    if (accept('^')) {
      std::size_t at = pos_;
      int k = signed_int();
      if (base.is_scalar()) {
        Scalar v = base.constant_term();
        if (k < 0 && (v.is_zero() || !v.is_monomial())) {
          pos_ = at;
          fail("negative power of a non-invertible scalar");
        }
        return AlgebraElement(v.is_zero() ? (k == 0 ? Scalar(1) : Scalar(0)) : v.pow(k));
      }
      if (k < 0) {
        pos_ = at;
        fail("negative power of a non-scalar element");
      }
      AlgebraElement out(Scalar(1));
      for (int p = 0; p < k; ++p) out = concat(out, base);
      return out;
    }
    return base;
  }

  std::optional<int> match_name() {
    std::size_t best = 0;
    std::optional<int> rank;
    for (std::size_t r = 0; r < names_.size(); ++r) {
      const auto& nm = names_[r];
      if (nm.size() > best && starts_with(nm)) {
        best = nm.size();
        rank = static_cast<int>(r);
      }
    }
    if (rank) pos_ += best;
    return rank;
  }

  AlgebraElement atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      AlgebraElement e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (accept('-')) return -factor();
    for (char op : {'d', 'D'}) {
      if (starts_with(std::string(1, op) + "(")) {
        std::size_t save = pos_;
        pos_ += 2;
        skip();
        auto rank = match_name();
        if (rank && accept(')')) {
          return AlgebraElement::generator(op == 'd' ? Kind::Diff : Kind::Deriv, *rank);
        }
        pos_ = save;
        if (!rank) fail(std::string("expected a generator name after ") + op + "(");
        fail("expected ')'");
      }
    }
    if (auto rank = match_name()) return AlgebraElement::generator(Kind::Coord, *rank);
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return AlgebraElement(Scalar(GaussRational(mpq_class(text_.substr(start, pos_ - start)))));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    std::string ident = text_.substr(start, pos_ - start);
    if (ident == "i") return AlgebraElement(Scalar::i());
    if (ident == "s") return AlgebraElement(Scalar::s());
    if (ident == "q") return AlgebraElement(Scalar::q());
    if (!ident.empty() && aux_.count(ident)) return AlgebraElement(Scalar::aux(ident));
    pos_ = start;
    fail(ident.empty() ? "unexpected character" : "unknown symbol '" + ident + "'");
  }

  const std::string& text_;
  const Alphabet& alpha_;
  const std::set<std::string>& aux_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement parse_element(const std::string& text, const Alphabet& alphabet,
                             const std::set<std::string>& aux_symbols) {
  return ElementParser(text, alphabet, aux_symbols).parse();
}

}  // namespace qplane
