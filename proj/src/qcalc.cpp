#include "qplane/qcalc.hpp"

#include <algorithm>

namespace qplane {

std::vector<Word> normal_words(const RewriteSystem& sys, Kind kind, int max_degree) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int deg = 1; deg <= max_degree; ++deg) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (int r = 0; r < sys.dim(); ++r) {
        Generator g{kind, static_cast<std::uint8_t>(r)};
        // Rules are quadratic, so only the new adjacent pair can be a redex.
        if (!w.empty() && sys.rule(w.back(), g)) continue;
        Word nw = w;
        nw.push_back(g);
        next.push_back(std::move(nw));
      }
    }
    std::sort(next.begin(), next.end(), WordLess{});
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

int coordinate_degree(const AlgebraElement& e) {
  int best = 0;
  for (const auto& [w, c] : e.terms()) {
    int n = static_cast<int>(std::count_if(w.begin(), w.end(), [](const Generator& g) { return g.kind == Kind::Coord; }));
    best = std::max(best, n);
  }
  return best;
}

int diff_degree(const AlgebraElement& e) {
  int deg = -2;
  for (const auto& [w, c] : e.terms()) {
    int n = static_cast<int>(std::count_if(w.begin(), w.end(), [](const Generator& g) { return g.kind == Kind::Diff; }));
    if (deg == -2) deg = n;
    else if (deg != n) return -1;
  }
  return deg == -2 ? 0 : deg;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(std::map<int, AlgebraElement> components) {
  for (auto& [dir, coeff] : components) add(dir, coeff);
}

VectorField VectorField::from_element(const AlgebraElement& e) {
  VectorField out;
  for (const auto& [w, c] : e.terms()) {
    if (w.empty() || w.back().kind != Kind::Deriv) throw std::invalid_argument("vector field terms must end in a derivative");
    Word prefix(w.begin(), w.end() - 1);
    for (const auto& g : prefix) {
      if (g.kind != Kind::Coord) throw std::invalid_argument("vector field coefficients must be functions");
    }
    out.add(w.back().rank, AlgebraElement(prefix, c));
  }
  return out;
}

void VectorField::add(int direction, const AlgebraElement& coeff) {
  if (!coeff.only_kind(Kind::Coord)) throw std::invalid_argument("vector field coefficients must be functions");
  auto& slot = components_[direction];
  slot += coeff;
  if (slot.is_zero()) components_.erase(direction);
}

VectorField VectorField::scaled(const Scalar& c) const {
  VectorField out;
  for (const auto& [dir, coeff] : components_) out.add(dir, coeff.scaled(c));
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (const auto& [dir, coeff] : o.components_) add(dir, coeff);
  return *this;
}

AlgebraElement VectorField::to_element() const {
  AlgebraElement out;
  for (const auto& [dir, coeff] : components_) {
    out += concat(coeff, AlgebraElement::generator(Kind::Deriv, dir));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forms

WedgeForm WedgeForm::make(const AlgebraElement& body, const RewriteSystem& sys) {
  WedgeForm w;
  w.body_ = sys.normal_form(body);
  for (const auto& [word, c] : w.body_.terms()) {
    for (const auto& g : word) {
      if (g.kind == Kind::Deriv) throw std::invalid_argument("a form cannot contain derivatives");
    }
  }
  int k = diff_degree(w.body_);
  if (k < 0) throw std::invalid_argument("form is not homogeneous in the differentials");
  w.degree_ = k;
  return w;
}

WedgeForm WedgeForm::zero(int degree) {
  WedgeForm w;
  w.degree_ = degree;
  return w;
}

WedgeForm WedgeForm::scaled(const Scalar& c) const {
  WedgeForm w = *this;
  w.body_ = body_.scaled(c);
  return w;
}

void TensorForm::add(const Key& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar TensorForm::coeff(const Key& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar(0) : it->second;
}

TensorForm TensorForm::scaled(const Scalar& c) const {
  TensorForm out(degree_);
  for (const auto& [k, v] : terms_) out.add(k, v * c);
  return out;
}

TensorForm operator-(const TensorForm& a, const TensorForm& b) {
  TensorForm out = a;
  for (const auto& [k, v] : b.terms_) out.add(k, -v);
  return out;
}

AlgebraElement TensorForm::one_form_body() const {
  if (degree_ != 1) throw std::invalid_argument("one_form_body: tensor degree must be 1");
  AlgebraElement out;
  for (const auto& [k, v] : terms_) {
    Word w = k.coord;
    w.push_back({Kind::Diff, static_cast<std::uint8_t>(k.slots[0])});
    out.add(w, v);
  }
  return out;
}

std::string TensorForm::to_string(const Alphabet& alphabet) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    bool negative = v.prints_negative();
    Scalar mag = negative ? -v : v;
    std::string basis;
    if (!k.coord.empty()) basis = alphabet.word_string(k.coord);
    std::string slots;
    for (std::size_t p = 0; p < k.slots.size(); ++p) {
      if (p) slots += "⊗";
      slots += "d(" + alphabet.name_of_rank(k.slots[p]) + ")";
    }
    if (!slots.empty()) basis += basis.empty() ? slots : "*" + slots;
    std::string body;
    if (basis.empty()) {
      body = mag.to_string();
    } else if (mag.is_one()) {
      body = basis;
    } else {
      body = (mag.needs_parens() ? "(" + mag.to_string() + ")" : mag.to_string()) + "*" + basis;
    }
    if (first) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

namespace {

/// Splits a word into its leading coordinate block and the remainder.
std::pair<Word, Word> split_coord(const Word& w) {
  auto it = std::find_if(w.begin(), w.end(), [](const Generator& g) { return g.kind != Kind::Coord; });
  return {Word(w.begin(), it), Word(it, w.end())};
}

}  // namespace

WedgeForm d_function(const AlgebraElement& f, const RewriteSystem& sys) {
  if (!f.only_kind(Kind::Coord)) throw std::invalid_argument("d_function: argument must be a function");
  AlgebraElement out;
  for (int r = 0; r < sys.dim(); ++r) {
    AlgebraElement part = sys.derivative_action(r, f);
    if (!part.is_zero()) out += concat(sys.xi(r), part);
  }
  WedgeForm w = WedgeForm::make(out, sys);
  return w.is_zero() ? WedgeForm::zero(1) : w;
}

WedgeForm d_form(const WedgeForm& w, const RewriteSystem& sys) {
  AlgebraElement out;
  for (const auto& [word, c] : w.body().terms()) {
    auto [coord, rest] = split_coord(word);
    if (coord.empty()) continue;
    WedgeForm df = d_function(AlgebraElement(coord), sys);
    out += concat(df.body(), AlgebraElement(rest, c));
  }
  WedgeForm r = WedgeForm::make(out, sys);
  return r.is_zero() ? WedgeForm::zero(w.degree() + 1) : r;
}

WedgeForm wedge(const WedgeForm& a, const WedgeForm& b, const RewriteSystem& sys) {
  WedgeForm r = WedgeForm::make(concat(a.body(), b.body()), sys);
  return r.is_zero() ? WedgeForm::zero(a.degree() + b.degree()) : r;
}

TensorForm to_tensor_words(const AlgebraElement& body, const LegMatrix& gamma, const RewriteSystem& sys) {
  const auto& d = sys.d_matrix();
  auto e = LegMatrix::identity(d.base_dim());
  if (!((d + e) * (e - gamma)).is_zero()) {
    throw GammaConditionError("Gamma does not satisfy (D + E)(E - Gamma) = 0; the wedge-to-tensor map is not defined");
  }
  const Alphabet& alpha = sys.alphabet();
  const int n = sys.dim();
  TensorForm out(2);
  for (const auto& [w, c] : body.terms()) {
    auto [coord, rest] = split_coord(w);
    if (rest.size() != 2 || rest[0].kind != Kind::Diff || rest[1].kind != Kind::Diff) {
      throw std::invalid_argument("to_tensor expects words f*d(a)*d(b)");
    }
    int a = rest[0].rank, b = rest[1].rank;
    out.add({coord, {a, b}}, c);
    int ia = alpha.index_of_rank(a), ib = alpha.index_of_rank(b);
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const Scalar& g = gamma(ia, ib, k, l);
        if (!g.is_zero()) out.add({coord, {alpha.rank_of_index(k), alpha.rank_of_index(l)}}, -c * g);
      }
    }
  }
  return out;
}

TensorForm to_tensor(const WedgeForm& w, const LegMatrix& gamma, const RewriteSystem& sys) {
  if (w.degree() != 2) throw std::invalid_argument("to_tensor expects a two-form");
  return to_tensor_words(w.body(), gamma, sys);
}

TensorForm contract(const VectorField& x, const TensorForm& t, const RewriteSystem& sys) {
  if (t.degree() < 1) throw std::invalid_argument("contract: tensor degree must be at least 1");
  TensorForm out(t.degree() - 1);
  std::map<std::pair<int, Word>, std::map<int, AlgebraElement>> cache;
  for (const auto& [dir, f] : x.components()) {
    for (const auto& [key, c] : t.terms()) {
      auto ck = std::make_pair(dir, key.coord);
      auto it = cache.find(ck);
      if (it == cache.end()) it = cache.emplace(ck, sys.transport(dir, AlgebraElement(key.coord))).first;
      auto slot = it->second.find(key.slots[0]);
      if (slot == it->second.end()) continue;
      AlgebraElement prod = sys.multiply(f, slot->second);
      std::vector<int> rest(key.slots.begin() + 1, key.slots.end());
      for (const auto& [u, v] : prod.terms()) out.add({u, rest}, c * v);
    }
  }
  return out;
}

AlgebraElement pair(const VectorField& x, const WedgeForm& alpha, const RewriteSystem& sys) {
  if (alpha.degree() != 1 && !alpha.is_zero()) throw std::invalid_argument("pair expects a one-form");
  TensorForm t(1);
  for (const auto& [w, c] : alpha.body().terms()) {
    auto [coord, rest] = split_coord(w);
    t.add({coord, {rest.at(0).rank}}, c);
  }
  AlgebraElement out;
  for (const auto& [key, c] : contract(x, t, sys).terms()) out.add(key.coord, c);
  return out;
}

AlgebraElement apply_field(const VectorField& x, const AlgebraElement& f, const RewriteSystem& sys) {
  if (!f.only_kind(Kind::Coord)) throw std::invalid_argument("apply_field: argument must be a function");
  AlgebraElement out;
  for (const auto& [dir, coeff] : x.components()) out += sys.multiply(coeff, sys.derivative_action(dir, f));
  return out;
}

// ---------------------------------------------------------------------------
// Reduction modulo a span

AlgebraElement reduce_modulo(const std::vector<AlgebraElement>& span, const AlgebraElement& target) {
  std::set<Word, WordLess> words;
  for (const auto& e : span) {
    for (const auto& [w, c] : e.terms()) words.insert(w);
  }
  if (span.empty() || target.is_zero()) return target;
  // Leading words first so pivots are the largest words.
  std::vector<Word> cols(words.rbegin(), words.rend());
  std::map<Word, Eigen::Index, WordLess> col_of;
  for (std::size_t k = 0; k < cols.size(); ++k) col_of[cols[k]] = static_cast<Eigen::Index>(k);
  Matrix m = Matrix::Constant(static_cast<Eigen::Index>(span.size()), static_cast<Eigen::Index>(cols.size()), Scalar(0));
  for (std::size_t r = 0; r < span.size(); ++r) {
    for (const auto& [w, c] : span[r].terms()) m(static_cast<Eigen::Index>(r), col_of[w]) = c;
  }
  auto red = rref<Scalar>(m);
  AlgebraElement out = target;
  for (std::size_t r = 0; r < red.pivots.size(); ++r) {
    Scalar lead = out.coeff(cols[static_cast<std::size_t>(red.pivots[r])]);
    if (lead.is_zero()) continue;
    for (Eigen::Index c = red.pivots[r]; c < red.reduced.cols(); ++c) {
      const Scalar& v = red.reduced(static_cast<Eigen::Index>(r), c);
      if (!v.is_zero()) out.add(cols[static_cast<std::size_t>(c)], -lead * v);
    }
  }
  return out;
}

FormIdeal::FormIdeal(AlgebraElement kappa, std::shared_ptr<const RewriteSystem> sys)
    : sys_(std::move(sys)), kappa_(std::move(kappa)) {}

std::vector<AlgebraElement> FormIdeal::generators(int k, int max_coord) const {
  std::vector<AlgebraElement> out;
  if (k < 1 || !sys_) return out;
  auto us = normal_words(*sys_, Kind::Coord, max_coord);
  auto thetas = normal_words(*sys_, Kind::Diff, k - 1);
  for (const auto& u : us) {
    for (const auto& th : thetas) {
      if (static_cast<int>(th.size()) != k - 1) continue;
      AlgebraElement g = sys_->normal_form(concat(concat(AlgebraElement(u), kappa_), AlgebraElement(th)));
      if (!g.is_zero()) out.push_back(std::move(g));
    }
  }
  return out;
}

AlgebraElement FormIdeal::reduce(const AlgebraElement& form) const {
  if (!sys_ || form.is_zero()) return form;
  int k = diff_degree(form);
  if (k < 1) return form;
  return reduce_modulo(generators(k, coordinate_degree(form) + 1), form);
}

}  // namespace qplane
