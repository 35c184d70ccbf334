#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qplane/linalg.hpp"

namespace qplane {

enum class Kind : std::uint8_t { Coord = 0, Diff = 1, Deriv = 2 };

/// A generator x^i, ξ^i = dx^i or ∂_i. `rank` is the position in the plane's
/// generator order (0 = smallest), not the matrix index.
struct Generator {
  Kind kind = Kind::Coord;
  std::uint8_t rank = 0;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

using Word = std::vector<Generator>;

/// Number of pairs p < r with kind(w[p]) > kind(w[r]).
int kind_inversions(const Word& w);

/// Termination measure: (kind inversions, degree, lexicographic rank), larger
/// earlier letters ranking higher. Every rewrite step strictly decreases it.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const;
};

/// Finite linear combination of words. Zero coefficients are never stored.
class AlgebraElement {
 public:
  using Terms = std::map<Word, Scalar, WordLess>;

  AlgebraElement() = default;
  AlgebraElement(Scalar c);  // NOLINT(google-explicit-constructor)
  AlgebraElement(Word w, Scalar c = Scalar(1));

  static AlgebraElement generator(Kind kind, int rank);

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of w (zero if absent).
  Scalar coeff(const Word& w) const;
  /// Coefficient of the empty word.
  Scalar constant_term() const { return coeff({}); }
  /// True when every word consists of generators of the given kind.
  bool only_kind(Kind kind) const;
  bool is_scalar() const;
  int max_degree() const;

  void add(const Word& w, const Scalar& c);
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator-() const;
  AlgebraElement scaled(const Scalar& c) const;

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Scalar& c, const AlgebraElement& a) { return a.scaled(c); }
  /// Word concatenation, no reduction.
  friend AlgebraElement concat(const AlgebraElement& a, const AlgebraElement& b);

  AlgebraElement specialize(const Specialization& sp) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// Names and orderings of the plane's generators.
class Alphabet {
 public:
  Alphabet() = default;
  /// `names_by_index[i]` names matrix index i; `rank_of_index[i]` its rank.
  Alphabet(std::vector<std::string> names_by_index, std::vector<int> rank_of_index);

  int dim() const { return static_cast<int>(names_.size()); }
  int rank_of_index(int index) const { return rank_of_index_[static_cast<std::size_t>(index)]; }
  int index_of_rank(int rank) const { return index_of_rank_[static_cast<std::size_t>(rank)]; }
  const std::string& name_of_rank(int rank) const { return names_[static_cast<std::size_t>(index_of_rank(rank))]; }
  const std::string& name_of_index(int index) const { return names_[static_cast<std::size_t>(index)]; }
  const std::vector<std::string>& names_by_index() const { return names_; }
  /// Rank of a generator name; nullopt if unknown.
  std::optional<int> rank_of(const std::string& name) const;
  /// Generator with the given kind at matrix index.
  Generator at_index(Kind kind, int index) const {
    return {kind, static_cast<std::uint8_t>(rank_of_index(index))};
  }

  std::string letter(const Generator& g) const;
  std::string word_string(const Word& w) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> rank_of_index_;
  std::vector<int> index_of_rank_;
};

struct RewriteRule {
  Generator first;
  Generator second;
  AlgebraElement rhs;
  std::string family;  ///< "coord", "diff", "diff-coord", "deriv-coord", "deriv-diff", "deriv-deriv", "quotient"
};

enum class Strategy { leftmost, rightmost };

/// Which reading of the ∂∂ exchange relation to use. Each builds rows of
/// (E - F) against a pair of derivatives:
///   right_kl:  Σ ∂_k ∂_l (E-F)^{kl}_{ij} = 0
///   right_lk:  Σ ∂_l ∂_k (E-F)^{kl}_{ij} = 0
///   left_kl:   Σ (E-F)^{ij}_{kl} ∂_k ∂_l = 0
///   left_lk:   Σ (E-F)^{ij}_{kl} ∂_l ∂_k = 0
enum class DerivConvention { none, right_kl, right_lk, left_kl, left_lk };

std::string to_string(DerivConvention c);
std::vector<DerivConvention> deriv_convention_candidates();

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything the rewrite system is derived from. Matrices are indexed by
/// matrix index; the alphabet carries the generator order.
struct CalculusData {
  Alphabet alphabet;
  LegMatrix b, c, d, f;
  DerivConvention deriv_convention = DerivConvention::none;
  /// Optional quotient: central element set equal to an auxiliary symbol.
  std::optional<AlgebraElement> central;
  std::string central_symbol = "rho";
  std::set<std::string> aux_symbols = {"rho"};
  int degree_cap = 16;
};

struct ConfluenceReport {
  std::size_t samples = 0;
  std::size_t overlaps = 0;
  std::vector<Word> mismatches;
  bool passed() const { return mismatches.empty(); }
};

class RewriteSystem {
 public:
  RewriteSystem() = default;

  const Alphabet& alphabet() const { return alphabet_; }
  int dim() const { return alphabet_.dim(); }
  int degree_cap() const { return degree_cap_; }
  const std::set<std::string>& aux_symbols() const { return aux_symbols_; }
  DerivConvention deriv_convention() const { return deriv_convention_; }
  /// The matrices the rules were derived from.
  const LegMatrix& b_matrix() const { return b_; }
  const LegMatrix& c_matrix() const { return c_; }
  const LegMatrix& d_matrix() const { return d_; }
  const LegMatrix& f_matrix() const { return f_; }
  /// The quotient rule, when the plane declares a central element.
  const std::optional<RewriteRule>& quotient_rule() const { return quotient_; }

  /// Rule for the adjacent pair (a, b), or nullptr.
  const RewriteRule* rule(const Generator& a, const Generator& b) const;
  std::vector<RewriteRule> rules() const;
  /// All rules of one family, in pattern order.
  std::vector<RewriteRule> rules(const std::string& family) const;

  AlgebraElement normal_form(const AlgebraElement& e, Strategy strategy = Strategy::leftmost) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  bool is_normal(const AlgebraElement& e) const;

  /// Coordinate generator x^{rank}, differential, derivative.
  AlgebraElement x(int rank) const { return AlgebraElement::generator(Kind::Coord, rank); }
  AlgebraElement xi(int rank) const { return AlgebraElement::generator(Kind::Diff, rank); }
  AlgebraElement partial(int rank) const { return AlgebraElement::generator(Kind::Deriv, rank); }

  /// Function part of nf(∂_rank · f). Throws std::invalid_argument unless f is pure Coord.
  AlgebraElement derivative_action(int rank, const AlgebraElement& f) const;
  /// The h_j with nf(∂_rank · f) = derivative_action + Σ h_j ∂_j, keyed by rank j.
  std::map<int, AlgebraElement> transport(int rank, const AlgebraElement& f) const;
  /// Commutes with every coordinate generator (and optionally every generator).
  bool is_central(const AlgebraElement& e, bool all_kinds = false) const;

  ConfluenceReport confluence_selftest(std::size_t sample_count, int max_degree, std::uint64_t seed) const;
  /// Checks all length-3 words whose letters are in `kinds`.
  ConfluenceReport overlap_test(const std::vector<Kind>& kinds) const;

  /// Replace one rule's right-hand side (testing the self-test harness).
  void override_rule(const Generator& a, const Generator& b, AlgebraElement rhs);

  std::string to_string(const AlgebraElement& e) const;
  AlgebraElement parse(const std::string& text) const;

  friend RewriteSystem build_rewrite_system(const CalculusData& data);

 private:
  std::size_t code(const Generator& g) const {
    return static_cast<std::size_t>(g.kind) * static_cast<std::size_t>(dim()) + g.rank;
  }
  std::size_t slot(const Generator& a, const Generator& b) const { return code(a) * 3 * dim() + code(b); }
  void set_rule(RewriteRule r);
  void check_degree(const Word& w) const;
  std::optional<std::size_t> find_redex(const Word& w, Strategy strategy) const;

  Alphabet alphabet_;
  LegMatrix b_, c_, d_, f_;
  std::vector<std::optional<RewriteRule>> table_;
  std::optional<RewriteRule> quotient_;
  std::set<std::string> aux_symbols_{"rho"};
  DerivConvention deriv_convention_ = DerivConvention::none;
  int degree_cap_ = 16;
};

RewriteSystem build_rewrite_system(const CalculusData& data);

/// Result of trying each ∂∂ convention against the ∂∂x, ∂∂ξ and ∂∂∂ overlaps.
struct DerivConventionTrial {
  DerivConvention convention;
  bool built = false;
  std::string error;
  ConfluenceReport confluence;
  bool survives() const { return built && confluence.passed(); }
};

std::vector<DerivConventionTrial> select_deriv_conventions(CalculusData data);

/// Element grammar: plane generator names, d(name), D(name), scalars, "*",
/// "/" by scalars, "^" with non-negative exponents, "+", "-", parentheses.
AlgebraElement parse_element(const std::string& text, const Alphabet& alphabet,
                             const std::set<std::string>& aux_symbols = {"rho"});
std::string element_to_string(const AlgebraElement& e, const Alphabet& alphabet);

}  // namespace qplane
