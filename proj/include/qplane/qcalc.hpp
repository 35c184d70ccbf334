#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qplane/ncalg.hpp"

namespace qplane {

/// Normal words of one kind with length <= max_degree, shortest first, then
/// in ascending word order.
std::vector<Word> normal_words(const RewriteSystem& sys, Kind kind, int max_degree);

/// Σ_i a_i ∂_i with function coefficients, keyed by direction rank.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::map<int, AlgebraElement> components);
  /// Reads an element whose words are functions followed by a single ∂.
  static VectorField from_element(const AlgebraElement& e);

  const std::map<int, AlgebraElement>& components() const& { return components_; }
  std::map<int, AlgebraElement> components() && { return std::move(components_); }
  bool is_zero() const { return components_.empty(); }
  void add(int direction, const AlgebraElement& coeff);
  VectorField scaled(const Scalar& c) const;
  VectorField& operator+=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a += b.scaled(Scalar(-1)); }
  friend bool operator==(const VectorField&, const VectorField&) = default;

  AlgebraElement to_element() const;

 private:
  std::map<int, AlgebraElement> components_;
};

/// A k-form in the ξ-algebra: functions left, k differentials right, normal form.
class WedgeForm {
 public:
  WedgeForm() = default;
  /// Normal-forms `body` and checks it is homogeneous of differential degree k.
  static WedgeForm make(const AlgebraElement& body, const RewriteSystem& sys);
  static WedgeForm zero(int degree);

  int degree() const { return degree_; }
  const AlgebraElement& body() const { return body_; }
  bool is_zero() const { return body_.is_zero(); }
  WedgeForm scaled(const Scalar& c) const;
  friend bool operator==(const WedgeForm&, const WedgeForm&) = default;

 private:
  int degree_ = 0;
  AlgebraElement body_;
};

/// Tensor-valued form: (coordinate word, ordered slot ranks) -> coefficient.
class TensorForm {
 public:
  struct Key {
    Word coord;
    std::vector<int> slots;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  TensorForm() = default;
  explicit TensorForm(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  const std::map<Key, Scalar>& terms() const& { return terms_; }
  std::map<Key, Scalar> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  void add(const Key& k, const Scalar& c);
  Scalar coeff(const Key& k) const;
  TensorForm scaled(const Scalar& c) const;
  friend bool operator==(const TensorForm&, const TensorForm&) = default;
  friend TensorForm operator-(const TensorForm& a, const TensorForm& b);
  /// Degree 1 tensors are one-forms; reads them back into the ξ-algebra.
  AlgebraElement one_form_body() const;

  std::string to_string(const Alphabet& alphabet) const;

 private:
  int degree_ = 0;
  std::map<Key, Scalar> terms_;
};

class GammaConditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

WedgeForm d_function(const AlgebraElement& f, const RewriteSystem& sys);
WedgeForm d_form(const WedgeForm& w, const RewriteSystem& sys);
WedgeForm wedge(const WedgeForm& a, const WedgeForm& b, const RewriteSystem& sys);

/// f ξ^a ξ^b -> f (ξ^a⊗ξ^b - Γ^{ab}_{kl} ξ^k⊗ξ^l). Refuses a Γ with (D+E)(E-Γ) != 0.
TensorForm to_tensor(const WedgeForm& w, const LegMatrix& gamma, const RewriteSystem& sys);
/// Same map applied word by word without normal-forming first.
TensorForm to_tensor_words(const AlgebraElement& body, const LegMatrix& gamma, const RewriteSystem& sys);

/// <X, α> via ∂-transport of the coefficient functions.
AlgebraElement pair(const VectorField& x, const WedgeForm& alpha, const RewriteSystem& sys);
/// Contraction on the first slot.
TensorForm contract(const VectorField& x, const TensorForm& t, const RewriteSystem& sys);
AlgebraElement apply_field(const VectorField& x, const AlgebraElement& f, const RewriteSystem& sys);

/// Forms modulo the left ideal generated by a one-form κ (for a submanifold
/// whose defining function has dκ-conormal κ): spans of nf(u κ θ) with u a
/// normal coordinate word and θ a normal differential word.
class FormIdeal {
 public:
  FormIdeal() = default;
  FormIdeal(AlgebraElement kappa, std::shared_ptr<const RewriteSystem> sys);

  const AlgebraElement& kappa() const { return kappa_; }
  /// Spanning set for forms of differential degree k and coordinate degree <= max_coord.
  std::vector<AlgebraElement> generators(int k, int max_coord) const;
  /// Remainder of a normal-form element after reduction by the span.
  AlgebraElement reduce(const AlgebraElement& form) const;
  bool contains(const AlgebraElement& form) const { return reduce(form).is_zero(); }

 private:
  std::shared_ptr<const RewriteSystem> sys_;
  AlgebraElement kappa_;
};

/// Coordinate degree of the coefficient part (number of Coord letters, maximum over words).
int coordinate_degree(const AlgebraElement& e);
/// Number of Diff letters, or -1 if words disagree.
int diff_degree(const AlgebraElement& e);

/// Row-reduces the family of elements and writes `target` modulo their span.
AlgebraElement reduce_modulo(const std::vector<AlgebraElement>& span, const AlgebraElement& target);

}  // namespace qplane
