#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qplane/qcalc.hpp"

namespace qplane {

struct SymplecticForm {
  WedgeForm wedge;
  Scalar scale{1};
  LegMatrix gamma;
  TensorForm tensor;  ///< scale * to_tensor(wedge, gamma)
  /// Forms are compared modulo this ideal (submanifold planes).
  std::optional<FormIdeal> ideal;

  static SymplecticForm make(const WedgeForm& wedge, const Scalar& scale, const LegMatrix& gamma,
                             const RewriteSystem& sys, std::optional<FormIdeal> ideal = std::nullopt);
};

enum class SolveStatus { unique, family, none };
std::string to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::none;
  VectorField particular;
  /// Canonical basis of the solution directions (projected onto the field part).
  std::vector<VectorField> kernel;
  int degree_bound = 1;
  /// The particular solution was picked by X_f(f) = 0 among a family.
  bool gauge_applied = false;
  /// contract(particular, ω) + df vanishes (modulo the plane's ideal).
  bool residual_ok = false;

  /// True when `x` lies in particular + span(kernel).
  bool contains(const VectorField& x) const;
};

class NoHamiltonianError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduces a form modulo the symplectic form's ideal (identity when none).
AlgebraElement reduce_form(const SymplecticForm& omega, const AlgebraElement& form);

bool is_closed(const SymplecticForm& omega, const RewriteSystem& sys);

struct NondegeneracyReport {
  bool nondegenerate = false;
  int degree_bound = 1;
  /// Basis of {X : X⌟ω = 0} in the ansatz, before any admissibility constraint.
  std::vector<VectorField> ansatz_kernel;
  std::optional<VectorField> witness;
};

/// Linear map whose zero set picks the admissible fields (e.g. X(r²) on a sphere).
using FieldConstraint = std::function<AlgebraElement(const VectorField&)>;

/// Nondegeneracy up to the ansatz degree: X with coefficients of degree <= max_degree.
/// With a constraint, only kernel fields it annihilates count as degeneracies.
NondegeneracyReport is_nondegenerate(const SymplecticForm& omega, const RewriteSystem& sys, int max_degree,
                                     const FieldConstraint& constraint = {});

/// Solves X⌟ω = -df over the ansatz of coefficient degree <= max_degree.
SolveReport hamiltonian_vector_field(const AlgebraElement& f, const SymplecticForm& omega, const RewriteSystem& sys,
                                     int max_degree = 1);

/// Residual contract(X, ω) + df, reduced.
AlgebraElement hamiltonian_residual(const VectorField& x, const AlgebraElement& f, const SymplecticForm& omega,
                                    const RewriteSystem& sys);

struct BracketValue {
  AlgebraElement value;
  /// X_f was not unique; the canonical particular solution was used.
  bool non_unique = false;
  bool gauge_applied = false;
};

/// [f, g] = -X_f g. Throws NoHamiltonianError when X_f does not exist within the degree bound.
BracketValue poisson_bracket_report(const AlgebraElement& f, const AlgebraElement& g, const SymplecticForm& omega,
                                    const RewriteSystem& sys, int max_degree = 1);
AlgebraElement poisson_bracket(const AlgebraElement& f, const AlgebraElement& g, const SymplecticForm& omega,
                               const RewriteSystem& sys, int max_degree = 1);

/// x^i ↦ [x^i, H], keyed by generator rank.
std::map<int, AlgebraElement> equations_of_motion(const AlgebraElement& h, const SymplecticForm& omega,
                                                  const RewriteSystem& sys, int max_degree = 1);

}  // namespace qplane
