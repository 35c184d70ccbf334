#include "qplane/symp.hpp"

#include <algorithm>

namespace qplane {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::unique: return "unique";
    case SolveStatus::family: return "family";
    case SolveStatus::none: return "none";
  }
  return "none";
}

SymplecticForm SymplecticForm::make(const WedgeForm& wedge, const Scalar& scale, const LegMatrix& gamma,
                                    const RewriteSystem& sys, std::optional<FormIdeal> ideal) {
  SymplecticForm w;
  w.wedge = wedge;
  w.scale = scale;
  w.gamma = gamma;
  w.tensor = to_tensor(wedge, gamma, sys).scaled(scale);
  w.ideal = std::move(ideal);
  return w;
}

AlgebraElement reduce_form(const SymplecticForm& omega, const AlgebraElement& form) {
  return omega.ideal ? omega.ideal->reduce(form) : form;
}

bool is_closed(const SymplecticForm& omega, const RewriteSystem& sys) {
  return reduce_form(omega, d_form(omega.wedge, sys).body()).is_zero();
}

bool SolveReport::contains(const VectorField& x) const {
  if (status == SolveStatus::none) return false;
  std::vector<AlgebraElement> span;
  for (const auto& k : kernel) span.push_back(k.to_element());
  return reduce_modulo(span, (x - particular).to_element()).is_zero();
}

namespace {

/// Unknowns: fields m ∂_i (m a normal coordinate word of degree <= D) and,
/// for planes with an ideal, multipliers of its generators.
struct Ansatz {
  std::vector<VectorField> fields;
  std::vector<AlgebraElement> images;  ///< one column per unknown
};

Ansatz field_ansatz(const SymplecticForm& omega, const RewriteSystem& sys, int max_degree) {
  Ansatz a;
  for (const auto& m : normal_words(sys, Kind::Coord, max_degree)) {
    for (int i = 0; i < sys.dim(); ++i) {
      VectorField x({{i, AlgebraElement(m)}});
      a.images.push_back(contract(x, omega.tensor, sys).one_form_body());
      a.fields.push_back(std::move(x));
    }
  }
  return a;
}

void add_ideal_columns(const SymplecticForm& omega, Ansatz& a, const AlgebraElement& target, int k) {
  if (!omega.ideal) return;
  int deg = coordinate_degree(target);
  for (const auto& im : a.images) deg = std::max(deg, coordinate_degree(im));
  for (auto& g : omega.ideal->generators(k, deg + 1)) a.images.push_back(std::move(g));
}

struct LinearSolution {
  bool consistent = false;
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> kernel;
};

LinearSolution solve_columns(const std::vector<AlgebraElement>& columns, const AlgebraElement& target) {
  std::set<Word, WordLess> words;
  for (const auto& c : columns) {
    for (const auto& [w, v] : c.terms()) words.insert(w);
  }
  for (const auto& [w, v] : target.terms()) words.insert(w);
  std::vector<Word> rows(words.rbegin(), words.rend());
  std::map<Word, Eigen::Index, WordLess> row_of;
  for (std::size_t k = 0; k < rows.size(); ++k) row_of[rows[k]] = static_cast<Eigen::Index>(k);
  const auto ncols = static_cast<Eigen::Index>(columns.size());
  Matrix aug = Matrix::Constant(static_cast<Eigen::Index>(rows.size()), ncols + 1, Scalar(0));
  for (Eigen::Index c = 0; c < ncols; ++c) {
    for (const auto& [w, v] : columns[static_cast<std::size_t>(c)].terms()) aug(row_of[w], c) = v;
  }
  for (const auto& [w, v] : target.terms()) aug(row_of[w], ncols) = v;

  LinearSolution sol;
  auto red = rref<Scalar>(aug);
  if (!red.pivots.empty() && red.pivots.back() == ncols) return sol;
  sol.consistent = true;
  sol.particular.assign(static_cast<std::size_t>(ncols), Scalar(0));
  for (std::size_t r = 0; r < red.pivots.size(); ++r) {
    sol.particular[static_cast<std::size_t>(red.pivots[r])] = red.reduced(static_cast<Eigen::Index>(r), ncols);
  }
  Matrix ns = null_space<Scalar>(aug.leftCols(ncols));
  for (Eigen::Index k = 0; k < ns.cols(); ++k) {
    std::vector<Scalar> v(static_cast<std::size_t>(ncols));
    for (Eigen::Index r = 0; r < ncols; ++r) v[static_cast<std::size_t>(r)] = ns(r, k);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

VectorField combine(const std::vector<VectorField>& fields, const std::vector<Scalar>& coeffs) {
  VectorField out;
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (!coeffs[j].is_zero()) out += fields[j].scaled(coeffs[j]);
  }
  return out;
}

/// Canonical basis of the kernel restricted to the field unknowns.
std::vector<VectorField> projected_kernel(const std::vector<VectorField>& fields,
                                          const std::vector<std::vector<Scalar>>& kernel) {
  const auto nx = static_cast<Eigen::Index>(fields.size());
  if (kernel.empty() || nx == 0) return {};
  Matrix m(static_cast<Eigen::Index>(kernel.size()), nx);
  for (std::size_t r = 0; r < kernel.size(); ++r) {
    for (Eigen::Index c = 0; c < nx; ++c) m(static_cast<Eigen::Index>(r), c) = kernel[r][static_cast<std::size_t>(c)];
  }
  auto red = rref<Scalar>(m);
  std::vector<VectorField> out;
  for (Eigen::Index r = 0; r < red.rank; ++r) {
    std::vector<Scalar> row(static_cast<std::size_t>(nx));
    for (Eigen::Index c = 0; c < nx; ++c) row[static_cast<std::size_t>(c)] = red.reduced(r, c);
    out.push_back(combine(fields, row));
  }
  return out;
}

}  // namespace

NondegeneracyReport is_nondegenerate(const SymplecticForm& omega, const RewriteSystem& sys, int max_degree,
                                     const FieldConstraint& constraint) {
  NondegeneracyReport rep;
  rep.degree_bound = max_degree;
  Ansatz a = field_ansatz(omega, sys, max_degree);
  add_ideal_columns(omega, a, AlgebraElement(), 1);
  auto sol = solve_columns(a.images, AlgebraElement());
  rep.ansatz_kernel = projected_kernel(a.fields, sol.kernel);
  std::vector<VectorField> admissible = rep.ansatz_kernel;
  if (constraint && !admissible.empty()) {
    std::vector<AlgebraElement> values;
    for (const auto& k : rep.ansatz_kernel) values.push_back(constraint(k));
    admissible = projected_kernel(rep.ansatz_kernel, solve_columns(values, AlgebraElement()).kernel);
  }
  rep.nondegenerate = admissible.empty();
  if (!admissible.empty()) rep.witness = admissible.front();
  return rep;
}

AlgebraElement hamiltonian_residual(const VectorField& x, const AlgebraElement& f, const SymplecticForm& omega,
                                    const RewriteSystem& sys) {
  AlgebraElement r = contract(x, omega.tensor, sys).one_form_body() + d_function(f, sys).body();
  return reduce_form(omega, sys.normal_form(r));
}

SolveReport hamiltonian_vector_field(const AlgebraElement& f, const SymplecticForm& omega, const RewriteSystem& sys,
                                     int max_degree) {
  SolveReport rep;
  rep.degree_bound = max_degree;
  const AlgebraElement fn = sys.normal_form(f);
  const AlgebraElement target = -d_function(fn, sys).body();
  Ansatz a = field_ansatz(omega, sys, max_degree);
  const std::size_t nx = a.fields.size();
  add_ideal_columns(omega, a, target, 1);

  auto sol = solve_columns(a.images, target);
  if (!sol.consistent) return rep;
  std::vector<Scalar> chosen(sol.particular.begin(), sol.particular.begin() + static_cast<std::ptrdiff_t>(nx));
  rep.kernel = projected_kernel(a.fields, sol.kernel);
  rep.status = rep.kernel.empty() ? SolveStatus::unique : SolveStatus::family;

  if (rep.status == SolveStatus::family) {
    // Gauge X_f(f) = 0: its rows are pure functions, disjoint from the one-form rows.
    std::vector<AlgebraElement> gauged = a.images;
    for (std::size_t j = 0; j < nx; ++j) gauged[j] += apply_field(a.fields[j], fn, sys);
    auto gsol = solve_columns(gauged, target);
    if (gsol.consistent) {
      chosen.assign(gsol.particular.begin(), gsol.particular.begin() + static_cast<std::ptrdiff_t>(nx));
      rep.gauge_applied = true;
    }
  }
  rep.particular = combine(a.fields, chosen);
  rep.residual_ok = hamiltonian_residual(rep.particular, fn, omega, sys).is_zero();
  return rep;
}

BracketValue poisson_bracket_report(const AlgebraElement& f, const AlgebraElement& g, const SymplecticForm& omega,
                                    const RewriteSystem& sys, int max_degree) {
  auto rep = hamiltonian_vector_field(f, omega, sys, max_degree);
  if (rep.status == SolveStatus::none) {
    throw NoHamiltonianError("no Hamiltonian vector field for " + sys.to_string(f) + " up to degree " +
                             std::to_string(max_degree));
  }
  BracketValue out;
  out.value = -apply_field(rep.particular, sys.normal_form(g), sys);
  out.non_unique = rep.status == SolveStatus::family;
  out.gauge_applied = rep.gauge_applied;
  return out;
}

AlgebraElement poisson_bracket(const AlgebraElement& f, const AlgebraElement& g, const SymplecticForm& omega,
                               const RewriteSystem& sys, int max_degree) {
  return poisson_bracket_report(f, g, omega, sys, max_degree).value;
}

std::map<int, AlgebraElement> equations_of_motion(const AlgebraElement& h, const SymplecticForm& omega,
                                                  const RewriteSystem& sys, int max_degree) {
  std::map<int, AlgebraElement> out;
  for (int r = 0; r < sys.dim(); ++r) out[r] = poisson_bracket(sys.x(r), h, omega, sys, max_degree);
  return out;
}

}  // namespace qplane
