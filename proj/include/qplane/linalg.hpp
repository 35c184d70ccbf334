#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qplane/eigen_scalar.hpp"

namespace qplane {

inline bool is_zero(const Scalar& v) { return v.is_zero(); }
/// Pivots must be invertible in the coefficient field: single-term scalars.
inline bool usable_pivot(const Scalar& v) { return v.is_monomial(); }

template <typename T>
bool is_zero_matrix(const DenseMatrix<T>& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!is_zero(m(r, c))) return false;
    }
  }
  return true;
}

template <typename T>
DenseMatrix<T> identity(Eigen::Index size) {
  DenseMatrix<T> e = DenseMatrix<T>::Constant(size, size, T(0));
  for (Eigen::Index k = 0; k < size; ++k) e(k, k) = T(1);
  return e;
}

/// Dense product that skips zero entries of the left factor; exact scalars make
/// every skipped multiply-add an allocation saved.
template <typename T>
DenseMatrix<T> product(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("product: dimension mismatch");
  DenseMatrix<T> out = DenseMatrix<T>::Constant(a.rows(), b.cols(), T(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        const T& bkj = b(k, j);
        if (is_zero(bkj)) continue;
        out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

template <typename T>
DenseMatrix<T> kronecker(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> out = DenseMatrix<T>::Constant(a.rows() * b.rows(), a.cols() * b.cols(), T(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          if (is_zero(b(k, l))) continue;
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

template <typename T>
struct RrefResult {
  DenseMatrix<T> reduced;
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank = 0;
};

/// Reduced row-echelon form. Columns are scanned left to right; the pivot
/// is the first row (in current order) with a usable entry in that column.
/// Throws std::domain_error if a column has nonzero entries but none usable.
template <typename T>
RrefResult<T> rref(DenseMatrix<T> m) {
  RrefResult<T> res;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pick = -1;
    bool saw_nonzero = false;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (is_zero(m(r, col))) continue;
      saw_nonzero = true;
      if (usable_pivot(m(r, col))) {
        pick = r;
        break;
      }
    }
    if (pick < 0) {
      if (saw_nonzero) throw std::domain_error("rref: no invertible pivot in column " + std::to_string(col));
      continue;
    }
    if (pick != row) m.row(pick).swap(m.row(row));
    T inv = T(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) {
      if (!is_zero(m(row, c))) m(row, c) = m(row, c) * inv;
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      T factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) {
        if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
      }
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  res.reduced = std::move(m);
  return res;
}

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename T>
DenseMatrix<T> inverse(const DenseMatrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const Eigen::Index n = m.rows();
  DenseMatrix<T> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity<T>(n);
  auto res = rref<T>(std::move(aug));
  if (res.rank < n || res.pivots[static_cast<std::size_t>(n - 1)] != n - 1) {
    throw SingularMatrixError("matrix is singular");
  }
  return res.reduced.rightCols(n);
}

/// Basis of the right null space of m, one column per free variable.
template <typename T>
DenseMatrix<T> null_space(const DenseMatrix<T>& m) {
  auto res = rref<T>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : res.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  }
  DenseMatrix<T> basis = DenseMatrix<T>::Constant(m.cols(), static_cast<Eigen::Index>(free.size()), T(0));
  for (std::size_t f = 0; f < free.size(); ++f) {
    basis(free[f], static_cast<Eigen::Index>(f)) = T(1);
    for (std::size_t r = 0; r < res.pivots.size(); ++r) {
      const T& v = res.reduced(static_cast<Eigen::Index>(r), free[f]);
      if (!is_zero(v)) basis(res.pivots[r], static_cast<Eigen::Index>(f)) = -v;
    }
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Leg matrices

/// Square matrix on V^{⊗legs}, dim V = base_dim. Row (i,j) of a two-leg matrix
/// is i*n + j (0-based); three legs map (i,j,m) to (i*n + j)*n + m.
template <typename T>
class BasicLegMatrix {
 public:
  BasicLegMatrix() = default;
  BasicLegMatrix(int base_dim, int legs, DenseMatrix<T> entries)
      : base_dim_(base_dim), legs_(legs), m_(std::move(entries)) {
    Eigen::Index size = dimension(base_dim, legs);
    if (m_.rows() != size || m_.cols() != size) {
      throw std::invalid_argument("LegMatrix: expected " + std::to_string(size) + "x" + std::to_string(size) +
                                  " entries");
    }
  }

  static Eigen::Index dimension(int base_dim, int legs) {
    Eigen::Index size = 1;
    for (int k = 0; k < legs; ++k) size *= base_dim;
    return size;
  }
  static BasicLegMatrix identity(int base_dim, int legs = 2) {
    return {base_dim, legs, qplane::identity<T>(dimension(base_dim, legs))};
  }
  static BasicLegMatrix zero(int base_dim, int legs = 2) {
    Eigen::Index size = dimension(base_dim, legs);
    return {base_dim, legs, DenseMatrix<T>::Constant(size, size, T(0))};
  }

  int base_dim() const { return base_dim_; }
  int legs() const { return legs_; }
  Eigen::Index size() const { return m_.rows(); }
  const DenseMatrix<T>& matrix() const { return m_; }

  Eigen::Index pair_index(int i, int j) const { return static_cast<Eigen::Index>(i) * base_dim_ + j; }
  /// Entry M^{ij}_{kl} of a two-leg matrix (0-based indices).
  const T& operator()(int i, int j, int k, int l) const { return m_(pair_index(i, j), pair_index(k, l)); }
  T& operator()(int i, int j, int k, int l) { return m_(pair_index(i, j), pair_index(k, l)); }
  const T& at(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }
  T& at(Eigen::Index row, Eigen::Index col) { return m_(row, col); }

  bool is_zero() const { return is_zero_matrix(m_); }

  friend BasicLegMatrix operator+(const BasicLegMatrix& a, const BasicLegMatrix& b) {
    check_same(a, b);
    return {a.base_dim_, a.legs_, a.m_ + b.m_};
  }
  friend BasicLegMatrix operator-(const BasicLegMatrix& a, const BasicLegMatrix& b) {
    check_same(a, b);
    return {a.base_dim_, a.legs_, a.m_ - b.m_};
  }
  friend BasicLegMatrix operator*(const BasicLegMatrix& a, const BasicLegMatrix& b) {
    check_same(a, b);
    return {a.base_dim_, a.legs_, product(a.m_, b.m_)};
  }
  friend BasicLegMatrix operator*(const T& c, const BasicLegMatrix& a) {
    DenseMatrix<T> m = a.m_;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index col = 0; col < m.cols(); ++col) {
        if (!qplane::is_zero(m(r, col))) m(r, col) = c * m(r, col);
      }
    }
    return {a.base_dim_, a.legs_, std::move(m)};
  }
  friend bool operator==(const BasicLegMatrix& a, const BasicLegMatrix& b) {
    return a.base_dim_ == b.base_dim_ && a.legs_ == b.legs_ && a.m_ == b.m_;
  }

  /// Applies f to every entry (e.g. specialization).
  template <typename F>
  BasicLegMatrix map(F&& f) const {
    DenseMatrix<T> m = m_;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = f(m(r, c));
    }
    return {base_dim_, legs_, std::move(m)};
  }

 private:
  static void check_same(const BasicLegMatrix& a, const BasicLegMatrix& b) {
    if (a.base_dim_ != b.base_dim_ || a.legs_ != b.legs_) throw std::invalid_argument("LegMatrix: shape mismatch");
  }

  int base_dim_ = 2;
  int legs_ = 2;
  DenseMatrix<T> m_;
};

using LegMatrix = BasicLegMatrix<Scalar>;

enum class LegPosition { k12, k23 };

/// M_12 = M ⊗ E or M_23 = E ⊗ M on three legs.
template <typename T>
BasicLegMatrix<T> embed(const BasicLegMatrix<T>& m, LegPosition position) {
  if (m.legs() != 2) throw std::invalid_argument("embed: expected a two-leg matrix");
  DenseMatrix<T> e = identity<T>(m.base_dim());
  DenseMatrix<T> out = position == LegPosition::k12 ? kronecker(m.matrix(), e) : kronecker(e, m.matrix());
  return {m.base_dim(), 3, std::move(out)};
}

template <typename T>
BasicLegMatrix<T> inverse(const BasicLegMatrix<T>& m) {
  return {m.base_dim(), m.legs(), inverse(m.matrix())};
}

/// R_12 R_23 R_12 == R_23 R_12 R_23.
template <typename T>
bool check_ybe(const BasicLegMatrix<T>& r) {
  auto r12 = embed(r, LegPosition::k12);
  auto r23 = embed(r, LegPosition::k23);
  return (r12 * r23) * r12 == (r23 * r12) * r23;
}

/// Product of (R - λ E) over the given eigenvalues vanishes.
template <typename T>
bool check_min_poly(const BasicLegMatrix<T>& r, const std::vector<T>& eigenvalues) {
  auto e = BasicLegMatrix<T>::identity(r.base_dim(), r.legs());
  auto acc = e;
  for (const auto& lambda : eigenvalues) acc = acc * (r - lambda * e);
  return acc.is_zero();
}

class CoincidentEigenvaluesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Q = (R - λ0)(R - λ2) / ((λ1 - λ0)(λ1 - λ2)), the projector onto the λ1
/// eigenspace when the cubic relation holds.
template <typename T>
BasicLegMatrix<T> projector_q(const BasicLegMatrix<T>& r, const T& lambda0, const T& lambda1, const T& lambda2) {
  T d0 = lambda1 - lambda0;
  T d2 = lambda1 - lambda2;
  if (is_zero(d0) || is_zero(d2)) throw CoincidentEigenvaluesError("projector_q: coincident eigenvalues");
  auto e = BasicLegMatrix<T>::identity(r.base_dim(), r.legs());
  T scale = T(1) / (d0 * d2);
  return scale * ((r - lambda0 * e) * (r - lambda2 * e));
}

// ---------------------------------------------------------------------------
// Consistency system for (B, C, D, F)

enum class CheckStatus { pass, fail, finding };

std::string to_string(CheckStatus status);

struct ConditionResult {
  std::string name;
  std::string statement;
  bool holds_as_printed = false;
  /// Set when the printed statement fails but a documented reading holds.
  std::optional<bool> holds_corrected;
  std::string corrected_statement;
  std::string reason;

  CheckStatus status() const;
};

struct WzReport {
  std::vector<ConditionResult> conditions;
  bool all_hold() const;
  /// True when every condition passes as printed.
  bool all_hold_as_printed() const;
};

/// Evaluates the five Wess-Zumino consistency conditions. The first and
/// fourth are printed with (E - C); applying d to the quadratic relations
/// gives (E + C), which is reported as the corrected reading.
WzReport wz_conditions(const LegMatrix& b, const LegMatrix& c, const LegMatrix& d, const LegMatrix& f);

struct GammaCheck {
  bool exterior_relation = false;  ///< (D + E)(E - Γ) = 0
  bool ybe = false;
  bool passes() const { return exterior_relation && ybe; }
};

GammaCheck gamma_condition(const LegMatrix& d, const LegMatrix& gamma);

/// Specializes every entry.
LegMatrix specialize(const LegMatrix& m, const Specialization& sp);

/// Parses a dense array of scalar-expression strings.
LegMatrix parse_leg_matrix(int base_dim, const std::vector<std::vector<std::string>>& rows,
                           const std::set<std::string>& aux_symbols = {"rho"});
std::vector<std::vector<std::string>> leg_matrix_strings(const LegMatrix& m);

}  // namespace qplane
