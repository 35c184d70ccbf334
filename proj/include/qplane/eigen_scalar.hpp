#pragma once

// Lets Eigen dense types carry the exact coefficient field.

#include <Eigen/Core>

#include "qplane/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<qplane::Scalar> : GenericNumTraits<qplane::Scalar> {
  using Real = qplane::Scalar;
  using NonInteger = qplane::Scalar;
  using Nested = qplane::Scalar;
  using Literal = qplane::Scalar;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 50
  };

  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace qplane {

template <typename T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
using DenseVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<Scalar>;

}  // namespace qplane
