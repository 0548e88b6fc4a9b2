#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace cskge {

using Real = double;

template <typename Scalar>
using MatrixOf = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using RowVectorOf = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Matrix = MatrixOf<Real>;
using RowVector = RowVectorOf<Real>;
using Index = Eigen::Index;

enum class Norm { L1, L2 };

// Position inside a triple, for candidate substitution and corruption.
enum class Slot { Head, Tail, Relation };

inline const char* slot_name(Slot s) {
  switch (s) {
    case Slot::Head: return "head";
    case Slot::Tail: return "tail";
    case Slot::Relation: return "relation";
  }
  return "?";
}

}  // namespace cskge
