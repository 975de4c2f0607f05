#pragma once

#include "vgraph/types.hpp"

#include <bit>
#include <vector>

namespace vgraph {

/// Largest dimension the minor table accepts; storage grows like 2^d.
inline constexpr int kMaxMinorDim = 10;

/// Stores every minor of a d x d matrix whose leading k columns and k rows
/// (any k rows) are erased, indexed by the bitmask of erased rows.
///
/// Columns are loaded from the last to the first. Loading column k recomputes
/// the minors of level k from those of level k + 1 by Laplace expansion along
/// column k, so replacing a low column reuses everything above it.
template <typename Scalar>
class MinorTable {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit MinorTable(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxMinorDim)
      throw InvalidArgument("minor table dimension " + std::to_string(dim) + " outside [1, " +
                            std::to_string(kMaxMinorDim) + "]");
    const unsigned full = (1u << dim) - 1u;
    minors_.assign(std::size_t{1} << dim, Scalar(0));
    minors_[full] = Scalar(1);
    levels_.resize(dim + 1);
    for (unsigned mask = 0; mask <= full; ++mask) levels_[std::popcount(mask)].push_back(mask);
    loaded_.assign(dim, 0);
  }

  int dim() const { return dim_; }

  /// Loads v as column col (0-based) and returns the trailing principal minor
  /// (rows and columns 0..col-1 erased); for col == 0 the full determinant.
  /// Throws OrderViolation when column col + 1 has not been loaded.
  template <class Derived>
  Scalar update(const Eigen::MatrixBase<Derived>& v, int col) {
    if (col < 0 || col >= dim_) throw InvalidArgument("column index out of range");
    if (v.size() != dim_) throw DimensionMismatch("column length differs from table dimension");
    if (col + 1 < dim_ && !loaded_[col + 1])
      throw OrderViolation("column " + std::to_string(col) + " loaded before column " +
                           std::to_string(col + 1));
    for (unsigned mask : levels_[col]) {
      Scalar sum(0);
      int position = 0;
      for (int row = 0; row < dim_; ++row) {
        const unsigned bit = 1u << row;
        if (mask & bit) continue;
        const Scalar term = Scalar(v[row]) * minors_[mask | bit];
        sum += (position & 1) ? -term : term;
        ++position;
      }
      minors_[mask] = sum;
    }
    loaded_[col] = 1;
    for (int c = 0; c < col; ++c) loaded_[c] = 0;
    return minors_[minor_index(col)];
  }

  /// Minor with columns [0, popcount(mask)) and the rows in mask erased.
  Scalar minor(unsigned erased_rows) const {
    const int level = std::popcount(erased_rows);
    if (level < dim_ && !loaded_[level]) throw OrderViolation("minor level not loaded");
    return minors_.at(erased_rows);
  }

  /// det of the loaded matrix; requires column 0.
  Scalar determinant() const {
    if (!loaded_[0]) throw OrderViolation("column 0 not loaded");
    return minors_[0];
  }

  bool loaded(int col) const { return loaded_.at(col) != 0; }

 private:
  // Leading erased rows {0..col-1}: the minor of the trailing block.
  static unsigned minor_index(int col) { return (1u << col) - 1u; }

  int dim_;
  std::vector<Scalar> minors_;
  std::vector<std::vector<unsigned>> levels_;
  std::vector<char> loaded_;
};

/// Determinant through the minor table, loading columns from last to first.
template <class Derived>
typename Derived::Scalar minor_determinant(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  MinorTable<Scalar> table(static_cast<int>(a.cols()));
  for (int c = static_cast<int>(a.cols()) - 1; c >= 0; --c) table.update(a.col(c), c);
  return table.determinant();
}

}  // namespace vgraph
