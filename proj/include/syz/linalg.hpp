#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "syz/scalar.hpp"

namespace syz {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix of exact scalars.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::size_t rows, std::size_t cols, std::initializer_list<long> values);

  static Mat identity(std::size_t n);
  static Mat from_rows(std::size_t cols, const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  Mat transpose() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);
  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

bool is_zero(const Vec& v);

/// Sparse vector: (index, nonzero value) pairs sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// Incrementally built echelon basis over sparse rows. Every stored row is
/// normalised to a leading 1 at its pivot and no two rows share a pivot, so a
/// single ascending sweep over the pivots reduces any vector.
///
/// Each row remembers whether it was inserted as "tagged" and, for tagged rows,
/// how it is expressed through the tagged inputs that became rows. This is what
/// lets a caller work in a quotient: insert the relations untagged first, then
/// the generators tagged, and read off quotient coordinates from `reduce`.
class EchelonBasis {
 public:
  struct Reduction {
    SparseVec residual;
    /// Coordinates w.r.t. the independent tagged inputs (in insertion order).
    Vec tagged_coords;
  };

  /// Inserts v; returns true if it was independent of the existing rows.
  bool insert(const SparseVec& v, bool tagged = false);
  bool insert_dense(const Vec& v, bool tagged = false);

  Reduction reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).residual.empty(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t tagged_rank() const { return tagged_count_; }

  /// Pivot column -> row, in ascending pivot order.
  const std::map<std::size_t, SparseVec>& rows() const { return rows_; }

 private:
  struct RowInfo {
    bool tagged = false;
    Vec origin;  // expression through independent tagged inputs
  };

  std::map<std::size_t, SparseVec> rows_;
  std::map<std::size_t, RowInfo> info_;
  std::size_t tagged_count_ = 0;
};

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, std::size_t n);

/// Finite-dimensional subspace of Q^n kept as an echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vec>& rows);
  static Subspace sum(const Subspace& a, const Subspace& b);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return echelon_.rank(); }
  bool contains(const Vec& v) const;
  /// Adds v; returns true if the dimension grew.
  bool add(const Vec& v);
  std::vector<Vec> basis() const;
  /// Pivot columns of the echelon basis, ascending.
  std::vector<std::size_t> pivots() const;
  /// Canonical representative of v modulo the subspace: zero at every pivot.
  Vec reduce(const Vec& v) const;

 private:
  void check(const Vec& v) const;

  std::size_t ambient_;
  EchelonBasis echelon_;
};

std::size_t intersection_dim(const Subspace& a, const Subspace& b);

struct RankKernel {
  std::size_t rank;
  Subspace kernel;
};

/// Rank and right kernel via fraction-free (Bareiss) elimination.
RankKernel rank_kernel(const Mat& m);

/// Some x with m * x = b, or nullopt when b is outside the column space.
std::optional<Vec> solve(const Mat& m, const Vec& b);
// One elimination shared by every right-hand side.
std::vector<std::optional<Vec>> solve(const Mat& m, const std::vector<Vec>& bs);

}  // namespace syz
