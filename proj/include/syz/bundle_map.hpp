#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "syz/hom_poly.hpp"
#include "syz/laurent.hpp"
#include "syz/linalg.hpp"
#include "syz/split_bundle.hpp"

namespace syz {

/// Morphism of split bundles on P^1 given by a matrix of binary forms. Entry
/// (i, j) sends summand j of the source to summand i of the target and has
/// degree target[i] - source[j]. Columns are stored sparsely: most presentation
/// matrices used here are very sparse.
class BundleMap {
 public:
  using Column = std::vector<std::pair<std::size_t, HomPoly>>;  // (row, nonzero entry), rows ascending

  BundleMap() = default;
  BundleMap(SplitBundle source, SplitBundle target);
  /// Dense construction; entries[i][j]. Zero entries may have any degree.
  BundleMap(SplitBundle source, SplitBundle target, const std::vector<std::vector<HomPoly>>& entries);

  const SplitBundle& source() const { return source_; }
  const SplitBundle& target() const { return target_; }
  std::size_t rows() const { return target_.rank(); }
  std::size_t cols() const { return source_.rank(); }

  /// Sets entry (i, j); throws std::invalid_argument on a nonzero form of the wrong degree.
  void set(std::size_t i, std::size_t j, const HomPoly& p);
  /// Entry (i, j); the zero form of the expected degree when unset.
  HomPoly entry(std::size_t i, std::size_t j) const;
  const Column& column(std::size_t j) const { return columns_.at(j); }

  bool is_zero() const;
  int max_entry_degree() const;
  std::size_t nonzero_count() const;

  Mat evaluate(const ProjPoint& p) const;
  std::size_t rank_at(const ProjPoint& p) const;
  /// Rank over the function field, found by evaluating at enough points that
  /// some point avoids the zeros of a nonzero maximal-size minor.
  std::size_t generic_rank() const;

  /// Applies the map to a source-valued Laurent vector.
  LaurentVec apply(const LaurentVec& v) const;

  BundleMap twist(int k) const;

  /// g o f; throws when f's target differs from g's source.
  friend BundleMap compose(const BundleMap& g, const BundleMap& f);
  friend bool operator==(const BundleMap& a, const BundleMap& b);

 private:
  SplitBundle source_;
  SplitBundle target_;
  std::vector<Column> columns_;
};

/// Determinant of a small square matrix of forms (Laplace expansion).
HomPoly determinant(const std::vector<std::vector<HomPoly>>& m);

/// Whether the r x r minors of the map have no common zero on P^1 (and some
/// minor is nonzero). nullopt when the number of minors exceeds the budget.
std::optional<bool> minors_coprime(const BundleMap& m, std::size_t r, std::size_t budget = 20000);

struct LocalFreeness {
  bool constant_rank;
  std::size_t generic_rank;
};

/// Decides whether the map has constant rank on P^1 (so its cokernel is
/// locally free). nullopt when the minor computation is over budget.
std::optional<LocalFreeness> check_constant_rank(const BundleMap& m, std::size_t budget = 20000);

/// Induced maps on H^0 and H^1 in the monomial bases of CohSpace. A monomial
/// goes to the sum of the monomials of its products with the entries, and any
/// product outside the target basis is dropped.
struct CohMaps {
  Mat H0;
  Mat H1;
};
CohMaps induced_coh_maps(const BundleMap& f);

/// Short exact sequence 0 -> A -f-> B -g-> Q -> 0.
struct SES {
  BundleMap f;
  BundleMap g;

  const SplitBundle& A() const { return f.source(); }
  const SplitBundle& B() const { return f.target(); }
  const SplitBundle& Q() const { return g.target(); }
};

/// 0 -> Gamma(F(-1)) (x) O(-1) -> Gamma(F) (x) O -> F -> 0 for F with all degrees >= 0.
SES evaluation_sequence(const SplitBundle& F);

/// Throws std::invalid_argument unless the sequence is exact: g f = 0, ranks
/// and degrees additive, and both f and g of full rank at every point.
void validate_exact(const SES& ses);

/// Matrix of the connecting map H^0(Q) -> H^1(A) in the monomial bases.
/// A section q is lifted to B on each chart, the difference of the lifts is
/// pulled back along f, and the class of that Laurent vector is its part with
/// both exponents negative.
Mat connecting_hom(const SES& ses);

struct SixTermReport {
  Mat f0, g0, delta, f1, g1;
  bool compositions_zero;
  bool exact;
  std::string failure;
};

/// 0 -> H0(A) -> H0(B) -> H0(Q) -> H1(A) -> H1(B) -> H1(Q) -> 0 as matrices,
/// with exactness checked by ranks and vanishing of the compositions.
SixTermReport six_term_sequence(const SES& ses);

}  // namespace syz
