#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "syz/bundle_map.hpp"
#include "syz/laurent.hpp"
#include "syz/linalg.hpp"

namespace syz {

/// Data proving that the map e_J -> e_J ^ m from the (i-2)-nd to the i-th
/// exterior power of a constant N-dimensional space has constant rank: m is a
/// vector of binary forms indexed by the 2-subsets of {0..N-1} (lex order),
/// decomposable at every point (m ^ m = 0) and nowhere zero (coprime entries).
struct WedgeCertificate {
  std::size_t ambient = 0;
  std::size_t degree = 0;
  std::vector<HomPoly> minors;
};

/// A sheaf on P^1 presented as the cokernel of a bundle map A -> B. The map
/// need not be injective; only its image matters.
///
/// Optional torus weights make the Cech computation decompose: when every
/// entry (i, j) is a monomial s^l t^(.) with l + target_weights[i] =
/// source_weights[j], the monomial s^u in summand c of B has weight
/// u + target_weights[c] and all relations respect that grading.
struct CokernelPresentation {
  BundleMap map;
  std::vector<int> source_weights;
  std::vector<int> target_weights;
  std::optional<WedgeCertificate> certificate;
  /// Overrides the exponent window when set.
  std::optional<int> window;

  const SplitBundle& A() const { return map.source(); }
  const SplitBundle& B() const { return map.target(); }
  bool graded() const { return !target_weights.empty(); }

  /// max |degree| over the summands of A and B, plus 2.
  int default_window() const;
  int cech_window() const { return window.value_or(default_window()); }

  /// Same map between B(k) and A(k).
  CokernelPresentation twist(int k) const;
};

/// Global section of a cokernel: rep0 is regular where t != 0 (s exponents
/// >= 0), rep1 where s != 0 (t exponents >= 0), and rep0 - rep1 lies in the
/// image of A on the overlap.
struct CechSection {
  LaurentVec rep0;
  LaurentVec rep1;

  CechSection operator+(const CechSection& o) const { return {rep0 + o.rep0, rep1 + o.rep1}; }
  CechSection operator-(const CechSection& o) const { return {rep0 - o.rep0, rep1 - o.rep1}; }
  CechSection operator*(const Scalar& c) const { return {rep0 * c, rep1 * c}; }
};

/// Multiplication of both representatives by a form; the result is a section
/// of the presentation twisted by the form's degree.
CechSection section_mul(const CechSection& s, const HomPoly& form);

/// Throws std::invalid_argument unless the presentation has constant rank on
/// P^1, via the wedge certificate if present and maximal minors otherwise.
/// Returns the generic rank of the map.
std::size_t validate_locally_free(const CokernelPresentation& p);

/// Sections of coker(A -> B) modulo the relations, computed per weight block.
///
/// Relations: images of the A-monomials regular on one chart. With weights
/// these are complete in every weight; without, they are cut off at the
/// exponent window, which loses nothing when the map is injective on every
/// fiber (the lowest t-power of phi(alpha) is that of alpha). A map with a
/// kernel gets the window widened by the degree spread between A and the
/// kernel bundle. Generators: the constants H^0(B), and for every class alpha of
/// H^1(A) whose image has no monomial with both exponents negative, the pair
/// obtained by splitting phi(alpha) into its s >= 0 and s < 0 parts. Every
/// section is congruent to a combination of these, so the quotient they span
/// is the space of global sections.
class CechModel {
 public:
  explicit CechModel(CokernelPresentation p);

  const CokernelPresentation& presentation() const { return pres_; }
  std::size_t dimension() const { return dim_; }
  /// Fiber rank of the cokernel.
  std::size_t cokernel_rank() const { return pres_.B().rank() - map_rank_; }

  /// Basis of the section space, blocks in ascending weight.
  std::vector<CechSection> basis() const;
  std::vector<int> basis_weights() const;

  /// Coordinates in the basis; throws std::domain_error when the pair is not
  /// a section (or, without weights, not reducible inside the window).
  Vec coordinates(const CechSection& s) const;
  CechSection section(const Vec& coords) const;
  bool equal(const CechSection& a, const CechSection& b) const { return is_zero(coordinates(a - b)); }

  /// Regularity of each representative and rep0 - rep1 in the image of A
  /// over the overlap.
  bool satisfies_overlap(const CechSection& s) const;

  /// Fiber coordinates at a point: the value modulo the column space of the
  /// evaluated map, read at the non-pivot positions of its echelon form.
  Vec evaluate(const CechSection& s, const ProjPoint& p) const;

  // Block-level access.
  std::vector<int> weights() const;
  std::size_t block_dim(int weight) const;
  std::size_t block_offset(int weight) const;
  const std::vector<CechSection>& block_basis(int weight) const;
  /// Coordinates of a section homogeneous of the given weight.
  Vec block_coordinates(int weight, const CechSection& s) const;

 private:
  struct CellKey {
    int chart;
    std::size_t component;
    int s_exp;
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
  };
  struct Block {
    std::map<CellKey, std::size_t> index;
    EchelonBasis echelon;
    std::vector<CechSection> basis;
    std::size_t offset = 0;
  };
  struct OverlapCache;

  int weight_of(std::size_t component, int s_exp) const;
  int source_weight_of(std::size_t component, int s_exp) const;
  Block& block(int weight);
  const Block* find_block(int weight) const;
  void insert_pair(const CechSection& s, bool tagged);
  std::map<int, SparseVec> split_by_block(const CechSection& s, bool create);
  std::optional<SparseVec> block_vector(const Block& b, int weight, const CechSection& s) const;
  Vec reduce_in_block(const Block& b, const SparseVec& v) const;
  bool in_relations(int weight, const CechSection& s) const;
  void build();

  CokernelPresentation pres_;
  std::size_t map_rank_ = 0;
  std::size_t dim_ = 0;
  int window_ = 0;
  std::map<int, Block> blocks_;
  std::shared_ptr<OverlapCache> overlap_;
};

/// Basis of the global sections of the cokernel.
std::vector<CechSection> cokernel_sections(const CokernelPresentation& p);

/// Fiber coordinates of a section at a point (see CechModel::evaluate).
Vec section_eval(const CechSection& s, const CokernelPresentation& p, const ProjPoint& point);

}  // namespace syz
