#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace syz {

/// Direct sum of line bundles O(a_1) + ... + O(a_r) on P^1, kept as the list of
/// degrees. Summand order is significant: it fixes component indices of maps
/// and sections.
class SplitBundle {
 public:
  SplitBundle() = default;
  SplitBundle(std::initializer_list<int> degrees) : degrees_(degrees) {}
  explicit SplitBundle(std::vector<int> degrees) : degrees_(std::move(degrees)) {}

  static SplitBundle trivial(std::size_t rank) { return uniform(rank, 0); }
  static SplitBundle uniform(std::size_t rank, int degree) {
    return SplitBundle(std::vector<int>(rank, degree));
  }

  std::size_t rank() const { return degrees_.size(); }
  int degree() const;
  int operator[](std::size_t i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }
  int max_abs_degree() const;

  SplitBundle dual() const;
  SplitBundle twist(int k) const;
  SplitBundle wedge(std::size_t k) const;
  SplitBundle sym(std::size_t k) const;

  friend SplitBundle direct_sum(const SplitBundle& a, const SplitBundle& b);
  friend SplitBundle tensor(const SplitBundle& a, const SplitBundle& b);
  friend bool operator==(const SplitBundle&, const SplitBundle&) = default;

  /// Degrees sorted ascending; two split bundles are isomorphic iff these agree.
  std::vector<int> splitting_type() const;

 private:
  std::vector<int> degrees_;
};

std::ostream& operator<<(std::ostream& os, const SplitBundle& b);

enum class CohDegree { H0, H1 };

/// Monomial label of a cohomology basis element of one summand: the Laurent
/// monomial s^s_exp t^t_exp in component `component`.
struct CohMonomial {
  std::size_t component;
  int s_exp;
  int t_exp;
  friend bool operator==(const CohMonomial&, const CohMonomial&) = default;
};

/// H^0 or H^1 of a split bundle with its monomial basis:
///   H^0(O(a)) = span{ s^k t^(a-k) : 0 <= k <= a },
///   H^1(O(a)) = span{ s^i t^j : i, j <= -1, i + j = a }   (Cech, cover {t != 0}, {s != 0}).
class CohSpace {
 public:
  CohSpace(SplitBundle bundle, CohDegree which);

  const SplitBundle& bundle() const { return bundle_; }
  CohDegree which() const { return which_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<CohMonomial>& basis() const { return basis_; }
  /// Index of a monomial in the basis, or -1 when it is not a basis element.
  long index_of(std::size_t component, int s_exp, int t_exp) const;

 private:
  SplitBundle bundle_;
  CohDegree which_;
  std::vector<CohMonomial> basis_;
  std::vector<std::size_t> offsets_;
};

struct Cohomology {
  long h0;
  long h1;
  CohSpace H0;
  CohSpace H1;
};

Cohomology coh(const SplitBundle& bundle);

long h0(int degree);
long h1(int degree);

}  // namespace syz
