#pragma once

#include <utility>
#include <vector>

#include "syz/cokernel.hpp"
#include "syz/split_bundle.hpp"

namespace syz {

/// Abstract model of a degree-d line bundle L on a hyperelliptic curve of
/// genus g: everything is read off the splitting pi_* L = O(x) + O(n - x) on
/// P^1 with n = d - g - 1.
///
/// Conventions: T is the hyperelliptic g^1_2, pi_*(L (x) T^k) = W(k),
/// pi_* O_C = O + O(-g-1), K = T^(g-1).
struct CurveParams {
  int g = 0;
  int d = 0;
  int x = 0;

  int n() const { return d - g - 1; }      // deg W
  int r() const { return d - g; }          // rank E
  int u_dim() const { return d - g - 1; }  // dim U = h0(W(-1))
  int N() const { return d - g + 1; }      // h0(L) = h0(W)
  SplitBundle W() const { return SplitBundle{x, n() - x}; }
  friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

/// Admissible range of x for given (g, d).
std::pair<int, int> x_range(int g, int d);

/// Checks g >= 2, d >= 2g + 1 and the range of x; the exception message names
/// the violated bound.
CurveParams validate(int g, int d, int x);

struct CohPair {
  long h0;
  long h1;
};

/// Cohomology of L^e (x) T^k on C for e in {0, 1}, computed on P^1.
CohPair pushforward_coh(const CurveParams& p, int e, int k);

/// h0(L'_i) = C(d-g+1, i) + C(d-g-1, i-2) (d-i-g).
long dim_L_prime(const CurveParams& p, int i);

struct WedgeDim {
  long value;
  /// False for i > g, where value is the Euler characteristic and not h0.
  bool in_range;
};

/// h0 of the i-th exterior power of E for i <= g; chi for g < i <= d - g.
WedgeDim dim_wedge_E(const CurveParams& p, int i);

/// h1 of the i-th exterior power of E: C(d-g-1, i)(g-i) for i <= g, else 0.
long h1_wedge_E(const CurveParams& p, int i);

/// Torus weight of each of the N sections spanning Gamma(W): the s-exponent
/// of its monomial inside its own summand.
std::vector<int> section_weights(const CurveParams& p);

/// The 2x2 minors m_ab of the evaluation matrix of W, indexed by the lex
/// 2-subsets of the section basis; each is zero or a monomial of degree n.
std::vector<HomPoly> minor_vector(const CurveParams& p);

/// Presentation of L'_i: O(-n) (x) wedge^{i-2} -> O (x) wedge^i, e_J -> e_J ^ m.
/// For i = 0, 1 the trivial bundle of rank C(N, i) with no relations.
CokernelPresentation build_L_prime(const CurveParams& p, int i);

struct DimComparison {
  int i;
  long dim_L_prime;
  long dim_wedge_E;
  bool in_range;
  bool agree;
};

/// Compares h0(L'_i) with the exterior-power count. A disagreement is only
/// possible outside the range i <= g.
DimComparison dim_comparison(const CurveParams& p, int i);

/// Least x' >= 0 with h1(W(-2-x')) != 0.
int x_from_criterion(const CurveParams& p);

}  // namespace syz
