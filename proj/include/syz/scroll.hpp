#pragma once

#include <map>
#include <utility>
#include <vector>

#include "syz/hyperelliptic.hpp"

namespace syz {

/// The rational normal surface scroll S = P(W*) containing the curve.
struct ScrollData {
  int f;   // degree of S, e1 + e2 = d - g - 1
  int e1;  // larger summand degree of W
  int e2;
  int r;   // ambient projective dimension f + 1
};

ScrollData scroll_data(const CurveParams& p);

/// Divisor class aH + bR on S, with H^2 = f, H.R = 1, R^2 = 0.
struct DivClass {
  long a;
  long b;
  friend bool operator==(const DivClass&, const DivClass&) = default;
};

long intersect(const DivClass& c1, const DivClass& c2, long f);

/// C ~ 2H - (d - 2g - 2)R.
DivClass curve_class(const CurveParams& p);
/// K_S = -2H + (f - 2)R.
DivClass canonical_class(long f);
/// (C^2 + C.K)/2 + 1.
long adjunction_genus(const DivClass& c, long f);

/// One term O(twist)^mult of a complex over the ambient projective space.
struct ComplexTerm {
  int j;
  int twist;
  long mult;
  friend bool operator==(const ComplexTerm&, const ComplexTerm&) = default;
};

/// Terms of the Buchsbaum-Eisenbud complex zeta^b for a map F -> G with
/// dim F = f and dim G = 2: for j <= b the term is wedge^j F (x) S_{b-j} G in
/// twist -j, for j >= b + 1 it is wedge^{j+1} F (x) D_{j-b-1} G* (x) wedge^2 G*
/// in twist -(j+1). Zero terms are omitted.
std::vector<ComplexTerm> zeta_terms(int b, int f);

/// Graded Betti numbers beta_{p,j} of the coordinate ring of the curve.
class BettiTable {
 public:
  BettiTable() = default;
  explicit BettiTable(CurveParams p) : params_(p) {}

  void add(int p, int j, long beta);
  long at(int p, int j) const;
  const std::map<std::pair<int, int>, long>& entries() const { return entries_; }
  const CurveParams& params() const { return params_; }
  int max_p() const;
  int max_j() const;
  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  CurveParams params_;
  std::map<std::pair<int, int>, long> entries_;
};

/// Mapping cone of zeta^{d-2g-2}(-2) -> zeta^0: position p holds the p-th term
/// of zeta^0 and the (p-1)-st of the twisted complex; beta_{p,j} counts the
/// summands O(-j).
BettiTable betti_table(const CurveParams& p);

struct HilbertCheck {
  bool ok;
  int first_failure;  // -1 when ok
  long expected;      // dim R_n at the failure
  long computed;
};

/// Compares the alternating sum of the resolution's Hilbert functions with
/// h0(L^n) (1 for n = 0) for 0 <= n <= d.
HilbertCheck hilbert_check(const CurveParams& p, const BettiTable& t);

struct BridgeCheck {
  bool ok;
  int failing_i;  // -1 when ok
};

/// beta_{d-g-i-1, d-g-i+1} = C(d-g-1, i)(g - i) for 0 <= i <= g.
BridgeCheck betti_bridge(const CurveParams& p);
BridgeCheck betti_bridge(const CurveParams& p, const BettiTable& t);

}  // namespace syz
