#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "syz/cokernel.hpp"
#include "syz/exterior.hpp"
#include "syz/hyperelliptic.hpp"

namespace syz {

/// Section models shared by the spanning computations for one parameter
/// triple: Gamma(L'_2), Gamma(L'_2(-1)), the image of the constant wedges,
/// and the L'_i models (built on first use).
class SpanningContext {
 public:
  explicit SpanningContext(const CurveParams& p);

  const CurveParams& params() const { return params_; }
  const CechModel& l2() const { return l2_; }
  const CechModel& l2_twisted() const { return l2_twisted_; }
  /// Span of the constant sections e_a ^ e_b in Gamma(L'_2) coordinates.
  const Subspace& global_image() const { return global_image_; }
  /// Coordinates of delta * tau_k for the twisted basis tau_k, one column each.
  Mat division_matrix(const HomPoly& delta) const;
  const CechModel& model(int i) const;

 private:
  CurveParams params_;
  CechModel l2_;
  CechModel l2_twisted_;
  Subspace global_image_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<CechModel>> models_;
};

/// Image in Gamma(L'_2) of the constant minor vector m(a); it vanishes at a.
CechSection sigma_section(const CurveParams& p, const ProjPoint& a);

/// The locally decomposable pencil at a: tau solves delta_a * tau = sigma_a in
/// Gamma(L'_2(-1)), and the pencil is spanned by s * tau and t * tau.
struct Pencil {
  ProjPoint a;
  CechSection sigma;
  CechSection tau;
  Vec sigma_coords;
  Vec s_tau;  // coordinates of s * tau in Gamma(L'_2)
  Vec t_tau;
  Subspace subspace;
};

/// Throws std::runtime_error when delta_a * tau = sigma_a has no solution.
Pencil pencil(const SpanningContext& ctx, const ProjPoint& a);

/// Gamma(L'_2) modulo the image of the constant wedges.
struct QuotientSpace {
  std::size_t ambient;
  Subspace kernel;
  std::vector<std::size_t> complement;  // non-pivot coordinates of the kernel

  std::size_t dim() const { return complement.size(); }
  Vec project(const Vec& v) const;
};

QuotientSpace d2_quotient(const SpanningContext& ctx);

/// Representative of the image of the pencil at a in the quotient: t * tau
/// projected, or s * tau when that projection vanishes (a = (1:0)). Throws
/// std::runtime_error when both vanish.
Vec rnc_point(const SpanningContext& ctx, const QuotientSpace& q, const Pencil& pen);
Vec rnc_point(const SpanningContext& ctx, const ProjPoint& a);

struct SpanningCertificate {
  CurveParams params;
  int i = 2;
  std::vector<ProjPoint> points;
  std::size_t rank = 0;
  std::size_t target = 0;
  bool verdict = false;
  std::vector<Vec> quotient_coords;  // rnc_point per sample point
};

/// (0:1), (1:1), ..., (d-g-4 : 1), (1:0): d - g - 2 points.
std::vector<ProjPoint> default_points(const CurveParams& p);

/// Rank of the constant wedges plus the pencils at the points, against
/// h0(L'_2). With default_points, up to 2(d-g) further points (k:1) are tried
/// before a deficient rank is reported.
SpanningCertificate spanning_i2(const SpanningContext& ctx, const std::vector<ProjPoint>& points,
                                bool escalate = false);
SpanningCertificate spanning_i2(const SpanningContext& ctx);

/// omega_J ^ sigma as a section of L'_i, where J is an (i-2)-subset of the
/// section basis. Throws std::runtime_error if the product fails the overlap
/// check of L'_i.
CechSection mult_section(const SpanningContext& ctx, int i, const Subset& J, const CechSection& sigma);

/// Spanning of Gamma(L'_i) by products of wedges of global sections with the
/// i = 2 spanning set, for 2 <= i <= g (std::invalid_argument otherwise).
SpanningCertificate spanning_general(const SpanningContext& ctx, int i, const std::vector<ProjPoint>& points,
                                     bool escalate = false);
SpanningCertificate spanning_general(const SpanningContext& ctx, int i);

}  // namespace syz
