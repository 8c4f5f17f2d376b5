#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "syz/scalar.hpp"

namespace syz {

/// Homogeneous form of fixed degree in (s, t), stored densely: coefficient k
/// belongs to the monomial s^k t^(deg-k). The zero form exists in every degree.
class HomPoly {
 public:
  HomPoly() : HomPoly(0) {}
  explicit HomPoly(int degree);
  HomPoly(int degree, std::vector<Scalar> coeffs);

  static HomPoly monomial(int s_exp, int t_exp, Scalar coeff = 1);
  static HomPoly constant(Scalar c) { return monomial(0, 0, std::move(c)); }
  /// The linear form t0*s - s0*t, vanishing exactly at (s0 : t0).
  static HomPoly vanishing_at(const ProjPoint& a);

  int degree() const { return degree_; }
  const Scalar& coeff(int s_exp) const { return coeffs_.at(static_cast<std::size_t>(s_exp)); }
  Scalar& coeff(int s_exp) { return coeffs_.at(static_cast<std::size_t>(s_exp)); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Scalar evaluate(const ProjPoint& p) const;

  HomPoly& operator+=(const HomPoly& o);
  HomPoly& operator-=(const HomPoly& o);
  HomPoly& operator*=(const Scalar& c);
  HomPoly operator-() const;

  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator*(HomPoly a, const Scalar& c) { return a *= c; }
  friend HomPoly operator*(const Scalar& c, HomPoly a) { return a *= c; }
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
  friend bool operator==(const HomPoly& a, const HomPoly& b) = default;

 private:
  int degree_;
  std::vector<Scalar> coeffs_;
};

/// Exact quotient p / delta for a nonzero linear form delta; nullopt when
/// delta does not divide p, which happens iff p is nonzero at the zero of delta.
std::optional<HomPoly> divide_by_linear(const HomPoly& p, const HomPoly& delta);

/// Monic-normalised gcd of binary forms (zero forms are ignored). Returns the
/// constant 1 when the forms have no common zero on P^1.
HomPoly gcd(const std::vector<HomPoly>& forms);

std::ostream& operator<<(std::ostream& os, const HomPoly& p);

}  // namespace syz
