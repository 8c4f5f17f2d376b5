#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>

#include "syz/hom_poly.hpp"
#include "syz/scalar.hpp"

namespace syz {

/// Key of one Laurent monomial s^s_exp t^t_exp in a given vector component.
struct LaurentKey {
  std::size_t component;
  int s_exp;
  int t_exp;

  friend auto operator<=>(const LaurentKey&, const LaurentKey&) = default;
};

struct ExponentWindow {
  int s_lo, s_hi, t_lo, t_hi;
};

/// Bundle-valued vector of Laurent polynomials in (s, t), stored sparsely.
/// Used for Cech representatives; every stored coefficient is nonzero.
class LaurentVec {
 public:
  using Terms = std::map<LaurentKey, Scalar>;

  explicit LaurentVec(std::size_t components = 0) : components_(components) {}

  /// The constant vector with the given entries (all monomials s^0 t^0).
  static LaurentVec constant(const std::vector<Scalar>& values);

  std::size_t components() const { return components_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(std::size_t component, int s_exp, int t_exp, const Scalar& c);
  Scalar coeff(std::size_t component, int s_exp, int t_exp) const;

  /// Exponent bounds over all stored terms; nullopt for the zero vector.
  std::optional<ExponentWindow> window() const;

  /// Value of one component at a point; needs s != 0 (t != 0) when a negative
  /// power of s (t) occurs in that component.
  Scalar evaluate(std::size_t component, const ProjPoint& p) const;

  LaurentVec& operator+=(const LaurentVec& o);
  LaurentVec& operator-=(const LaurentVec& o);
  LaurentVec& operator*=(const Scalar& c);
  friend LaurentVec operator+(LaurentVec a, const LaurentVec& b) { return a += b; }
  friend LaurentVec operator-(LaurentVec a, const LaurentVec& b) { return a -= b; }
  friend LaurentVec operator*(LaurentVec a, const Scalar& c) { return a *= c; }
  friend LaurentVec operator*(const Scalar& c, LaurentVec a) { return a *= c; }
  /// Multiplication of every component by a homogeneous form.
  friend LaurentVec operator*(const LaurentVec& v, const HomPoly& f);
  friend bool operator==(const LaurentVec&, const LaurentVec&) = default;

 private:
  std::size_t components_;
  Terms terms_;
};

}  // namespace syz
