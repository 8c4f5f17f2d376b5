#include "syz/hom_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace syz {

namespace {

using Univariate = std::vector<Scalar>;  // coefficient k of u^k

void trim(Univariate& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

Univariate remainder(Univariate a, const Univariate& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Scalar factor = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

Univariate univariate_gcd(Univariate a, Univariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Univariate r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Scalar lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

}  // namespace

HomPoly::HomPoly(int degree)
    : degree_(degree), coeffs_(static_cast<std::size_t>(std::max(degree + 1, 0))) {}

HomPoly::HomPoly(int degree, std::vector<Scalar> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(std::max(degree + 1, 0)))
    throw std::invalid_argument("HomPoly: coefficient count must be degree + 1");
}

HomPoly HomPoly::monomial(int s_exp, int t_exp, Scalar coeff) {
  if (s_exp < 0 || t_exp < 0) throw std::invalid_argument("HomPoly::monomial: negative exponent");
  HomPoly p(s_exp + t_exp);
  p.coeff(s_exp) = std::move(coeff);
  return p;
}

HomPoly HomPoly::vanishing_at(const ProjPoint& a) {
  // t0*s - s0*t
  return HomPoly(1, {-a.s, a.t});
}

bool HomPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return syz::is_zero(c); });
}

Scalar HomPoly::evaluate(const ProjPoint& p) const {
  Scalar acc(0);
  for (int k = 0; k <= degree_; ++k) {
    if (syz::is_zero(coeff(k))) continue;
    acc += coeff(k) * ipow(p.s, static_cast<unsigned>(k)) * ipow(p.t, static_cast<unsigned>(degree_ - k));
  }
  return acc;
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
  if (o.degree_ != degree_) throw std::invalid_argument("HomPoly: adding forms of different degree");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) {
  if (o.degree_ != degree_) throw std::invalid_argument("HomPoly: subtracting forms of different degree");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

HomPoly& HomPoly::operator*=(const Scalar& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

HomPoly HomPoly::operator-() const {
  HomPoly r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  HomPoly r(a.degree_ + b.degree_);
  if (a.degree_ < 0 || b.degree_ < 0) return r;
  for (int i = 0; i <= a.degree_; ++i) {
    if (is_zero(a.coeff(i))) continue;
    for (int j = 0; j <= b.degree_; ++j) {
      if (is_zero(b.coeff(j))) continue;
      r.coeff(i + j) += a.coeff(i) * b.coeff(j);
    }
  }
  return r;
}

std::optional<HomPoly> divide_by_linear(const HomPoly& p, const HomPoly& delta) {
  if (delta.degree() != 1 || delta.is_zero())
    throw std::invalid_argument("divide_by_linear: divisor must be a nonzero linear form");
  if (p.degree() < 1) {
    if (p.is_zero()) return HomPoly(p.degree() - 1);
    return std::nullopt;
  }
  // p = q * (c1 s + c0 t); solve coefficientwise from whichever end is safe.
  const Scalar& c0 = delta.coeff(0);
  const Scalar& c1 = delta.coeff(1);
  const int n = p.degree();
  HomPoly q(n - 1);
  if (!is_zero(c0)) {
    for (int k = 0; k < n; ++k) {
      Scalar rest = p.coeff(k);
      if (k > 0) rest -= q.coeff(k - 1) * c1;
      q.coeff(k) = rest / c0;
    }
  } else {
    for (int k = n; k >= 1; --k) {
      Scalar rest = p.coeff(k);
      if (k < n) rest -= q.coeff(k) * c0;
      q.coeff(k - 1) = rest / c1;
    }
  }
  if (q * delta != p) return std::nullopt;
  return q;
}

HomPoly gcd(const std::vector<HomPoly>& forms) {
  int t_power = -1;
  Univariate g;
  bool first = true;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    int top = f.degree();
    while (is_zero(f.coeff(top))) --top;
    const int t_val = f.degree() - top;
    t_power = (t_power < 0) ? t_val : std::min(t_power, t_val);
    Univariate u(f.coeffs().begin(), f.coeffs().begin() + top + 1);
    if (first) {
      g = univariate_gcd(u, {});
      first = false;
    } else {
      g = univariate_gcd(g, u);
    }
  }
  if (first) return HomPoly::constant(1);
  const int e = static_cast<int>(g.size()) - 1;
  HomPoly h(e, std::vector<Scalar>(g.begin(), g.end()));
  return h * HomPoly::monomial(0, t_power);
}

std::ostream& operator<<(std::ostream& os, const HomPoly& p) {
  bool any = false;
  for (int k = p.degree(); k >= 0; --k) {
    const Scalar& c = p.coeff(k);
    if (is_zero(c)) continue;
    if (any) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    const Scalar a = abs(c);
    const int tk = p.degree() - k;
    const bool bare = (k == 0 && tk == 0);
    if (a != 1 || bare) os << a;
    if (k > 0) os << "s" << (k > 1 ? "^" + std::to_string(k) : "");
    if (tk > 0) os << "t" << (tk > 1 ? "^" + std::to_string(tk) : "");
    any = true;
  }
  if (!any) os << "0";
  return os;
}

}  // namespace syz
