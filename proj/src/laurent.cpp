#include "syz/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace syz {

namespace {

Scalar signed_power(const Scalar& x, int e) {
  if (e >= 0) return ipow(x, static_cast<unsigned>(e));
  if (is_zero(x)) throw std::domain_error("LaurentVec: negative power of a vanishing coordinate");
  return 1 / ipow(x, static_cast<unsigned>(-e));
}

}  // namespace

LaurentVec LaurentVec::constant(const std::vector<Scalar>& values) {
  LaurentVec v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.add(i, 0, 0, values[i]);
  return v;
}

void LaurentVec::add(std::size_t component, int s_exp, int t_exp, const Scalar& c) {
  if (component >= components_) throw std::out_of_range("LaurentVec: component index out of range");
  if (syz::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(LaurentKey{component, s_exp, t_exp}, c);
  if (!inserted) {
    it->second += c;
    if (syz::is_zero(it->second)) terms_.erase(it);
  }
}

Scalar LaurentVec::coeff(std::size_t component, int s_exp, int t_exp) const {
  auto it = terms_.find(LaurentKey{component, s_exp, t_exp});
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<ExponentWindow> LaurentVec::window() const {
  if (terms_.empty()) return std::nullopt;
  ExponentWindow w{terms_.begin()->first.s_exp, terms_.begin()->first.s_exp, terms_.begin()->first.t_exp,
                   terms_.begin()->first.t_exp};
  for (const auto& [k, c] : terms_) {
    w.s_lo = std::min(w.s_lo, k.s_exp);
    w.s_hi = std::max(w.s_hi, k.s_exp);
    w.t_lo = std::min(w.t_lo, k.t_exp);
    w.t_hi = std::max(w.t_hi, k.t_exp);
  }
  return w;
}

Scalar LaurentVec::evaluate(std::size_t component, const ProjPoint& p) const {
  Scalar acc(0);
  auto it = terms_.lower_bound(LaurentKey{component, std::numeric_limits<int>::min(), std::numeric_limits<int>::min()});
  for (; it != terms_.end() && it->first.component == component; ++it)
    acc += it->second * signed_power(p.s, it->first.s_exp) * signed_power(p.t, it->first.t_exp);
  return acc;
}

LaurentVec& LaurentVec::operator+=(const LaurentVec& o) {
  if (o.components_ != components_) throw std::invalid_argument("LaurentVec: component count mismatch");
  for (const auto& [k, c] : o.terms_) add(k.component, k.s_exp, k.t_exp, c);
  return *this;
}

LaurentVec& LaurentVec::operator-=(const LaurentVec& o) {
  if (o.components_ != components_) throw std::invalid_argument("LaurentVec: component count mismatch");
  for (const auto& [k, c] : o.terms_) add(k.component, k.s_exp, k.t_exp, -c);
  return *this;
}

LaurentVec& LaurentVec::operator*=(const Scalar& c) {
  if (syz::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, x] : terms_) x *= c;
  return *this;
}

LaurentVec operator*(const LaurentVec& v, const HomPoly& f) {
  LaurentVec out(v.components_);
  for (const auto& [k, c] : v.terms_)
    for (int j = 0; j <= f.degree(); ++j)
      if (!is_zero(f.coeff(j))) out.add(k.component, k.s_exp + j, k.t_exp + f.degree() - j, c * f.coeff(j));
  return out;
}

}  // namespace syz
