#include "syz/scroll.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "syz/exterior.hpp"

namespace syz {

ScrollData scroll_data(const CurveParams& p) {
  const int n = p.n();
  return {n, std::max(p.x, n - p.x), std::min(p.x, n - p.x), n + 1};
}

long intersect(const DivClass& c1, const DivClass& c2, long f) { return c1.a * c2.a * f + c1.a * c2.b + c2.a * c1.b; }

DivClass curve_class(const CurveParams& p) { return {2, -(static_cast<long>(p.d) - 2 * p.g - 2)}; }

DivClass canonical_class(long f) { return {-2, f - 2}; }

long adjunction_genus(const DivClass& c, long f) {
  return (intersect(c, c, f) + intersect(c, canonical_class(f), f)) / 2 + 1;
}

std::vector<ComplexTerm> zeta_terms(int b, int f) {
  if (b < -1) throw std::invalid_argument("zeta_terms: b = " + std::to_string(b) + " < -1");
  if (f < 2) throw std::invalid_argument("zeta_terms: f = " + std::to_string(f) + " < 2");
  std::vector<ComplexTerm> out;
  const int last = std::max(f - 1, b);
  for (int j = 0; j <= last; ++j) {
    ComplexTerm t{j, 0, 0};
    if (j <= b) {
      t.twist = -j;
      t.mult = binom(f, j) * (b - j + 1);
    } else {
      t.twist = -(j + 1);
      t.mult = binom(f, j + 1) * (j - b);
    }
    if (t.mult != 0) out.push_back(t);
  }
  return out;
}

void BettiTable::add(int p, int j, long beta) {
  if (beta == 0) return;
  entries_[{p, j}] += beta;
}

long BettiTable::at(int p, int j) const {
  auto it = entries_.find({p, j});
  return it == entries_.end() ? 0 : it->second;
}

int BettiTable::max_p() const {
  int m = 0;
  for (const auto& [k, v] : entries_) m = std::max(m, k.first);
  return m;
}

int BettiTable::max_j() const {
  int m = 0;
  for (const auto& [k, v] : entries_) m = std::max(m, k.second);
  return m;
}

BettiTable betti_table(const CurveParams& p) {
  const int f = p.n();
  BettiTable t(p);
  for (const auto& term : zeta_terms(0, f)) t.add(term.j, -term.twist, term.mult);
  for (const auto& term : zeta_terms(p.d - 2 * p.g - 2, f)) t.add(term.j + 1, -(term.twist - 2), term.mult);
  return t;
}

HilbertCheck hilbert_check(const CurveParams& p, const BettiTable& t) {
  const int r = p.r();
  auto dimS = [r](int k) { return k < 0 ? 0L : binom(k + r, r); };
  for (int n = 0; n <= p.d; ++n) {
    long sum = 0;
    for (const auto& [key, beta] : t.entries()) {
      const long term = beta * dimS(n - key.second);
      sum += key.first % 2 == 0 ? term : -term;
    }
    const long expected = n == 0 ? 1 : static_cast<long>(n) * p.d + 1 - p.g;
    if (sum != expected) return {false, n, expected, sum};
  }
  return {true, -1, 0, 0};
}

BridgeCheck betti_bridge(const CurveParams& p, const BettiTable& t) {
  for (int i = 0; i <= p.g; ++i) {
    const long lhs = t.at(p.d - p.g - i - 1, p.d - p.g - i + 1);
    if (lhs != binom(p.n(), i) * (p.g - i)) return {false, i};
  }
  return {true, -1};
}

BridgeCheck betti_bridge(const CurveParams& p) { return betti_bridge(p, betti_table(p)); }

}  // namespace syz
