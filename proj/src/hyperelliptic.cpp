#include "syz/hyperelliptic.hpp"

#include <stdexcept>
#include <string>

#include "syz/exterior.hpp"

namespace syz {

namespace {

void check_index(const CurveParams& p, int i, int lo, const char* who) {
  if (i < lo || i > p.r())
    throw std::invalid_argument(std::string(who) + ": i = " + std::to_string(i) + " outside " + std::to_string(lo) +
                                " <= i <= d - g = " + std::to_string(p.r()));
}

}  // namespace

std::pair<int, int> x_range(int g, int d) {
  // ceil((d - 2g - 2) / 2) for d - 2g - 2 >= -1
  const int lo = std::max(1, (d - 2 * g - 1) / 2);
  const int hi = (d - g - 1) / 2;
  return {lo, hi};
}

CurveParams validate(int g, int d, int x) {
  if (g < 2) throw std::invalid_argument("invalid parameters: genus g = " + std::to_string(g) + " violates g >= 2");
  if (d < 2 * g + 1)
    throw std::invalid_argument("invalid parameters: degree d = " + std::to_string(d) + " violates d >= 2g + 1 = " +
                                std::to_string(2 * g + 1));
  const auto [lo, hi] = x_range(g, d);
  if (x < lo)
    throw std::invalid_argument("invalid parameters: x = " + std::to_string(x) +
                                " violates x >= max(1, ceil((d - 2g - 2)/2)) = " + std::to_string(lo));
  if (x > hi)
    throw std::invalid_argument("invalid parameters: x = " + std::to_string(x) + " violates x <= floor((d - g - 1)/2) = " +
                                std::to_string(hi));
  return CurveParams{g, d, x};
}

CohPair pushforward_coh(const CurveParams& p, int e, int k) {
  if (e != 0 && e != 1) throw std::invalid_argument("pushforward_coh: e must be 0 or 1");
  const SplitBundle F = e == 1 ? p.W().twist(k) : SplitBundle{k, k - p.g - 1};
  const Cohomology c = coh(F);
  return {c.h0, c.h1};
}

long dim_L_prime(const CurveParams& p, int i) {
  check_index(p, i, 0, "dim_L_prime");
  return binom(p.N(), i) + binom(p.n(), i - 2) * (p.d - i - p.g);
}

WedgeDim dim_wedge_E(const CurveParams& p, int i) {
  check_index(p, i, 0, "dim_wedge_E");
  const long n = p.n();
  const long twisted = p.g - p.d + 2 * i + 1;  // chi(L (x) T^-(d-g-i))
  if (i <= p.g) return {binom(n, i - 1) * twisted + binom(n, i) * (i + 1), true};
  const long chi_T = 2 * i + 1 - p.g;
  return {binom(n, i - 1) * twisted + binom(n, i) * chi_T, false};
}

long h1_wedge_E(const CurveParams& p, int i) {
  check_index(p, i, 0, "h1_wedge_E");
  return i <= p.g ? binom(p.n(), i) * (p.g - i) : 0;
}

std::vector<int> section_weights(const CurveParams& p) {
  std::vector<int> w;
  for (int k = 0; k <= p.x; ++k) w.push_back(k);
  for (int l = 0; l <= p.n() - p.x; ++l) w.push_back(l);
  return w;
}

std::vector<HomPoly> minor_vector(const CurveParams& p) {
  // Section a of W: first x + 1 are s^k t^(x-k) e1, the rest s^l t^(n-x-l) e2.
  // The minor of columns a < b is nonzero only for a in the first block and
  // b in the second, where it equals s^(k+l) t^(n-k-l).
  const std::size_t N = static_cast<std::size_t>(p.N());
  const std::size_t first = static_cast<std::size_t>(p.x + 1);
  const auto w = section_weights(p);
  std::vector<HomPoly> m;
  for (const auto& ab : subsets(N, 2)) {
    if (ab[0] < first && ab[1] >= first) {
      const int e = w[ab[0]] + w[ab[1]];
      m.push_back(HomPoly::monomial(e, p.n() - e));
    } else {
      m.push_back(HomPoly(p.n()));
    }
  }
  return m;
}

CokernelPresentation build_L_prime(const CurveParams& p, int i) {
  check_index(p, i, 0, "build_L_prime");
  const std::size_t N = static_cast<std::size_t>(p.N());
  const auto w = section_weights(p);
  auto weight = [&](const Subset& I) {
    int s = 0;
    for (auto a : I) s += w[a];
    return -s;
  };

  const auto targets = subsets(N, static_cast<std::size_t>(i));
  CokernelPresentation out;
  for (const auto& I : targets) out.target_weights.push_back(weight(I));
  if (i < 2) {
    out.map = BundleMap(SplitBundle(), SplitBundle::trivial(targets.size()));
    return out;
  }

  const auto sources = subsets(N, static_cast<std::size_t>(i - 2));
  const auto pairs = subsets(N, 2);
  const auto m = minor_vector(p);
  BundleMap phi(SplitBundle::uniform(sources.size(), -p.n()), SplitBundle::trivial(targets.size()));
  for (std::size_t j = 0; j < sources.size(); ++j) {
    out.source_weights.push_back(weight(sources[j]));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (m[k].is_zero()) continue;
      const auto prod = wedge_indices(sources[j], pairs[k]);
      if (!prod) continue;
      phi.set(subset_rank(prod->second, N), j, prod->first > 0 ? m[k] : -m[k]);
    }
  }
  out.map = std::move(phi);
  out.certificate = WedgeCertificate{N, static_cast<std::size_t>(i), m};
  return out;
}

DimComparison dim_comparison(const CurveParams& p, int i) {
  check_index(p, i, 2, "dim_comparison");
  const long lp = dim_L_prime(p, i);
  const WedgeDim we = dim_wedge_E(p, i);
  return {i, lp, we.value, we.in_range, lp == we.value};
}

int x_from_criterion(const CurveParams& p) {
  for (int xp = 0;; ++xp)
    if (coh(p.W().twist(-2 - xp)).h1 != 0) return xp;
}

}  // namespace syz
