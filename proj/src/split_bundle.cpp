#include "syz/split_bundle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace syz {

int SplitBundle::degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }

int SplitBundle::max_abs_degree() const {
  int m = 0;
  for (int a : degrees_) m = std::max(m, std::abs(a));
  return m;
}

SplitBundle SplitBundle::dual() const {
  std::vector<int> d(degrees_);
  for (int& a : d) a = -a;
  return SplitBundle(std::move(d));
}

SplitBundle SplitBundle::twist(int k) const {
  std::vector<int> d(degrees_);
  for (int& a : d) a += k;
  return SplitBundle(std::move(d));
}

SplitBundle SplitBundle::wedge(std::size_t k) const {
  std::vector<int> out;
  if (k > rank()) return SplitBundle();
  // k-subsets in lexicographic order
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    int s = 0;
    for (auto i : idx) s += degrees_[i];
    out.push_back(s);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == rank() - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return SplitBundle(std::move(out));
}

SplitBundle SplitBundle::sym(std::size_t k) const {
  std::vector<int> out;
  if (rank() == 0) return k == 0 ? SplitBundle{0} : SplitBundle();
  // k-multisets as non-decreasing index sequences
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    int s = 0;
    for (auto i : idx) s += degrees_[i];
    out.push_back(s);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == rank() - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[pos - 1];
  }
  return SplitBundle(std::move(out));
}

SplitBundle direct_sum(const SplitBundle& a, const SplitBundle& b) {
  std::vector<int> d(a.degrees_);
  d.insert(d.end(), b.degrees_.begin(), b.degrees_.end());
  return SplitBundle(std::move(d));
}

SplitBundle tensor(const SplitBundle& a, const SplitBundle& b) {
  std::vector<int> d;
  d.reserve(a.rank() * b.rank());
  for (int x : a.degrees_)
    for (int y : b.degrees_) d.push_back(x + y);
  return SplitBundle(std::move(d));
}

std::vector<int> SplitBundle::splitting_type() const {
  std::vector<int> d(degrees_);
  std::sort(d.begin(), d.end());
  return d;
}

std::ostream& operator<<(std::ostream& os, const SplitBundle& b) {
  if (b.rank() == 0) return os << "0";
  for (std::size_t i = 0; i < b.rank(); ++i) os << (i ? " + " : "") << "O(" << b[i] << ")";
  return os;
}

long h0(int degree) { return std::max(degree + 1, 0); }
long h1(int degree) { return std::max(-degree - 1, 0); }

CohSpace::CohSpace(SplitBundle bundle, CohDegree which) : bundle_(std::move(bundle)), which_(which) {
  for (std::size_t c = 0; c < bundle_.rank(); ++c) {
    offsets_.push_back(basis_.size());
    const int a = bundle_[c];
    if (which_ == CohDegree::H0) {
      for (int k = 0; k <= a; ++k) basis_.push_back({c, k, a - k});
    } else {
      for (int i = -1; a - i <= -1; --i) basis_.push_back({c, i, a - i});
    }
  }
}

long CohSpace::index_of(std::size_t component, int s_exp, int t_exp) const {
  if (component >= bundle_.rank() || s_exp + t_exp != bundle_[component]) return -1;
  const long off = static_cast<long>(offsets_[component]);
  if (which_ == CohDegree::H0) {
    if (s_exp < 0 || t_exp < 0) return -1;
    return off + s_exp;
  }
  if (s_exp > -1 || t_exp > -1) return -1;
  return off + (-1 - s_exp);
}

Cohomology coh(const SplitBundle& bundle) {
  CohSpace H0(bundle, CohDegree::H0);
  CohSpace H1(bundle, CohDegree::H1);
  const long a = static_cast<long>(H0.dim());
  const long b = static_cast<long>(H1.dim());
  return {a, b, std::move(H0), std::move(H1)};
}

}  // namespace syz
