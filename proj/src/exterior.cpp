#include "syz/exterior.hpp"

#include <numeric>
#include <stdexcept>

namespace syz {

long binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t subset_rank(const Subset& s, std::size_t n) {
  const long k = static_cast<long>(s.size());
  long r = binom(static_cast<long>(n), k) - 1;
  for (long i = 0; i < k; ++i) {
    if (s[i] >= n || (i > 0 && s[i] <= s[i - 1])) throw std::invalid_argument("subset_rank: not a sorted subset");
    r -= binom(static_cast<long>(n) - 1 - static_cast<long>(s[i]), k - i);
  }
  return static_cast<std::size_t>(r);
}

Subset subset_unrank(std::size_t rank, std::size_t n, std::size_t k) {
  if (static_cast<long>(rank) >= binom(static_cast<long>(n), static_cast<long>(k)))
    throw std::out_of_range("subset_unrank: rank too large");
  Subset s;
  std::size_t next = 0;
  long remaining = static_cast<long>(rank);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = next;; ++c) {
      // number of subsets whose i-th element is c, given the prefix
      const long block = binom(static_cast<long>(n - 1 - c), static_cast<long>(k - 1 - i));
      if (remaining < block) {
        s.push_back(c);
        next = c + 1;
        break;
      }
      remaining -= block;
    }
  }
  return s;
}

std::vector<Subset> subsets(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::optional<std::pair<int, Subset>> wedge_indices(const Subset& I, const Subset& J) {
  Subset out;
  out.reserve(I.size() + J.size());
  // Each element of J passes over the elements of I that are larger than it.
  long inversions = 0;
  std::size_t a = 0, b = 0;
  while (a < I.size() || b < J.size()) {
    if (b == J.size() || (a < I.size() && I[a] < J[b])) {
      out.push_back(I[a++]);
    } else if (a == I.size() || J[b] < I[a]) {
      inversions += static_cast<long>(I.size() - a);
      out.push_back(J[b++]);
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(inversions % 2 == 0 ? 1 : -1, std::move(out));
}

}  // namespace syz
