#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace syz {

using Subset = std::vector<std::size_t>;

/// Binomial coefficient; 0 when k < 0 or k > n, and 0 for negative n.
long binom(long n, long k);

/// Position of a sorted k-subset of {0..n-1} in the lexicographic order.
std::size_t subset_rank(const Subset& s, std::size_t n);
Subset subset_unrank(std::size_t rank, std::size_t n, std::size_t k);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<Subset> subsets(std::size_t n, std::size_t k);

/// e_I ^ e_J for sorted disjoint index sets: the sorted union and the sign of
/// the sorting permutation. nullopt when I and J intersect (product is zero).
std::optional<std::pair<int, Subset>> wedge_indices(const Subset& I, const Subset& J);

}  // namespace syz
