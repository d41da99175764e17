#ifndef PARSMO_SELECTION_HPP
#define PARSMO_SELECTION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "parsmo/qp_state.hpp"

namespace parsmo {

// Blocks chosen for one iteration. For the SMO variants every block is an
// ordered pair (i, j) with i from the up set and j from the low set.
struct BlockSelection {
  std::vector<std::vector<std::size_t>> blocks;
  bool contains_mvp = false;
};

// Up to q disjoint pairs: the up set ranked by decreasing -y_r grad_r, the
// low set by increasing -y_r grad_r (lowest index first on ties), matched
// rank to rank. An index already used is skipped and the next ranked one
// taken. Pairing stops at the first non-violating match. Pair 1 is the MVP.
BlockSelection select_pairs_parsmo1(const ViolationView& view,
                                    std::span<const double> grad,
                                    std::span<const int> y, std::size_t q);

// Pair 1 is the unrestricted MVP; the remaining q - 1 pairs follow the same
// ranking restricted to `resident` (sorted column indices in the cache) and
// disjoint from the MVP.
BlockSelection select_pairs_parsmo2(const ViolationView& view,
                                    std::span<const double> grad,
                                    std::span<const int> y, std::size_t q,
                                    std::span<const std::size_t> resident);

// Contiguous chunks of `block_size` over a seeded permutation of 0..n-1.
std::vector<std::vector<std::size_t>> make_partition(std::size_t n,
                                                     std::size_t block_size,
                                                     std::uint64_t seed);

}  // namespace parsmo

#endif  // PARSMO_SELECTION_HPP
