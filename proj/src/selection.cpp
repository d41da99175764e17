#include "parsmo/selection.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace parsmo {

namespace {

struct Ranked {
  std::size_t index;
  double score;  // -y_r grad_r
};

std::vector<Ranked> rank(std::span<const std::size_t> set,
                         std::span<const double> grad, std::span<const int> y,
                         bool descending) {
  std::vector<Ranked> out;
  out.reserve(set.size());
  for (auto r : set) out.push_back({r, -y[r] * grad[r]});
  std::sort(out.begin(), out.end(), [descending](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return descending ? a.score > b.score : a.score < b.score;
    return a.index < b.index;
  });
  return out;
}

void match_ranked(const std::vector<Ranked>& up, const std::vector<Ranked>& low,
                  std::size_t max_pairs, std::unordered_set<std::size_t>& used,
                  BlockSelection& out) {
  std::size_t pu = 0, pl = 0;
  for (std::size_t added = 0; added < max_pairs; ++added) {
    while (pu < up.size() && used.contains(up[pu].index)) ++pu;
    if (pu == up.size()) return;
    const auto i = up[pu];
    while (pl < low.size() &&
           (used.contains(low[pl].index) || low[pl].index == i.index))
      ++pl;
    if (pl == low.size()) return;
    const auto j = low[pl];
    if (i.score <= j.score) return;
    used.insert(i.index);
    used.insert(j.index);
    out.blocks.push_back({i.index, j.index});
    ++pu;
    ++pl;
  }
}

}  // namespace

BlockSelection select_pairs_parsmo1(const ViolationView& view,
                                    std::span<const double> grad,
                                    std::span<const int> y, std::size_t q) {
  if (q == 0) throw std::invalid_argument("q must be at least 1");
  BlockSelection sel;
  if (!view.mvp) return sel;
  auto up = rank(view.i_up, grad, y, true);
  auto low = rank(view.i_low, grad, y, false);
  std::unordered_set<std::size_t> used;
  match_ranked(up, low, q, used, sel);
  sel.contains_mvp = !sel.blocks.empty() &&
                     sel.blocks.front()[0] == view.mvp->first &&
                     sel.blocks.front()[1] == view.mvp->second;
  return sel;
}

BlockSelection select_pairs_parsmo2(const ViolationView& view,
                                    std::span<const double> grad,
                                    std::span<const int> y, std::size_t q,
                                    std::span<const std::size_t> resident) {
  if (q == 0) throw std::invalid_argument("q must be at least 1");
  BlockSelection sel;
  if (!view.mvp) return sel;
  const auto [i1, j1] = *view.mvp;
  sel.blocks.push_back({i1, j1});
  sel.contains_mvp = true;
  if (q == 1) return sel;

  auto restrict_to_cache = [&](const std::vector<std::size_t>& set) {
    std::vector<std::size_t> out;
    for (auto r : set)
      if (std::binary_search(resident.begin(), resident.end(), r))
        out.push_back(r);
    return out;
  };
  auto up = rank(restrict_to_cache(view.i_up), grad, y, true);
  auto low = rank(restrict_to_cache(view.i_low), grad, y, false);
  std::unordered_set<std::size_t> used{i1, j1};
  match_ranked(up, low, q - 1, used, sel);
  return sel;
}

std::vector<std::vector<std::size_t>> make_partition(std::size_t n,
                                                     std::size_t block_size,
                                                     std::uint64_t seed) {
  if (block_size == 0) throw std::invalid_argument("block size must be positive");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i)
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
  }
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t start = 0; start < n; start += block_size) {
    auto end = std::min(n, start + block_size);
    blocks.emplace_back(order.begin() + start, order.begin() + end);
  }
  return blocks;
}

}  // namespace parsmo
