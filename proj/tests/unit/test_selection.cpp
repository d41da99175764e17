#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "instances.hpp"
#include "parsmo/qp_state.hpp"
#include "parsmo/selection.hpp"

using namespace parsmo;

namespace {

QPState random_state(const Problem& p, std::mt19937_64& rng) {
  std::vector<double> x(p.size(), 0.0);
  const double C = p.C();
  for (int it = 0; it < 200; ++it) {
    const std::size_t i = rng() % p.size(), j = rng() % p.size();
    if (i == j) continue;
    const double di = p.y(i), dj = -p.y(j);
    const double lim = std::min(di > 0 ? C - x[i] : x[i], dj > 0 ? C - x[j] : x[j]);
    const double t = testing::unit_uniform(rng()) < 0.3 ? lim : lim * testing::unit_uniform(rng());
    x[i] = std::clamp(x[i] + t * di, 0.0, C);
    x[j] = std::clamp(x[j] + t * dj, 0.0, C);
  }
  QPState s;
  s.grad = full_gradient(p, x);
  s.x = std::move(x);
  return s;
}

void check_pairs(const BlockSelection& sel, const ViolationView& view,
                 const std::vector<double>& grad, const std::vector<int>& y) {
  std::set<std::size_t> used;
  const std::set<std::size_t> up(view.i_up.begin(), view.i_up.end());
  const std::set<std::size_t> low(view.i_low.begin(), view.i_low.end());
  for (const auto& b : sel.blocks) {
    REQUIRE(b.size() == 2);
    CHECK(used.insert(b[0]).second);
    CHECK(used.insert(b[1]).second);
    CHECK(up.count(b[0]));
    CHECK(low.count(b[1]));
    CHECK(-y[b[0]] * grad[b[0]] > -y[b[1]] * grad[b[1]]);
  }
}

}  // namespace

TEST_CASE("q = 1 selects the most violating pair") {
  auto p = testing::four_variable_problem();
  auto s = init_zero(p);
  auto view = violation_view(p, s, 1e-12);
  const std::vector<int> y(p.data().labels());
  auto sel = select_pairs_parsmo1(view, s.grad, y, 1);
  REQUIRE(sel.blocks.size() == 1);
  CHECK(sel.blocks[0] == std::vector<std::size_t>{0, 2});
  CHECK(sel.contains_mvp);
}

TEST_CASE("four-variable example with two pairs") {
  auto p = testing::four_variable_problem();
  auto s = init_zero(p);
  auto view = violation_view(p, s, 1e-12);
  const std::vector<int> y(p.data().labels());
  auto sel = select_pairs_parsmo1(view, s.grad, y, 2);
  CHECK(sel.blocks == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}});
  CHECK(select_pairs_parsmo1(view, s.grad, y, 8).blocks.size() == 2);
}

TEST_CASE("exhaustion of the up set") {
  ViolationView view;
  view.i_up = {5};
  view.i_low = {0, 1, 2, 3};
  std::vector<double> grad{0.5, 0.4, 0.3, 0.2, 0.0, -2.0};
  std::vector<int> y{1, 1, 1, 1, 1, 1};
  view.m = 2.0;
  view.M = -0.5;
  view.mvp = {{5, 0}};
  auto sel = select_pairs_parsmo1(view, grad, y, 4);
  CHECK(sel.blocks == std::vector<std::vector<std::size_t>>{{5, 0}});
}

TEST_CASE("pairs are disjoint, violating, and led by the MVP") {
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto p = testing::random_problem(seed, 20 + seed * 3, 5,
                                     seed % 2 ? KernelKind::gaussian : KernelKind::linear,
                                     seed % 3 ? 1.0 : 0.1);
    auto s = random_state(p, rng);
    auto view = violation_view(p, s, 1e-12 * p.C());
    if (!view.mvp || is_stopped(view, 1e-9)) continue;
    const std::vector<int> y(p.data().labels());
    for (std::size_t q : {1, 2, 4, 8, 16}) {
      auto sel = select_pairs_parsmo1(view, s.grad, y, q);
      CHECK(sel.blocks.size() <= q);
      REQUIRE(!sel.blocks.empty());
      CHECK(sel.blocks[0] == std::vector<std::size_t>{view.mvp->first, view.mvp->second});
      check_pairs(sel, view, s.grad, y);
      // Ranking: i's nonincreasing, j's nondecreasing in score.
      for (std::size_t h = 1; h < sel.blocks.size(); ++h) {
        CHECK(-y[sel.blocks[h - 1][0]] * s.grad[sel.blocks[h - 1][0]] >=
              -y[sel.blocks[h][0]] * s.grad[sel.blocks[h][0]]);
        CHECK(-y[sel.blocks[h - 1][1]] * s.grad[sel.blocks[h - 1][1]] <=
              -y[sel.blocks[h][1]] * s.grad[sel.blocks[h][1]]);
      }
    }
  }
}

TEST_CASE("cache-restricted selection") {
  std::mt19937_64 rng(13);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto p = testing::random_problem(seed, 40, 5, KernelKind::gaussian, 1.0);
    auto s = random_state(p, rng);
    auto view = violation_view(p, s, 1e-12);
    if (!view.mvp || is_stopped(view, 1e-9)) continue;
    const std::vector<int> y(p.data().labels());
    const std::vector<std::size_t> mvp{view.mvp->first, view.mvp->second};

    auto none = select_pairs_parsmo2(view, s.grad, y, 4, {});
    CHECK(none.blocks == std::vector<std::vector<std::size_t>>{mvp});

    std::vector<std::size_t> all(p.size());
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t q : {1, 2, 4, 8})
      CHECK(select_pairs_parsmo2(view, s.grad, y, q, all).blocks ==
            select_pairs_parsmo1(view, s.grad, y, q).blocks);

    std::vector<std::size_t> some;
    for (std::size_t r = 0; r < p.size(); ++r)
      if (rng() % 2) some.push_back(r);
    auto sel = select_pairs_parsmo2(view, s.grad, y, 6, some);
    CHECK(sel.blocks[0] == mvp);
    CHECK(sel.contains_mvp);
    check_pairs(sel, view, s.grad, y);
    for (std::size_t h = 1; h < sel.blocks.size(); ++h)
      for (auto r : sel.blocks[h])
        CHECK(std::binary_search(some.begin(), some.end(), r));
  }
}

TEST_CASE("partitions") {
  auto id = make_partition(7, 2, 0);
  CHECK(id == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}, {4, 5}, {6}});
  auto shuffled = make_partition(50, 4, 99);
  CHECK(shuffled == make_partition(50, 4, 99));
  std::vector<std::size_t> seen;
  for (const auto& b : shuffled) {
    CHECK(b.size() <= 4);
    seen.insert(seen.end(), b.begin(), b.end());
  }
  std::sort(seen.begin(), seen.end());
  std::vector<std::size_t> want(50);
  std::iota(want.begin(), want.end(), 0);
  CHECK(seen == want);
  CHECK_THROWS(make_partition(5, 0, 0));
}
