#include <random>
#include <sstream>

#include "doctest.h"
#include "instances.hpp"
#include "parsmo/dataset.hpp"

using namespace parsmo;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

Dataset ten_samples() {
  std::vector<Sample> s(10);
  std::vector<int> y(10);
  for (std::uint32_t r = 0; r < 10; ++r) {
    s[r].features = {{r, 1.0 + r}};
    y[r] = r % 2 ? -1 : 1;
  }
  return Dataset(std::move(s), std::move(y));
}

}  // namespace

TEST_CASE("two-line file") {
  auto ds = parse("+1 1:0.5 3:2.0\n-1 2:1.0");
  CHECK(ds.size() == 2);
  CHECK(ds.dim() == 3);
  CHECK(ds.label(0) == 1);
  CHECK(ds.label(1) == -1);
  CHECK(ds.sample(0).features == std::vector<FeatureEntry>{{0, 0.5}, {2, 2.0}});
  CHECK(ds.sample(1).features == std::vector<FeatureEntry>{{1, 1.0}});
}

TEST_CASE("empty stream is an error") {
  CHECK_THROWS_WITH_AS(parse(""), doctest::Contains("empty dataset"), ParseError);
  CHECK_THROWS_AS(parse("\n\n  \n"), ParseError);
}

TEST_CASE("blank lines and unsigned labels") {
  auto ds = parse("\n1 1:1\n\n-1 1:2\n");
  CHECK(ds.size() == 2);
  CHECK(ds.labels() == std::vector<int>{1, -1});
}

TEST_CASE("errors report the offending line") {
  CHECK(error_line("+1 1:1\n0 1:1\n") == 2);
  CHECK(error_line("+1 1:1\n2 1:1\n") == 2);
  CHECK(error_line("+1 2:1 1:1\n") == 1);
  CHECK(error_line("+1 1:1 1:2\n") == 1);
  CHECK(error_line("+1 1:nan\n") == 1);
  CHECK(error_line("+1 1:inf\n") == 1);
  CHECK(error_line("+1 1:1\n-1 1:\n") == 2);
  CHECK(error_line("+1 0:1\n") == 1);
  CHECK(error_line("abc 1:1\n") == 1);
  CHECK(error_line("+1 1:1\n+1 1:1\n-1 x:1\n") == 3);
}

TEST_CASE("round trip through text is the identity") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = testing::random_problem(seed, 30, 7, KernelKind::linear, 1.0);
    std::ostringstream out;
    write_libsvm(out, p.data());
    CHECK(parse(out.str()) == p.data());
  }
  auto a = testing::a9a_like(50, 3);
  std::ostringstream out;
  write_libsvm(out, a);
  CHECK(parse(out.str()) == a);
}

TEST_CASE("labels stay aligned with samples") {
  std::string text;
  for (int r = 1; r <= 20; ++r)
    text += (r % 3 ? "+1 " : "-1 ") + std::to_string(r) + ":" + std::to_string(r) + "\n";
  auto ds = parse(text);
  for (std::size_t r = 0; r < 20; ++r) {
    CHECK(ds.label(r) == ((r + 1) % 3 ? 1 : -1));
    CHECK(ds.sample(r).features.front().index == r);
  }
}

TEST_CASE("take_subset") {
  auto ds = ten_samples();

  SUBCASE("full subset is a permutation") {
    auto s = take_subset(ds, 10, 7);
    CHECK(s.size() == 10);
    for (const auto& sample : ds.samples())
      CHECK(std::count(s.samples().begin(), s.samples().end(), sample) == 1);
  }
  SUBCASE("deterministic for a seed") {
    CHECK(take_subset(ds, 3, 7) == take_subset(ds, 3, 7));
    CHECK(take_subset(ds, 3, 7).size() == 3);
  }
  SUBCASE("pairs stay together") {
    auto s = take_subset(ds, 5, 11);
    for (std::size_t r = 0; r < s.size(); ++r) {
      const auto idx = s.sample(r).features.front().index;
      CHECK(s.label(r) == (idx % 2 ? -1 : 1));
    }
  }
  SUBCASE("count out of range") {
    CHECK_THROWS(take_subset(ds, 0, 7));
    CHECK_THROWS(take_subset(ds, 11, 7));
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS(Dataset({}, {}));
  CHECK_THROWS(Dataset({Sample{}}, {1, -1}));
  CHECK_THROWS(Dataset({Sample{}}, {0}));
  CHECK(Dataset({Sample{}}, {1}).dim() == 1);
}
