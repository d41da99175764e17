#include "instances.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace parsmo::testing {

std::shared_ptr<const Dataset> make_dataset(std::vector<Sample> samples,
                                            std::vector<int> labels) {
  return std::make_shared<const Dataset>(std::move(samples), std::move(labels));
}

Problem four_variable_problem() {
  std::vector<Sample> s(4);
  for (std::uint32_t r = 0; r < 4; ++r) s[r].features = {{r, 1.0}};
  return Problem(make_dataset(std::move(s), {1, 1, -1, -1}), KernelSpec::linear(),
                 1.0);
}

double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Problem random_problem(std::uint64_t seed, std::size_t n, std::size_t m,
                       KernelKind kind, double C) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> w(m);
  for (auto& v : w) v = normal(rng);

  std::vector<Sample> samples(n);
  std::vector<int> labels(n);
  for (std::size_t r = 0; r < n; ++r) {
    double score = 0.0;
    for (std::uint32_t f = 0; f < m; ++f) {
      if (unit_uniform(rng()) < 0.2) continue;  // some sparsity
      const double v = normal(rng);
      samples[r].features.push_back({f, v});
      score += w[f] * v;
    }
    score += 0.7 * normal(rng);
    labels[r] = score >= 0.0 ? 1 : -1;
  }
  labels[0] = 1;
  labels[1] = -1;

  KernelSpec spec = kind == KernelKind::linear
                        ? KernelSpec::linear()
                        : KernelSpec::gaussian(1.0 / static_cast<double>(m));
  return Problem(make_dataset(std::move(samples), std::move(labels)), spec, C);
}

Problem overlapping_problem(std::size_t copies, double C) {
  std::vector<Sample> samples;
  std::vector<int> labels;
  for (std::size_t c = 0; c < copies; ++c) {
    samples.push_back(Sample{{{0, 1.0}}});
    labels.push_back(1);
  }
  for (std::size_t c = 0; c < copies; ++c) {
    samples.push_back(Sample{{{1, 1.0}}});
    labels.push_back(-1);
  }
  return Problem(make_dataset(std::move(samples), std::move(labels)),
                 KernelSpec::linear(), C);
}

Dataset a9a_like(std::size_t n, std::uint64_t seed) {
  // Attribute cardinalities of the a9a binarization; they sum to 123.
  constexpr std::array<std::uint32_t, 14> card = {5, 8, 5, 16, 5, 7, 14,
                                                  6, 5, 2, 2, 2, 5, 41};
  std::mt19937_64 rng(seed);

  // Fixed per-value label weights and skewed value frequencies.
  std::mt19937_64 meta(0x5eed'a9a0ULL);
  std::vector<std::vector<double>> weight(card.size()), freq(card.size());
  for (std::size_t a = 0; a < card.size(); ++a) {
    double total = 0.0;
    for (std::uint32_t v = 0; v < card[a]; ++v) {
      weight[a].push_back(2.0 * unit_uniform(meta()) - 1.0);
      const double f = std::pow(1.0 + v, -1.2) * (0.5 + unit_uniform(meta()));
      freq[a].push_back(f);
      total += f;
    }
    for (auto& f : freq[a]) f /= total;
  }

  std::vector<Sample> samples(n);
  std::vector<int> labels(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::uint32_t offset = 0;
    double score = -1.35;
    for (std::size_t a = 0; a < card.size(); ++a) {
      // a9a leaves a few attributes unset (missing values).
      if (unit_uniform(rng()) < 0.02) {
        offset += card[a];
        continue;
      }
      double u = unit_uniform(rng());
      std::uint32_t v = 0;
      while (v + 1 < card[a] && u >= freq[a][v]) u -= freq[a][v++];
      samples[r].features.push_back({offset + v, 1.0});
      score += weight[a][v];
      offset += card[a];
    }
    score += 0.8 * (2.0 * unit_uniform(rng()) - 1.0);
    labels[r] = score > 0.0 ? 1 : -1;
  }
  labels[0] = 1;
  labels[1] = -1;
  // Pin the dimension at 123 like the real file.
  samples[0].features.back() = {122, 1.0};
  return Dataset(std::move(samples), std::move(labels));
}

std::optional<std::string> a9a_path() {
  if (const char* p = std::getenv("PARSMO_A9A"); p && *p) return std::string(p);
  return std::nullopt;
}

A9aSubset a9a_subset(std::size_t count, std::uint64_t seed) {
  if (auto path = a9a_path()) {
    auto full = load_libsvm(*path);
    return {std::make_shared<const Dataset>(take_subset(full, count, seed)), true};
  }
  return {std::make_shared<const Dataset>(a9a_like(count, seed)), false};
}

}  // namespace parsmo::testing
