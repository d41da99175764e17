#ifndef PARSMO_TESTS_INSTANCES_HPP
#define PARSMO_TESTS_INSTANCES_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "parsmo/dataset.hpp"
#include "parsmo/kernel.hpp"
#include "parsmo/problem.hpp"

namespace parsmo::testing {

std::shared_ptr<const Dataset> make_dataset(std::vector<Sample> samples,
                                            std::vector<int> labels);

// Q = I through four orthogonal unit samples under the linear kernel,
// y = (1, 1, -1, -1), C = 1.
Problem four_variable_problem();

// Dense gaussian features, labels from a noisy linear rule (both classes
// always present).
Problem random_problem(std::uint64_t seed, std::size_t n, std::size_t m,
                       KernelKind kind, double C);

// Identical positives and identical negatives: every parallel pair step
// pushes along the same direction, so summing q of them overshoots.
Problem overlapping_problem(std::size_t copies, double C);

// Binary one-hot samples shaped like the LIBSVM a9a set: 14 categorical
// attributes expanded into 123 indicator features, about 24% positives.
Dataset a9a_like(std::size_t n, std::uint64_t seed);

// The real a9a file when PARSMO_A9A points at it, otherwise std::nullopt.
std::optional<std::string> a9a_path();

// 2000-sample subset of a9a (or of the surrogate when the file is absent).
struct A9aSubset {
  std::shared_ptr<const Dataset> data;
  bool real;
};
A9aSubset a9a_subset(std::size_t count, std::uint64_t seed);

// Uniform double in [0, 1) from raw engine bits (portable across libraries).
double unit_uniform(std::uint64_t bits);

}  // namespace parsmo::testing

#endif  // PARSMO_TESTS_INSTANCES_HPP
