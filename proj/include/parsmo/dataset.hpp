#ifndef PARSMO_DATASET_HPP
#define PARSMO_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace parsmo {

// One nonzero of a sparse sample. Indices are 0-based in memory and 1-based
// in LIBSVM files.
struct FeatureEntry {
  std::uint32_t index;
  double value;

  friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

// Sparse feature vector with strictly increasing indices.
struct Sample {
  std::vector<FeatureEntry> features;

  // Largest 0-based index + 1, or 0 for the empty vector.
  std::size_t extent() const {
    return features.empty() ? 0 : features.back().index + 1;
  }

  friend bool operator==(const Sample&, const Sample&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Immutable set of labelled samples. Labels are +1/-1; the feature
// dimension is the largest index over all samples (at least 1).
class Dataset {
 public:
  Dataset(std::vector<Sample> samples, std::vector<int> labels);

  std::size_t size() const { return samples_.size(); }
  std::size_t dim() const { return dim_; }

  const Sample& sample(std::size_t r) const { return samples_[r]; }
  int label(std::size_t r) const { return labels_[r]; }

  const std::vector<Sample>& samples() const { return samples_; }
  const std::vector<int>& labels() const { return labels_; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Sample> samples_;
  std::vector<int> labels_;
  std::size_t dim_ = 1;
};

Dataset parse_libsvm(std::istream& in);
Dataset load_libsvm(const std::filesystem::path& path);

// Writes `label idx:val ...` lines with 17 significant digits so that
// parse_libsvm(write_libsvm(ds)) == ds.
void write_libsvm(std::ostream& out, const Dataset& ds);

// Deterministic pseudo-random subset of `count` samples. The selected samples
// keep their relative order from `ds`.
Dataset take_subset(const Dataset& ds, std::size_t count, std::uint64_t seed);

}  // namespace parsmo

#endif  // PARSMO_DATASET_HPP
