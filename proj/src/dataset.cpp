#include "parsmo/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string_view>

namespace parsmo {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_space(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_space(rest[e])) ++e;
  auto tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

Dataset::Dataset(std::vector<Sample> samples, std::vector<int> labels)
    : samples_(std::move(samples)), labels_(std::move(labels)) {
  if (samples_.empty()) throw std::invalid_argument("empty dataset");
  if (samples_.size() != labels_.size())
    throw std::invalid_argument("sample/label count mismatch");
  for (std::size_t r = 0; r < samples_.size(); ++r) {
    if (labels_[r] != 1 && labels_[r] != -1)
      throw std::invalid_argument("label must be +1 or -1 (sample " +
                                  std::to_string(r) + ")");
    const auto& f = samples_[r].features;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (!std::isfinite(f[k].value))
        throw std::invalid_argument("non-finite feature value (sample " +
                                    std::to_string(r) + ")");
      if (k > 0 && f[k].index <= f[k - 1].index)
        throw std::invalid_argument(
            "feature indices not strictly increasing (sample " +
            std::to_string(r) + ")");
    }
    dim_ = std::max(dim_, samples_[r].extent());
  }
}

Dataset parse_libsvm(std::istream& in) {
  std::vector<Sample> samples;
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest(line);
    auto label_tok = next_token(rest);
    if (label_tok.empty()) continue;

    double label = 0.0;
    if (!parse_double(label_tok, label))
      throw ParseError(lineno, "malformed label '" + std::string(label_tok) + "'");
    if (label != 1.0 && label != -1.0)
      throw ParseError(lineno, "label must be +1 or -1, got '" +
                                   std::string(label_tok) + "'");

    Sample s;
    for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
      auto colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(lineno, "expected idx:val, got '" + std::string(tok) + "'");
      auto idx_part = tok.substr(0, colon);
      auto val_part = tok.substr(colon + 1);

      std::uint64_t idx = 0;
      auto [p, ec] = std::from_chars(idx_part.data(),
                                     idx_part.data() + idx_part.size(), idx);
      if (ec != std::errc() || p != idx_part.data() + idx_part.size() ||
          idx == 0 || idx > UINT32_MAX)
        throw ParseError(lineno, "bad feature index '" + std::string(idx_part) + "'");

      double val = 0.0;
      if (!parse_double(val_part, val))
        throw ParseError(lineno, "bad feature value '" + std::string(val_part) + "'");
      if (!std::isfinite(val))
        throw ParseError(lineno, "non-finite feature value");

      auto zero_based = static_cast<std::uint32_t>(idx - 1);
      if (!s.features.empty() && zero_based <= s.features.back().index)
        throw ParseError(lineno, "feature indices not strictly increasing");
      s.features.push_back({zero_based, val});
    }
    samples.push_back(std::move(s));
    labels.push_back(label > 0 ? 1 : -1);
  }
  if (samples.empty()) throw ParseError(lineno, "empty dataset");
  return Dataset(std::move(samples), std::move(labels));
}

Dataset load_libsvm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_libsvm(in);
}

void write_libsvm(std::ostream& out, const Dataset& ds) {
  char buf[64];
  for (std::size_t r = 0; r < ds.size(); ++r) {
    out << (ds.label(r) > 0 ? "+1" : "-1");
    for (const auto& f : ds.sample(r).features) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, f.value,
                                   std::chars_format::general, 17);
      out << ' ' << (f.index + 1) << ':' << std::string_view(buf, p - buf);
    }
    out << '\n';
  }
}

Dataset take_subset(const Dataset& ds, std::size_t count, std::uint64_t seed) {
  const std::size_t n = ds.size();
  if (count < 1 || count > n)
    throw std::invalid_argument("subset size " + std::to_string(count) +
                                " outside [1, " + std::to_string(n) + "]");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  // Partial Fisher-Yates; raw engine output keeps this portable across
  // standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(count);
  std::sort(perm.begin(), perm.end());

  std::vector<Sample> samples;
  std::vector<int> labels;
  samples.reserve(count);
  labels.reserve(count);
  for (auto r : perm) {
    samples.push_back(ds.sample(r));
    labels.push_back(ds.label(r));
  }
  return Dataset(std::move(samples), std::move(labels));
}

}  // namespace parsmo
