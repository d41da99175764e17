#ifndef PARSMO_METRICS_HPP
#define PARSMO_METRICS_HPP

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parsmo/solver.hpp"

namespace parsmo {

inline constexpr const char* kMetricsHeader =
    "k,f,re,cols_total,cols_per_proc,hits,seconds,alpha,descent";

struct MetricsRecord {
  std::size_t k = 0;
  double fval = 0.0;
  std::optional<double> relative_error;  // empty when no reference optimum
  std::size_t cols_total = 0;
  std::size_t cols_per_proc = 0;  // cols_total / q, integer division
  std::size_t hits = 0;
  double seconds = 0.0;
  double alpha = 0.0;
  bool descent = false;
};

// Relative error against fstar; absolute error when fstar == 0.
std::optional<double> error_vs_reference(double fval,
                                         std::optional<double> fstar);

// Collects one record per iteration plus the initial point.
class MetricsLog {
 public:
  MetricsLog(std::size_t q, std::optional<double> fstar, bool record_time);

  void start();
  void record(const IterationReport& report);

  const std::vector<MetricsRecord>& records() const { return records_; }

 private:
  std::size_t q_;
  std::optional<double> fstar_;
  bool record_time_;
  std::chrono::steady_clock::time_point start_;
  std::vector<MetricsRecord> records_;
};

// %.17g: enough digits to round-trip any double.
std::string format_double(double v);

void write_metrics(std::ostream& out, std::span<const MetricsRecord> records);
void write_metrics(const std::filesystem::path& path,
                   std::span<const MetricsRecord> records);

}  // namespace parsmo

#endif  // PARSMO_METRICS_HPP
