#include "parsmo/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace parsmo {

std::optional<double> error_vs_reference(double fval,
                                         std::optional<double> fstar) {
  if (!fstar) return std::nullopt;
  if (*fstar == 0.0) return std::abs(fval);
  return std::abs(*fstar - fval) / std::abs(*fstar);
}

MetricsLog::MetricsLog(std::size_t q, std::optional<double> fstar,
                       bool record_time)
    : q_(q), fstar_(fstar), record_time_(record_time) {
  if (q_ == 0) throw std::invalid_argument("q must be at least 1");
}

void MetricsLog::start() {
  start_ = std::chrono::steady_clock::now();
  records_.clear();
  MetricsRecord r;
  r.relative_error = error_vs_reference(0.0, fstar_);
  records_.push_back(r);
}

void MetricsLog::record(const IterationReport& report) {
  MetricsRecord r;
  r.k = report.k;
  r.fval = report.fval;
  r.relative_error = error_vs_reference(report.fval, fstar_);
  r.cols_total = report.columns_total;
  r.cols_per_proc = report.columns_total / q_;
  r.hits = report.hits_total;
  if (record_time_)
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start_)
                    .count();
  r.alpha = report.alpha;
  r.descent = report.descent;
  records_.push_back(r);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_metrics(std::ostream& out, std::span<const MetricsRecord> records) {
  out << kMetricsHeader << '\n';
  for (const auto& r : records) {
    out << r.k << ',' << format_double(r.fval) << ',';
    if (r.relative_error) out << format_double(*r.relative_error);
    out << ',' << r.cols_total << ',' << r.cols_per_proc << ',' << r.hits << ','
        << format_double(r.seconds) << ',' << format_double(r.alpha) << ','
        << (r.descent ? 1 : 0) << '\n';
  }
}

void write_metrics(const std::filesystem::path& path,
                   std::span<const MetricsRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_metrics(out, records);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace parsmo
