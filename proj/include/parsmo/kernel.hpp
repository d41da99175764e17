#ifndef PARSMO_KERNEL_HPP
#define PARSMO_KERNEL_HPP

#include <string>
#include <string_view>

#include "parsmo/dataset.hpp"

namespace parsmo {

enum class KernelKind { linear, gaussian };

struct KernelSpec {
  KernelKind kind = KernelKind::gaussian;
  double gamma = 1.0;  // gaussian only

  static KernelSpec linear() { return {KernelKind::linear, 0.0}; }
  static KernelSpec gaussian(double gamma);

  // Throws std::invalid_argument unless gamma > 0 for the gaussian kernel.
  void validate() const;
};

KernelKind parse_kernel_kind(std::string_view name);
std::string to_string(KernelKind kind);

double sparse_dot(const Sample& a, const Sample& b);

// ||a - b||^2 accumulated over the union of supports in index order, so the
// result is bitwise symmetric in (a, b) and exactly 0 for a == b.
double squared_distance(const Sample& a, const Sample& b);

// linear: <a, b>; gaussian: exp(-gamma ||a - b||^2).
double kernel_value(const KernelSpec& spec, const Sample& a, const Sample& b);

}  // namespace parsmo

#endif  // PARSMO_KERNEL_HPP
