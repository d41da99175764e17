#include "parsmo/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace parsmo {

KernelSpec KernelSpec::gaussian(double gamma) {
  KernelSpec spec{KernelKind::gaussian, gamma};
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  if (kind == KernelKind::gaussian && !(gamma > 0.0 && std::isfinite(gamma)))
    throw std::invalid_argument("gaussian kernel needs gamma > 0");
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "linear") return KernelKind::linear;
  if (name == "gaussian" || name == "rbf") return KernelKind::gaussian;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::string to_string(KernelKind kind) {
  return kind == KernelKind::linear ? "linear" : "gaussian";
}

double sparse_dot(const Sample& a, const Sample& b) {
  const auto& fa = a.features;
  const auto& fb = b.features;
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].index == fb[j].index) {
      sum += fa[i].value * fb[j].value;
      ++i;
      ++j;
    } else if (fa[i].index < fb[j].index) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double squared_distance(const Sample& a, const Sample& b) {
  const auto& fa = a.features;
  const auto& fb = b.features;
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    double diff;
    if (j == fb.size() || (i < fa.size() && fa[i].index < fb[j].index)) {
      diff = fa[i++].value;
    } else if (i == fa.size() || fb[j].index < fa[i].index) {
      diff = fb[j++].value;
    } else {
      diff = fa[i++].value - fb[j++].value;
    }
    sum += diff * diff;
  }
  return sum;
}

double kernel_value(const KernelSpec& spec, const Sample& a, const Sample& b) {
  if (spec.kind == KernelKind::linear) return sparse_dot(a, b);
  return std::exp(-spec.gamma * squared_distance(a, b));
}

}  // namespace parsmo
