#ifndef PARSMO_PROBLEM_HPP
#define PARSMO_PROBLEM_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "parsmo/dataset.hpp"
#include "parsmo/kernel.hpp"

namespace parsmo {

// Dual SVM problem
//
//   min  f(x) = 1/2 x'Qx - e'x   s.t.  y'x = 0,  0 <= x <= C
//
// with Q_{rs} = y_r y_s K(z_r, z_s) kept implicit.
class Problem {
 public:
  Problem(std::shared_ptr<const Dataset> data, KernelSpec kernel, double C);

  std::size_t size() const { return data_->size(); }
  const Dataset& data() const { return *data_; }
  const std::shared_ptr<const Dataset>& data_ptr() const { return data_; }
  const KernelSpec& kernel() const { return kernel_; }
  double C() const { return C_; }
  int y(std::size_t r) const { return data_->label(r); }

  // Single Hessian entry by direct kernel evaluation.
  double hessian_entry(std::size_t r, std::size_t s) const;

 private:
  std::shared_ptr<const Dataset> data_;
  KernelSpec kernel_;
  double C_;
};

struct QPState {
  std::vector<double> x;
  std::vector<double> grad;  // Qx - e, maintained incrementally
  double fval = 0.0;         // maintained incrementally
  std::size_t k = 0;
};

struct DirectionEntry {
  std::size_t index;
  double value;
};

// Nonzeros of a search direction in assembly order. The gradient update sums
// column contributions in exactly this order.
using SparseDirection = std::vector<DirectionEntry>;

}  // namespace parsmo

#endif  // PARSMO_PROBLEM_HPP
