#include "parsmo/problem.hpp"

#include <stdexcept>

namespace parsmo {

Problem::Problem(std::shared_ptr<const Dataset> data, KernelSpec kernel,
                 double C)
    : data_(std::move(data)), kernel_(kernel), C_(C) {
  if (!data_) throw std::invalid_argument("problem needs a dataset");
  kernel_.validate();
  if (!(C_ > 0.0)) throw std::invalid_argument("C must be positive");
}

double Problem::hessian_entry(std::size_t r, std::size_t s) const {
  return y(r) * y(s) *
         kernel_value(kernel_, data_->sample(r), data_->sample(s));
}

}  // namespace parsmo
