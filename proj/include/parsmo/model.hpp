#ifndef PARSMO_MODEL_HPP
#define PARSMO_MODEL_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "parsmo/dataset.hpp"
#include "parsmo/kernel.hpp"
#include "parsmo/problem.hpp"
#include "parsmo/qp_state.hpp"

namespace parsmo {

struct SupportVector {
  double alpha;  // 0 < alpha <= C
  int y;
  Sample features;
};

struct Model {
  KernelSpec kernel;
  double C = 1.0;
  double bias = 0.0;
  std::size_t dim = 1;
  std::vector<SupportVector> support;
};

// Midpoint (m + M) / 2 of the KKT interval; falls back to the finite end
// when one index set is empty, 0 when both are.
double kkt_bias(const ViolationView& view);

// Keeps every sample with x_r > 0.
Model build_model(const Problem& problem, const QPState& state,
                  const ViolationView& view);

// sum_r alpha_r y_r K(z_r, z) + bias
double decision_value(const Model& model, const Sample& z);

// Sign of the decision value; exactly 0 maps to +1.
int predict_label(const Model& model, const Sample& z);

struct Prediction {
  std::vector<int> labels;
  double accuracy = 0.0;
};

// Throws std::invalid_argument when the data has more features than the
// model was trained on.
Prediction predict(const Model& model, const Dataset& data);

void write_model(std::ostream& out, const Model& model);
void write_model(const std::filesystem::path& path, const Model& model);
Model read_model(std::istream& in);
Model read_model(const std::filesystem::path& path);

}  // namespace parsmo

#endif  // PARSMO_MODEL_HPP
