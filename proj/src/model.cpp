#include "parsmo/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "parsmo/metrics.hpp"

namespace parsmo {

double kkt_bias(const ViolationView& view) {
  const bool has_up = !view.i_up.empty();
  const bool has_low = !view.i_low.empty();
  if (has_up && has_low) return 0.5 * (view.m + view.M);
  if (has_up) return view.m;
  if (has_low) return view.M;
  return 0.0;
}

Model build_model(const Problem& problem, const QPState& state,
                  const ViolationView& view) {
  Model model;
  model.kernel = problem.kernel();
  model.C = problem.C();
  model.bias = kkt_bias(view);
  model.dim = problem.data().dim();
  for (std::size_t r = 0; r < problem.size(); ++r) {
    if (state.x[r] > 0.0)
      model.support.push_back(
          {state.x[r], problem.y(r), problem.data().sample(r)});
  }
  return model;
}

double decision_value(const Model& model, const Sample& z) {
  double sum = 0.0;
  for (const auto& sv : model.support)
    sum += sv.alpha * sv.y * kernel_value(model.kernel, sv.features, z);
  return sum + model.bias;
}

int predict_label(const Model& model, const Sample& z) {
  return decision_value(model, z) >= 0.0 ? 1 : -1;
}

Prediction predict(const Model& model, const Dataset& data) {
  if (data.dim() > model.dim)
    throw std::invalid_argument("data has " + std::to_string(data.dim()) +
                                " features, model was trained on " +
                                std::to_string(model.dim));
  Prediction p;
  p.labels.reserve(data.size());
  std::size_t correct = 0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    p.labels.push_back(predict_label(model, data.sample(r)));
    if (p.labels.back() == data.label(r)) ++correct;
  }
  p.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  return p;
}

void write_model(std::ostream& out, const Model& model) {
  out << "parsmo-model 1\n"
      << "kernel " << to_string(model.kernel.kind) << '\n'
      << "gamma " << format_double(model.kernel.gamma) << '\n'
      << "C " << format_double(model.C) << '\n'
      << "bias " << format_double(model.bias) << '\n'
      << "dim " << model.dim << '\n'
      << "sv " << model.support.size() << '\n';
  for (const auto& sv : model.support) {
    out << format_double(sv.alpha) << ' ' << (sv.y > 0 ? "+1" : "-1");
    for (const auto& f : sv.features.features)
      out << ' ' << (f.index + 1) << ':' << format_double(f.value);
    out << '\n';
  }
}

void write_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_model(out, model);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

template <typename T>
T expect_field(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("model: missing " + key);
  std::istringstream ls(line);
  std::string name;
  T value{};
  if (!(ls >> name >> value) || name != key)
    throw std::runtime_error("model: expected '" + key + "', got '" + line + "'");
  return value;
}

}  // namespace

Model read_model(std::istream& in) {
  std::string magic;
  std::getline(in, magic);
  if (magic != "parsmo-model 1") throw std::runtime_error("not a parsmo model file");

  Model model;
  model.kernel.kind = parse_kernel_kind(expect_field<std::string>(in, "kernel"));
  model.kernel.gamma = expect_field<double>(in, "gamma");
  model.kernel.validate();
  model.C = expect_field<double>(in, "C");
  model.bias = expect_field<double>(in, "bias");
  model.dim = expect_field<std::size_t>(in, "dim");
  const auto count = expect_field<std::size_t>(in, "sv");
  if (!std::isfinite(model.bias)) throw std::runtime_error("model: bias not finite");

  std::vector<double> alphas;
  std::ostringstream rest;
  std::string line;
  for (std::size_t s = 0; s < count; ++s) {
    if (!std::getline(in, line)) throw std::runtime_error("model: truncated");
    auto space = line.find(' ');
    double a = 0.0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + std::min(space, line.size()), a);
    if (ec != std::errc() || space == std::string::npos)
      throw std::runtime_error("model: bad support vector line " + std::to_string(s + 1));
    if (!(a > 0.0 && a <= model.C))
      throw std::runtime_error("model: alpha outside (0, C]");
    alphas.push_back(a);
    rest << line.substr(space + 1) << '\n';
  }
  if (count > 0) {
    std::istringstream sv_stream(rest.str());
    auto sv_data = parse_libsvm(sv_stream);
    for (std::size_t s = 0; s < count; ++s)
      model.support.push_back({alphas[s], sv_data.label(s), sv_data.sample(s)});
  }
  return model;
}

Model read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_model(in);
}

}  // namespace parsmo
