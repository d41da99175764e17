#include <cmath>
#include <sstream>

#include "doctest.h"
#include "instances.hpp"
#include "parsmo/metrics.hpp"
#include "parsmo/model.hpp"
#include "parsmo/solver.hpp"

using namespace parsmo;

TEST_CASE("metrics CSV") {
  SUBCASE("no iterations: header only") {
    std::ostringstream out;
    write_metrics(out, std::vector<MetricsRecord>{});
    CHECK(out.str() == std::string(kMetricsHeader) + "\n");
  }
  SUBCASE("initial row and per-process columns") {
    MetricsLog log(4, -2.0, false);
    log.start();
    IterationReport r;
    r.k = 1;
    r.fval = -1.5;
    r.alpha = 1;
    r.columns_total = 7;
    r.hits_total = 3;
    r.descent = true;
    log.record(r);
    const auto& rec = log.records();
    REQUIRE(rec.size() == 2);
    CHECK(rec[0].k == 0);
    CHECK(*rec[0].relative_error == 1.0);
    CHECK(rec[1].cols_per_proc == 1);
    CHECK(*rec[1].relative_error == 0.25);
    std::ostringstream out;
    write_metrics(out, rec);
    CHECK(out.str() == std::string(kMetricsHeader) +
                           "\n0,0,1,0,0,0,0,0,0\n1,-1.5,0.25,7,1,3,0,1,1\n");
  }
  SUBCASE("no reference leaves the column empty; zero reference is absolute") {
    CHECK_FALSE(error_vs_reference(-1.0, std::nullopt));
    CHECK(*error_vs_reference(-0.5, 0.0) == 0.5);
    MetricsLog log(1, std::nullopt, false);
    log.start();
    std::ostringstream out;
    write_metrics(out, log.records());
    CHECK(out.str().find("\n0,0,,0,0,0,0,0,0\n") != std::string::npos);
  }
  SUBCASE("17 significant digits round-trip") {
    for (double v : {0.1, -2.0 / 3.0, 1e-300, 123456789.123456789})
      CHECK(std::stod(format_double(v)) == v);
  }
}

namespace {

Problem separable_toy() {
  std::vector<Sample> s;
  std::vector<int> y;
  for (int r = 0; r < 20; ++r) {
    const double a = 0.1 * (r % 10), b = 0.05 * r;
    const int label = r < 10 ? 1 : -1;
    s.push_back(Sample{{{0, label * (1.0 + a)}, {1, b}}});
    y.push_back(label);
  }
  return Problem(testing::make_dataset(std::move(s), std::move(y)), KernelSpec::linear(), 10.0);
}

}  // namespace

TEST_CASE("model from a trained solver") {
  auto p = testing::random_problem(5, 80, 5, KernelKind::gaussian, 1.0);
  SolverConfig cfg;
  cfg.q = 2;
  cfg.eta = 1e-6;
  auto res = train(p, cfg);
  auto model = build_model(p, res.state, res.final_view);
  CHECK(model.bias == doctest::Approx((res.final_view.m + res.final_view.M) / 2));
  for (const auto& sv : model.support) {
    CHECK(sv.alpha > 0.0);
    CHECK(sv.alpha <= p.C());
  }

  SUBCASE("free support vectors sit on the margin") {
    int free = 0;
    for (std::size_t r = 0; r < p.size(); ++r) {
      const double x = res.state.x[r];
      if (x > 1e-6 && x < p.C() - 1e-6) {
        CHECK(std::abs(decision_value(model, p.data().sample(r)) - p.y(r)) <= 1e-5);
        ++free;
      }
    }
    CHECK(free > 0);
  }
  SUBCASE("round trip keeps predictions") {
    std::stringstream buf;
    write_model(buf, model);
    auto back = read_model(buf);
    CHECK(back.support.size() == model.support.size());
    CHECK(back.bias == model.bias);
    auto a = predict(model, p.data());
    auto b = predict(back, p.data());
    CHECK(a.labels == b.labels);
    for (std::size_t r = 0; r < p.size(); ++r)
      CHECK(decision_value(model, p.data().sample(r)) ==
            decision_value(back, p.data().sample(r)));
  }
}

TEST_CASE("empty support predicts the sign of the bias") {
  Model m;
  m.kernel = KernelSpec::gaussian(1.0);
  m.bias = -0.3;
  m.dim = 2;
  CHECK(predict_label(m, Sample{{{0, 1.0}}}) == -1);
  m.bias = 0.0;
  CHECK(predict_label(m, Sample{{{0, 1.0}}}) == 1);
}

TEST_CASE("separable toy set is fitted") {
  auto p = separable_toy();
  SolverConfig cfg;
  cfg.eta = 1e-6;
  auto res = train(p, cfg);
  auto model = build_model(p, res.state, res.final_view);
  CHECK(predict(model, p.data()).accuracy >= 0.95);
}

TEST_CASE("dimension mismatch") {
  Model m;
  m.kernel = KernelSpec::linear();
  m.dim = 2;
  Dataset wide({Sample{{{4, 1.0}}}}, {1});
  CHECK_THROWS(predict(m, wide));
}

TEST_CASE("malformed model files") {
  std::istringstream a("not-a-model\n");
  CHECK_THROWS(read_model(a));
  std::istringstream b("parsmo-model 1\nkernel linear\ngamma 0\nC 1\nbias 0\ndim 2\nsv 2\n0.5 +1 1:1\n");
  CHECK_THROWS(read_model(b));
}
