#include <cmath>
#include <thread>

#include "doctest.h"
#include "geodyn/metric.hpp"
#include "oracles.hpp"

using namespace geodyn;

namespace {

const std::vector<std::string>& all_catalog_names() {
  static const std::vector<std::string> names = {
      "euclidean",          "polar2",    "sphere", "sphere-stereographic",
      "poincare-half-plane", "torus",    "minkowski", "schwarzschild",
      "sphere-cross-line"};
  return names;
}

}  // namespace

TEST_CASE("euclidean metric is the identity everywhere") {
  MetricSpec spec = builtin("euclidean", {{"n", 3}});
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    Vec x = sample_point(spec, rng);
    Mat g = metric_at(spec, x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(g(i, j) == (i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("polar2 against the flat pullback oracle") {
  MetricSpec spec = builtin("polar2");
  Mat g = metric_at(spec, {2.0, 0.7});
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(4.0));
  CHECK(g(0, 1) == 0.0);

  auto embed = [](const Vec& x) {
    return std::vector<double>{x[0] * std::cos(x[1]), x[0] * std::sin(x[1])};
  };
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Vec x = sample_point(spec, rng);
    Mat got = metric_at(spec, x);
    Mat oracle = oracles::pullback_flat(embed, x, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::fabs(got(i, j) - oracle(i, j)) <= 1e-8);
  }
}

TEST_CASE("sphere chart against the embedding pullback oracle") {
  MetricSpec spec = builtin("sphere", {{"r", 1.0}});
  Mat g = metric_at(spec, {1.5707963267948966, 0.3});
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-12));

  auto embed = [](const Vec& x) {
    return std::vector<double>{std::sin(x[0]) * std::cos(x[1]),
                               std::sin(x[0]) * std::sin(x[1]), std::cos(x[0])};
  };
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Vec x = sample_point(spec, rng);
    Mat got = metric_at(spec, x);
    Mat oracle = oracles::pullback_flat(embed, x, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::fabs(got(i, j) - oracle(i, j)) <= 1e-8);
  }
}

TEST_CASE("poincare half-plane values and domain guard") {
  MetricSpec spec = builtin("poincare-half-plane");
  Mat g = metric_at(spec, {0.0, 2.0});
  CHECK(g(0, 0) == doctest::Approx(0.25));
  CHECK(g(1, 1) == doctest::Approx(0.25));
  CHECK_THROWS_AS(metric_at(spec, {0.0, -1.0}), OutOfDomain);

  MetricSpec polar = builtin("polar2");
  CHECK_THROWS_AS(metric_at(polar, {0.0, 1.0}), OutOfDomain);
  try {
    metric_at(polar, {0.0, 1.0});
  } catch (const OutOfDomain& e) {
    CHECK(e.guard == "r");
  }
}

TEST_CASE("unknown metrics and bad parameters are rejected") {
  CHECK_THROWS_AS(builtin("nope"), UnknownMetric);
  CHECK_THROWS_AS(builtin("sphere", {{"r", -1.0}}), BadParam);
  CHECK_THROWS_AS(builtin("torus", {{"R", 1.0}, {"a", 2.0}}), BadParam);
  CHECK_THROWS_AS(builtin("euclidean", {{"n", 2.5}}), BadParam);
}

TEST_CASE("inverse_metric basics") {
  Mat g(2);
  g(0, 0) = 1.0;
  g(1, 1) = 4.0;
  Mat inv = inverse_metric(g);
  CHECK(inv(0, 0) == doctest::Approx(1.0));
  CHECK(inv(1, 1) == doctest::Approx(0.25));

  Mat mink(4);
  mink(0, 0) = -1.0;
  for (int i = 1; i < 4; ++i) mink(i, i) = 1.0;
  Mat minv = inverse_metric(mink);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(minv(i, j) == doctest::Approx(mink(i, j)));

  Mat zero(3);
  CHECK_THROWS_AS(inverse_metric(zero), DegenerateMetric);
}

TEST_CASE("metric jets: exact values and finite-difference agreement") {
  MetricSpec polar = builtin("polar2");
  MetricJet jet = metric_jet(polar, {2.0, 0.5});
  CHECK(jet.dg(0, 1, 1) == doctest::Approx(4.0));  // d_r g_theta_theta = 2r

  MetricSpec sphere = builtin("sphere", {{"r", 1.0}});
  jet = metric_jet(sphere, {0.7853981633974483, 0.2});
  CHECK(jet.dg(0, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));  // 2 sin cos at pi/4

  MetricSpec eu = builtin("euclidean", {{"n", 2}});
  jet = metric_jet(eu, {0.3, -0.4});
  CHECK(max_abs(jet.dg) == 0.0);
  CHECK(max_abs(jet.d2g) == 0.0);
}

TEST_CASE("catalog property: symmetry, inverse, jet vs finite differences") {
  for (const std::string& name : all_catalog_names()) {
    CAPTURE(name);
    MetricSpec spec = builtin(name);
    Rng rng(42);
    double worst_sym = 0.0, worst_inv = 0.0, worst_fd = 0.0, worst_pair = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Vec x = sample_point(spec, rng, 1e-3);
      MetricJet jet = metric_jet(spec, x);
      const int n = spec.dim;

      Mat ginv = inverse_metric(jet.g);
      Mat prod = mat_mul(jet.g, ginv);
      Tensor3 fd = oracles::fd_metric_derivative(spec, x);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          worst_sym = std::max(worst_sym, std::fabs(jet.g(i, j) - jet.g(j, i)));
          worst_inv = std::max(worst_inv, std::fabs(prod(i, j) - (i == j ? 1.0 : 0.0)));
        }
      // dg vs central differences, plus the pair/derivative symmetries that
      // hold exactly by construction.
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            worst_fd = std::max(worst_fd, std::fabs(jet.dg(k, i, j) - fd(k, i, j)));
            worst_pair = std::max(worst_pair, std::fabs(jet.dg(k, i, j) - jet.dg(k, j, i)));
            for (int l = 0; l < n; ++l)
              worst_pair = std::max(worst_pair,
                                    std::fabs(jet.d2g(k, l, i, j) - jet.d2g(l, k, i, j)));
          }
    }
    CHECK(worst_sym == 0.0);
    CHECK(worst_inv <= 1e-12);
    CHECK(worst_fd <= 1e-7);
    CHECK(worst_pair == 0.0);
  }
}

TEST_CASE("custom metric files load and validate") {
  std::string good = R"json({
    "version": 1,
    "name": "scaled-plane",
    "dim": 2,
    "variables": ["u", "w"],
    "components": {"1,1": "exp(2*w)", "2,2": "exp(2*w)"},
    "guards": [],
    "sample_box": [[-1, 1], [-1, 1]]
  })json";
  MetricSpec spec = parse_metric_json(good);
  CHECK(spec.name == "scaled-plane");
  Mat g = metric_at(spec, {0.0, 0.0});
  CHECK(g(0, 0) == doctest::Approx(1.0));

  // Conflicting transposed components: the file is rejected.
  std::string asym = R"({
    "name": "broken", "dim": 2,
    "components": {"1,2": "x1", "2,1": "x2"}
  })";
  CHECK_THROWS_AS(parse_metric_json(asym), SchemaError);

  CHECK_THROWS_AS(parse_metric_json("not json at all"), SchemaError);
  CHECK_THROWS_AS(parse_metric_json(R"({"name":"x"})"), SchemaError);
  CHECK_THROWS_AS(parse_metric_json(R"({"name":"x","dim":2,"components":{"9,9":"1"}})"),
                  SchemaError);
  CHECK_THROWS_AS(load_metric_file("/nonexistent/file.json"), SchemaError);
}

TEST_CASE("shared specs evaluate identically from concurrent threads") {
  MetricSpec spec = builtin("schwarzschild", {{"rs", 1.0}});
  Vec x{0.3, 4.0, 1.1, 2.0};
  MetricJet serial = metric_jet(spec, x);
  std::vector<std::thread> workers;
  std::vector<double> worst(4, 1.0);
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      double local = 0.0;
      for (int rep = 0; rep < 50; ++rep) {
        MetricJet jet = metric_jet(spec, x);
        for (std::size_t i = 0; i < jet.d2g.a.size(); ++i)
          local = std::max(local, std::fabs(jet.d2g.a[i] - serial.d2g.a[i]));
      }
      worst[w] = local;
    });
  for (std::thread& t : workers) t.join();
  for (double w : worst) CHECK(w == 0.0);
}

TEST_CASE("sampling respects guards and margins") {
  MetricSpec spec = builtin("schwarzschild", {{"rs", 1.0}});
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Vec x = sample_point(spec, rng, 1e-3);
    CHECK(spec.in_domain(x));
    CHECK(x[1] > 1.0);
    CHECK(std::sin(x[2]) > 0.0);
  }
}
