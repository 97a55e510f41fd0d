#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "radet/window.hpp"

using namespace radet;

namespace {

RangeProfile ramp_profile(int n) {
  RangeProfile p;
  p.magnitudes = Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  p.bin_width_m = 0.1;
  return p;
}

}  // namespace

TEST_CASE("interior window picks the right cells") {
  const auto p = ramp_profile(8);
  WindowConfig cfg{4, 2, Boundary::Skip};
  const auto w = extract_window(p, 4, cfg);
  REQUIRE(w.has_value());
  CHECK(w->cut == 4.0);
  CHECK(w->cut_index == 4);
  REQUIRE(w->train_left.size() == 2);
  CHECK(w->train_left[0] == 1.0);
  CHECK(w->train_left[1] == 2.0);
  REQUIRE(w->train_right.size() == 2);
  CHECK(w->train_right[0] == 6.0);
  CHECK(w->train_right[1] == 7.0);
}

TEST_CASE("skip boundary marks edge cells not evaluable") {
  const auto p = ramp_profile(8);
  WindowConfig cfg{4, 2, Boundary::Skip};
  CHECK_FALSE(extract_window(p, 0, cfg).has_value());
  CHECK_FALSE(extract_window(p, 2, cfg).has_value());
  CHECK(extract_window(p, 3, cfg).has_value());
  CHECK(extract_window(p, 4, cfg).has_value());
  CHECK_FALSE(extract_window(p, 5, cfg).has_value());
  CHECK_FALSE(extract_window(p, 7, cfg).has_value());
}

TEST_CASE("shrink boundary truncates but keeps the cell evaluable") {
  const auto p = ramp_profile(8);
  WindowConfig cfg{4, 2, Boundary::Shrink};
  const auto w = extract_window(p, 1, cfg);
  REQUIRE(w.has_value());
  CHECK(w->train_left.size() == 0);
  REQUIRE(w->train_right.size() == 2);
  CHECK(w->train_right[0] == 3.0);
  CHECK(w->train_right[1] == 4.0);
}

TEST_CASE("shrink boundary still requires half the training support") {
  const auto p = ramp_profile(3);
  WindowConfig cfg{8, 0, Boundary::Shrink};
  // At most 2 cells survive anywhere in a 3-bin profile; the floor is 4.
  for (int c = 0; c < 3; ++c) CHECK_FALSE(extract_window(p, c, cfg).has_value());
}

TEST_CASE("skip-evaluable cells match the closed-form index range") {
  const auto p = ramp_profile(256);
  WindowConfig cfg{20, 10, Boundary::Skip};
  const auto [lo, hi] = evaluable_range(p.size(), cfg);
  CHECK(lo == 15);
  CHECK(hi == 241);
  for (int c = 0; c < p.size(); ++c) {
    const bool evaluable = window_view(p, c, cfg).has_value();
    CHECK(evaluable == (c >= lo && c < hi));
    if (evaluable) {
      const auto w = window_view(p, c, cfg);
      CHECK(w->n_train() == 20);
    }
  }
}

TEST_CASE("usage errors throw") {
  const auto p = ramp_profile(8);
  WindowConfig cfg{4, 2, Boundary::Skip};
  CHECK_THROWS_AS((void)extract_window(p, -1, cfg), std::invalid_argument);
  CHECK_THROWS_AS((void)extract_window(p, 8, cfg), std::invalid_argument);
  CHECK_THROWS_AS((void)extract_window(p, 3, WindowConfig{3, 2, Boundary::Skip}), std::invalid_argument);
  CHECK_THROWS_AS((void)extract_window(p, 3, WindowConfig{4, 1, Boundary::Skip}), std::invalid_argument);
  CHECK_THROWS_AS((void)extract_window(p, 3, WindowConfig{0, 0, Boundary::Skip}), std::invalid_argument);
}

TEST_CASE("normalisation divides by the joint maximum") {
  Window w;
  w.cut = 2.0;
  w.train_left = Eigen::ArrayXd::Zero(2);
  w.train_left << 1.0, 8.0;
  w.train_right = Eigen::ArrayXd::Zero(2);
  w.train_right << 4.0, 2.0;
  const auto n = normalize_window(w);
  CHECK_FALSE(n.degenerate);
  CHECK(n.cut_norm == 0.25);
  REQUIRE(n.train_norm.size() == 4);
  CHECK(n.train_norm[0] == 1.0 / 8.0);
  CHECK(n.train_norm[1] == 1.0);
  CHECK(n.train_norm[2] == 0.5);
  CHECK(n.train_norm[3] == 0.25);
}

TEST_CASE("the cell under test can be the maximum") {
  Window w;
  w.cut = 10.0;
  w.train_left = Eigen::ArrayXd::Constant(3, 2.0);
  w.train_right = Eigen::ArrayXd::Constant(3, 5.0);
  const auto n = normalize_window(w);
  CHECK(n.cut_norm == 1.0);
  CHECK(n.train_norm.maxCoeff() == 0.5);
}

TEST_CASE("all-zero window is degenerate") {
  Window w;
  w.cut = 0.0;
  w.train_left = Eigen::ArrayXd::Zero(4);
  w.train_right = Eigen::ArrayXd::Zero(4);
  const auto n = normalize_window(w);
  CHECK(n.degenerate);
  CHECK(n.cut_norm == 0.0);
  CHECK((n.train_norm == 0.0).all());
}

TEST_CASE("normalisation is scale invariant to within two ulp per element") {
  std::mt19937_64 rng(7);
  std::lognormal_distribution<double> amp(0.0, 1.5);
  // Scaling numerator and denominator rounds three times (two products, one
  // quotient), so the results may sit up to two representable steps apart.
  auto close_ulp = [](double a, double b) {
    return a == b || std::nextafter(a, b) == b ||
           std::nextafter(std::nextafter(a, b), b) == b;
  };
  for (int trial = 0; trial < 500; ++trial) {
    Window w;
    w.cut = amp(rng);
    w.train_left = Eigen::ArrayXd::NullaryExpr(8, [&](Eigen::Index) { return amp(rng); });
    w.train_right = Eigen::ArrayXd::NullaryExpr(8, [&](Eigen::Index) { return amp(rng); });
    const auto base = normalize_window(w);
    for (const double c : {1e-3, 1e3}) {
      Window ws;
      ws.cut = c * w.cut;
      ws.train_left = c * w.train_left;
      ws.train_right = c * w.train_right;
      const auto scaled = normalize_window(ws);
      REQUIRE(close_ulp(scaled.cut_norm, base.cut_norm));
      for (Eigen::Index i = 0; i < base.train_norm.size(); ++i)
        REQUIRE(close_ulp(scaled.train_norm[i], base.train_norm[i]));
    }
  }
}
