#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fdrt/gauss.hpp"
#include "oracle_support.hpp"

using namespace fdrt;

TEST_CASE("density values") {
  CHECK(phi(0.0) == doctest::Approx(0.398942280401433).epsilon(1e-12));
  CHECK(phi(3.0) == doctest::Approx(0.00443184841193801).epsilon(1e-12));
  CHECK(phi(-3.0) == phi(3.0));
  CHECK(phi(40.0) == 0.0);  // e^{-800} is below the double range
}

TEST_CASE("upper tail frozen values") {
  CHECK(upper_tail(0.0) == 0.5);
  CHECK(upper_tail(1.959964) == doctest::Approx(0.0249999990964424).epsilon(1e-12));
  CHECK(upper_tail(4.0) == doctest::Approx(3.16712418331199e-5).epsilon(1e-12));
}

TEST_CASE("upper tail tracks the erfc reference across [-8, 8]") {
  for (double x = -8.0; x <= 8.0 + 1e-9; x += 0.125) {
    const double ref = static_cast<double>(reference::upper_tail_ld(x));
    CHECK(upper_tail(x) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("asymptotic branch matches the erfc reference out to x = 26") {
  // long double erfc is usable to about x = 26 before its own underflow.
  for (double x = 8.0; x <= 26.0; x += 0.25) {
    const double ref = static_cast<double>(reference::upper_tail_ld(x));
    CHECK(upper_tail(x) == doctest::Approx(ref).epsilon(5e-13));
  }
}

TEST_CASE("deep tail survives x near 40") {
  const double v = upper_tail(37.0);
  CHECK(v > 0.0);
  CHECK(v < 1e-295);
  const double w = upper_tail(40.0);
  CHECK(std::isfinite(w));
  CHECK(w >= 0.0);
  CHECK(w <= 1e-300);
}

TEST_CASE("norm_cdf complements upper_tail") {
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    CHECK(norm_cdf(x) + upper_tail(x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("quantile frozen values") {
  CHECK(quantile(0.5) == 0.0);
  CHECK(quantile(0.025) == doctest::Approx(1.95996398454005).epsilon(1e-10));
  CHECK(quantile(3e-5) == doctest::Approx(4.01281081111825).epsilon(1e-10));
  // paper rounds this induced threshold to 4.02
  CHECK(std::fabs(quantile(3e-5) - 4.0125) < 0.01);
  CHECK(quantile(2.5e-6) == doctest::Approx(4.56478773028088).epsilon(1e-10));
  CHECK(quantile(1e-300) == doctest::Approx(37.0470962993612).epsilon(1e-10));
  CHECK(quantile(0.3) == doctest::Approx(0.524400512708041).epsilon(1e-10));
  CHECK(quantile(0.7) == doctest::Approx(-0.524400512708041).epsilon(1e-10));
}

TEST_CASE("quantile domain errors") {
  CHECK_THROWS_AS(quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(quantile(-0.2), std::domain_error);
  CHECK_THROWS_AS(quantile(1.7), std::domain_error);
}

TEST_CASE("quantile round trip over the full double range") {
  for (double eta : reference::log_grid(1e-300, 0.5, 240)) {
    const double z = quantile(eta);
    CHECK(upper_tail(z) == doctest::Approx(eta).epsilon(1e-10));
  }
  // near 1 the quantile goes through the reflection branch
  for (double eta : {0.9, 0.99, 0.9999, 1.0 - 1e-12, 1.0 - 1e-16}) {
    const double z = quantile(eta);
    CHECK(upper_tail(z) == doctest::Approx(eta).epsilon(1e-10));
  }
}

TEST_CASE("quantile is strictly decreasing") {
  double prev = quantile(1e-12);
  for (double eta : reference::log_grid(1e-11, 0.999, 60)) {
    const double z = quantile(eta);
    CHECK(z < prev);
    prev = z;
  }
}

TEST_CASE("mills ratio values and shape") {
  CHECK(mills_ratio(1.0) == doctest::Approx(0.655679542418798).epsilon(1e-9));
  CHECK(std::fabs(mills_ratio(1.0) - 0.655) < 1e-3);
  CHECK(mills_ratio(0.01) == doctest::Approx(0.0124337647124903).epsilon(1e-9));
  CHECK(std::fabs(mills_ratio(0.01) - 0.0126) < 2e-4);
  const double m6 = mills_ratio(6.0);
  CHECK(m6 > 0.97);
  CHECK(m6 < 1.0);

  double prev = 0.0;
  for (double y : reference::log_grid(1e-3, 40.0, 120)) {
    const double m = mills_ratio(y);
    CHECK(m > prev);
    CHECK(m < 1.0);
    prev = m;
  }
  CHECK_THROWS_AS(mills_ratio(0.0), std::domain_error);
  CHECK_THROWS_AS(mills_ratio(-1.0), std::domain_error);
}

TEST_CASE("quantile diagnostics at eta = 0.01") {
  const auto d = quantile_diagnostics(0.01);
  CHECK(d.z == doctest::Approx(2.32634787404084).epsilon(1e-10));
  CHECK(d.r1 == doctest::Approx(0.708506384729).epsilon(1e-8));
  CHECK(d.r2 == doctest::Approx(2.271266315).epsilon(1e-8));
  CHECK_THROWS_AS(quantile_diagnostics(0.02), std::domain_error);
  CHECK_THROWS_AS(quantile_diagnostics(0.0), std::domain_error);
  CHECK_THROWS_AS(quantile_diagnostics(-0.5), std::domain_error);
}

TEST_CASE("expansion brackets hold across the deep tail") {
  for (double eta : reference::log_grid(1e-300, 0.01, 200)) {
    const auto d = quantile_diagnostics(std::min(eta, 0.01));
    CHECK(d.r1 >= 0.0);
    CHECK(d.r1 <= 1.5);
    CHECK(d.r2 >= 1.8);
    CHECK(d.r2 <= 3.0);
  }
}

TEST_CASE("tail sandwich on [1, 40]") {
  // phi(v)/(2v) <= upper_tail(v) <= phi(v)/v; past v ~ 38.6 all three
  // quantities underflow to zero together and the bound degenerates.
  for (double v = 1.0; v <= 40.0 + 1e-9; v += 0.25) {
    const double p = phi(v), u = upper_tail(v);
    CHECK(u >= p / (2.0 * v));
    CHECK(u <= p / v * (1.0 + 1e-13));
  }
}

TEST_CASE("global tail bound on [0, 40]") {
  for (double v = 0.0; v <= 40.0 + 1e-9; v += 0.25) {
    CHECK(2.0 * upper_tail(v) <= std::exp(-0.5 * v * v) * (1.0 + 1e-13));
  }
}

TEST_CASE("increment bound") {
  // upper_tail(v - c/v) <= 4 e^c upper_tail(v) for v >= sqrt(2c)
  for (double c : {0.5, 1.0, 2.0}) {
    for (double v = std::sqrt(2.0 * c); v <= 30.0; v += 0.5) {
      CHECK(upper_tail(v - c / v) <= 4.0 * std::exp(c) * upper_tail(v) * (1.0 + 1e-12));
    }
  }
}
