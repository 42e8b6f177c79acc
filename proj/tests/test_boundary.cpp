#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fdrt/boundary.hpp"
#include "fdrt/gauss.hpp"
#include "oracle_support.hpp"

using namespace fdrt;

TEST_CASE("threshold frozen values") {
  FdrBoundary small(3, 0.2);
  CHECK(small.threshold(1) == doctest::Approx(1.83391463581591).epsilon(1e-10));
  CHECK(small.threshold(2) == doctest::Approx(1.50108594604402).epsilon(1e-10));
  CHECK(small.threshold(3) == doctest::Approx(1.2815515655446).epsilon(1e-10));

  FdrBoundary fig(10000, 0.05);
  CHECK(fig.threshold(12) == doctest::Approx(4.01281081111825).epsilon(1e-10));
  CHECK(std::fabs(fig.threshold(12) - 4.0125) < 0.01);
  CHECK(fig.threshold(84) == doctest::Approx(3.52718701065002).epsilon(1e-10));
  CHECK(std::fabs(fig.threshold(84) - 3.527) < 0.02);
}

TEST_CASE("noise scale multiplies the whole sequence") {
  FdrBoundary unit(10000, 0.05);
  FdrBoundary scaled(10000, 0.05, 2.5);
  for (std::size_t k : {std::size_t{1}, std::size_t{12}, std::size_t{5000}}) {
    CHECK(scaled.threshold(k) == doctest::Approx(2.5 * unit.threshold(k)).epsilon(1e-14));
  }
}

TEST_CASE("real-rank threshold agrees with the memoized grid") {
  FdrBoundary b(1000, 0.3);
  for (std::size_t k : {std::size_t{1}, std::size_t{7}, std::size_t{999}}) {
    CHECK(b.threshold_at(static_cast<double>(k)) ==
          doctest::Approx(b.threshold(k)).epsilon(1e-12));
  }
  CHECK(b.threshold_at(0.5) > b.threshold(1));
  CHECK(b.threshold_at(7.5) < b.threshold(7));
  CHECK(b.threshold_at(7.5) > b.threshold(8));
}

TEST_CASE("threshold sequence is strictly decreasing") {
  FdrBoundary b(10000, 0.25);
  for (std::size_t k = 2; k <= 10000; ++k) {
    CHECK(b.threshold(k) < b.threshold(k - 1));
  }
}

TEST_CASE("null calibration identity") {
  // 2 n upper_tail(t_k / sigma) = q k, exactly the defining property.
  for (double sigma : {1.0, 2.0}) {
    FdrBoundary b(512, 0.4, sigma);
    for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{256}, std::size_t{512}}) {
      const double lhs = 2.0 * 512 * upper_tail(b.threshold(k) / sigma);
      CHECK(lhs == doctest::Approx(0.4 * static_cast<double>(k)).epsilon(1e-10));
    }
  }
}

TEST_CASE("derivative closed form and finite differences") {
  FdrBoundary small(3, 0.2);
  CHECK(small.threshold_derivative(3.0) ==
        doctest::Approx(-0.189935328537233).epsilon(1e-9));

  FdrBoundary b(10000, 0.25);
  for (double k : {1.0, 3.0, 17.0, 200.0, 4000.0, 9000.0}) {
    const double fd = reference::diff5([&](double x) { return b.threshold_at(x); },
                                       k, 1e-3 * std::max(1.0, k * 1e-2));
    CHECK(b.threshold_derivative(k) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(b.threshold_derivative(k) < 0.0);
  }
}

TEST_CASE("penalty sums") {
  FdrBoundary small(3, 0.2);
  CHECK(small.penalty_sum(0, 2.0) == 0.0);
  CHECK(small.penalty_sum(2, 2.0) == doctest::Approx(5.6165019088707).epsilon(1e-9));
  CHECK(std::fabs(small.penalty_sum(2, 2.0) - 5.6170) < 1e-3);
  CHECK(small.penalty_sum(3, 2.0) == doctest::Approx(7.25887632402052).epsilon(1e-9));
  CHECK(small.penalty_sum(3, 1.0) == doctest::Approx(4.61655214740453).epsilon(1e-9));
}

TEST_CASE("penalty sum approaches k t_k^2 at slowly varying rate") {
  FdrBoundary b(1000000, 0.1);
  const double s = b.penalty_sum(1000, 2.0);
  CHECK(s == doctest::Approx(17026.3400721814).epsilon(1e-9));
  const double tk = b.threshold(1000);
  const double ratio = s / (1000.0 * tk * tk);
  CHECK(ratio == doctest::Approx(1.12483792326446).epsilon(1e-6));
  // the correction-term bound: |ratio - 1| <= r/t_k^2 + t_1^2/(k t_k^2)
  const double t1 = b.threshold(1);
  CHECK(std::fabs(ratio - 1.0) <= 2.0 / (tk * tk) + t1 * t1 / (1000.0 * tk * tk));
}

TEST_CASE("k t_k^r grows once t_k^2 > 2") {
  FdrBoundary b(100000, 0.2);
  for (double r : {1.0, 1.5, 2.0}) {
    for (std::size_t k = 1; k < 3000; k += 7) {
      const double t0 = b.threshold(k), t1 = b.threshold(k + 1);
      if (t1 * t1 > 2.0) {
        CHECK(static_cast<double>(k + 1) * std::pow(t1, r) >
              static_cast<double>(k) * std::pow(t0, r));
      }
    }
  }
}

TEST_CASE("per-coordinate penalty factor") {
  FdrBoundary b(1024, 0.5);
  CHECK(b.lambda_kn(1) == doctest::Approx(6.07994751646585).epsilon(1e-9));

  FdrBoundary big(1000000, 0.25);
  const double lam = big.lambda_kn(100);
  CHECK(lam == doctest::Approx(9.80642302998643).epsilon(1e-9));
  const double approx_form = std::log(1000000.0 / 100.0) -
                             0.5 * std::log(std::log(1000000.0 / 100.0));
  CHECK(std::fabs(lam - approx_form) <= 2.0);
}

TEST_CASE("harmonic penalty variants") {
  CHECK(foster_george_penalty(8, 2) == doctest::Approx(6.93147180559945).epsilon(1e-12));
  CHECK(foster_george_penalty(1024, 1) == doctest::Approx(13.8629436111989).epsilon(1e-12));
  CHECK(foster_george_penalty(16, 0) == 0.0);
  CHECK(two_k_log_nk_penalty(1024, 0) == 0.0);
  CHECK(two_k_log_nk_penalty(1024, 32) == doctest::Approx(221.807097779182).epsilon(1e-12));
  CHECK(std::fabs(two_k_log_nk_penalty(1024, 32) - 221.81) < 5e-3);

  // relative gap to the harmonic form at k=100, n=1e6 is ~10.5 percent
  const double fg = foster_george_penalty(1000000, 100);
  const double tk = two_k_log_nk_penalty(1000000, 100);
  CHECK(std::fabs(tk - fg) / tk == doctest::Approx(0.10507499).epsilon(1e-6));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(FdrBoundary(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(FdrBoundary(10, 0.0), std::domain_error);
  CHECK_THROWS_AS(FdrBoundary(10, 1.0), std::domain_error);
  CHECK_THROWS_AS(FdrBoundary(10, 0.5, 0.0), std::domain_error);
  FdrBoundary b(10, 0.5);
  CHECK_THROWS_AS(b.threshold(0), std::domain_error);
  CHECK_THROWS_AS(b.threshold(11), std::domain_error);
  CHECK_THROWS_AS(b.threshold_at(0.0), std::domain_error);
  CHECK_THROWS_AS(b.threshold_at(10.5), std::domain_error);
  CHECK_THROWS_AS(b.penalty_sum(11, 2.0), std::domain_error);
  CHECK_THROWS_AS(b.penalty_sum(5, 0.0), std::domain_error);
  CHECK_THROWS_AS(b.penalty_sum(5, 2.5), std::domain_error);
  CHECK_THROWS_AS(b.lambda_kn(0), std::domain_error);
  CHECK_THROWS_AS(foster_george_penalty(0, 0), std::domain_error);
  CHECK_THROWS_AS(two_k_log_nk_penalty(8, 9), std::domain_error);
}
