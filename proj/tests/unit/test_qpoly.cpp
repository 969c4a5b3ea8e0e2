#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cpdshift/errors.hpp"
#include "cpdshift/qpoly.hpp"
#include "test_helpers.hpp"

using namespace cpdshift;
using cpdshift::testing::close_rel;

namespace {

// Independent route: plain term-by-term accumulation of the defining sum.
double q_bruteforce(std::size_t n, double x) {
  if (n < 2) return 0.0;
  double sum = 0.0;
  double xj = 1.0;
  for (std::size_t j = 0; j + 2 <= n; ++j) {
    sum += static_cast<double>(n - j - 1) * xj;
    xj *= x;
  }
  return sum;
}

}  // namespace

TEST_CASE("q_eval base cases and pinned values") {
  CHECK(q_eval(0, 3.7) == 0.0);
  CHECK(q_eval(1, -12.0) == 0.0);
  CHECK(q_eval(2, 5.7) == 1.0);
  // brute-force: 2*1 + 1*2 = 4
  CHECK(q_bruteforce(3, 2.0) == 4.0);
  CHECK(q_eval(3, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  // x = 1 goes through the summation branch exactly: 1 + 2 + 3
  CHECK(q_bruteforce(4, 1.0) == 6.0);
  CHECK(q_eval(4, 1.0) == 6.0);
}

TEST_CASE("q_eval agrees with the brute-force sum everywhere") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> ns(0, 64);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = ns(rng);
    const double x = xs(rng);
    CHECK(close_rel(q_eval(n, x), q_bruteforce(n, x), 1e-9));
  }
}

TEST_CASE("closed form and summation agree away from 1") {
  std::mt19937 rng(999);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> ns(2, 64);
  int checked = 0;
  while (checked < 2000) {
    const double x = xs(rng);
    if (std::abs(x - 1.0) <= kQnSwitchThreshold) continue;
    const std::size_t n = ns(rng);
    CHECK(close_rel(q_eval(n, x), q_eval_summation(n, x), 1e-9));
    ++checked;
  }
}

TEST_CASE("recurrence Q_{n+1}(x) = x Q_n(x) + n") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> ns(0, 63);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = ns(rng);
    const double x = xs(rng);
    CHECK(close_rel(q_eval(n + 1, x), x * q_eval(n, x) + static_cast<double>(n), 1e-9));
  }
  // Summation mode: exact at x = 1.
  for (std::size_t n = 0; n < 64; ++n) {
    CHECK(q_eval_summation(n + 1, 1.0) == 1.0 * q_eval_summation(n, 1.0) + static_cast<double>(n));
  }
}

TEST_CASE("bounds and monotonicity on [0, 1]") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> xs(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> ns(1, 64);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = ns(rng);
    const double x = xs(rng);
    const double nn = static_cast<double>(n);
    CHECK(q_eval(n, x) / (nn * nn) <= 1.0 + 1e-12);
    CHECK(q_eval(n, x) / nn <= q_eval(n + 1, x) / (nn + 1.0) + 1e-12);
  }
}

TEST_CASE("forward_diff examples") {
  const std::vector<double> a{1, 3, 7, 13};
  CHECK(forward_diff(a, 1) == std::vector<double>{2, 4, 6});
  const std::vector<double> ones{1, 1, 1, 1};
  CHECK(forward_diff(ones, 2) == std::vector<double>{0, 0});
  CHECK_THROWS_AS((void)forward_diff(std::vector<double>{1.0, 2.0}, 2), DomainError);
}

TEST_CASE("difference identities for Q samples") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = xs(rng);
    std::vector<double> samples(40);
    for (std::size_t n = 0; n < samples.size(); ++n) samples[n] = q_eval(n, x);

    const std::vector<double> d1 = forward_diff(samples, 1);
    CHECK(d1[0] == 0.0);
    for (std::size_t n = 1; n < d1.size(); ++n) {
      double geo = 0.0, xj = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        geo += xj;
        xj *= x;
      }
      CHECK(close_rel(d1[n], geo, 1e-9));
    }

    const std::vector<double> d2 = forward_diff(samples, 2);
    for (std::size_t n = 0; n < d2.size(); ++n) {
      CHECK(close_rel(d2[n], std::pow(x, static_cast<double>(n)), 1e-9));
    }
    // pinned instance: samples at x = 2, second difference = 1, 2, 4, 8
    if (trial == 0) {
      std::vector<double> q2(6);
      for (std::size_t n = 0; n < q2.size(); ++n) q2[n] = q_eval(n, 2.0);
      const std::vector<double> dd = forward_diff(q2, 2);
      CHECK(dd == std::vector<double>{1, 2, 4, 8});
    }
  }
}

TEST_CASE("iterated single differences equal one double difference") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> vals(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> seq(16);
    for (double& v : seq) v = vals(rng);
    CHECK(forward_diff(forward_diff(seq, 1), 1) == forward_diff(seq, 2));
  }
}
