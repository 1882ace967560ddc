#include <cmath>

#include "doctest.h"
#include "prooftutor/errors.hpp"
#include "prooftutor/stats.hpp"

using namespace prooftutor;

TEST_CASE("interval contains the point estimate") {
  for (int n : {1, 7, 150, 900})
    for (int k = 0; k <= n; k += std::max(1, n / 13)) {
      auto p = jeffreys_interval(k, n);
      CHECK(p.lower <= p.point);
      CHECK(p.point <= p.upper);
      CHECK(p.lower >= 0.0);
      CHECK(p.upper <= 1.0);
    }
}

TEST_CASE("boundary pinning") {
  CHECK(jeffreys_interval(0, 10).lower == 0.0);
  CHECK(jeffreys_interval(10, 10).upper == 1.0);
  CHECK(jeffreys_interval(0, 10).upper > 0.0);
}

TEST_CASE("symmetry") {
  auto a = jeffreys_interval(3, 20);
  auto b = jeffreys_interval(17, 20);
  CHECK(a.lower == doctest::Approx(1.0 - b.upper).epsilon(1e-12));
  CHECK(a.upper == doctest::Approx(1.0 - b.lower).epsilon(1e-12));
}

TEST_CASE("higher confidence widens the interval") {
  auto narrow = jeffreys_interval(40, 100, 0.8);
  auto wide = jeffreys_interval(40, 100, 0.99);
  CHECK(wide.lower < narrow.lower);
  CHECK(wide.upper > narrow.upper);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(jeffreys_interval(1, 0), Error);
  CHECK_THROWS_AS(jeffreys_interval(-1, 5), Error);
  CHECK_THROWS_AS(jeffreys_interval(6, 5), Error);
  CHECK_THROWS_AS(jeffreys_interval(1, 5, 1.0), Error);
  CHECK_THROWS_AS(jeffreys_interval(1, 5, 0.0), Error);
}

TEST_CASE("formatting") {
  auto s = format_proportion(jeffreys_interval(296, 900));
  CHECK(s.starts_with("296 / 900 = 32.89% ["));
  CHECK(format_proportion(jeffreys_interval(0, 4)).find("[0.00, ") != std::string::npos);
}
