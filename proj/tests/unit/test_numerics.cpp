#include "doctest.h"

#include <cmath>
#include <vector>

#include "jointboost/numerics.hpp"
#include "jointboost/types.hpp"

using namespace jointboost;

TEST_SUITE("numerics") {

TEST_CASE("derived seeds are deterministic and separate streams") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("identical seeds give identical draw streams") {
  Rng a(99), b(99);
  for (int k = 0; k < 100; ++k) CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
  Rng rng(7);
  for (int k = 0; k < 10000; ++k) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_int covers the inclusive range") {
  Rng rng(11);
  std::vector<int> seen(5, 0);
  for (int k = 0; k < 5000; ++k) {
    const int v = rng.uniform_int(2, 6);
    REQUIRE(v >= 2);
    REQUIRE(v <= 6);
    seen[v - 2]++;
  }
  for (int c : seen) CHECK(c > 0);
}

TEST_CASE("normal draws have the requested moments approximately") {
  Rng rng(13);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double z = rng.normal(1.5, 2.0);
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(mean == doctest::Approx(1.5).epsilon(0.02));
  CHECK(std::sqrt(var) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("brent finds the quadratic maximum") {
  auto r = maximize_scalar([](double x) { return -(x - 0.3) * (x - 0.3); }, -10.0, 10.0, 1e-10);
  CHECK(r.x == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(r.fx == doctest::Approx(0.0));
  CHECK(r.evaluations < 200);
}

TEST_CASE("brent finds a non-quadratic interior maximum") {
  // f(x) = 2x - e^x peaks at x = log 2.
  auto r = maximize_scalar([](double x) { return 2.0 * x - std::exp(x); }, -5.0, 5.0, 1e-10);
  CHECK(r.x == doctest::Approx(std::log(2.0)).epsilon(1e-7));
}

TEST_CASE("brent lands on the boundary for monotone objectives") {
  auto r = maximize_scalar([](double x) { return x; }, 0.0, 1.0, 1e-8);
  CHECK(r.x == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("non-finite objective values are reported") {
  CHECK_THROWS_AS(
      maximize_scalar([](double x) { return x > 0.5 ? std::nan("") : x; }, 0.0, 1.0, 1e-8),
      numeric_error);
}

}  // TEST_SUITE
