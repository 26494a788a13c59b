#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vmcorr/special_functions.hpp"

using namespace vmcorr;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("bessel_i at the origin") {
  CHECK(bessel_i(BesselOrder(0), 0.0) == 1.0);
  CHECK(bessel_i(BesselOrder(1), 0.0) == 0.0);
  CHECK(bessel_i_scaled(BesselOrder(0), 0.0) == 1.0);
  CHECK(bessel_i_scaled(BesselOrder(5), 0.0) == 0.0);
}

TEST_CASE("bessel_i agrees with the power series") {
  for (double x : {1e-6, 0.1, 0.5, 1.0, 1.9, 2.1, 5.0, 10.0, 25.0, 50.0}) {
    for (int m : {0, 1, 2, 3, 7, 15, 30}) {
      const double expected = static_cast<double>(oracle::bessel_i_series(m, x));
      if (expected < 1e-280) continue;
      CAPTURE(x);
      CAPTURE(m);
      CHECK(rel(bessel_i(BesselOrder(m), x), expected) < 1e-13);
    }
  }
}

TEST_CASE("I_0(1) matches the closed series to 1e-13") {
  long double sum = 0, term = 1;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) term /= 4.0L * k * k;
    sum += term;
  }
  CHECK(rel(bessel_i(BesselOrder(0), 1.0), static_cast<double>(sum)) < 1e-13);
}

TEST_CASE("scaled Bessel at large argument follows the asymptotic expansion") {
  CHECK(rel(bessel_i_scaled(BesselOrder(0), 100.0), oracle::bessel_i_scaled_asymptotic(0, 100.0)) <
        1e-10);
  for (double x : {300.0, 500.0, 800.0, 2000.0}) {
    for (int m : {0, 1, 4}) {
      CAPTURE(x);
      CAPTURE(m);
      CHECK(rel(bessel_i_scaled(BesselOrder(m), x), oracle::bessel_i_scaled_asymptotic(m, x)) <
            1e-12);
    }
  }
}

TEST_CASE("bessel_i overflows loudly, the scaled form does not") {
  CHECK_THROWS_AS(bessel_i(BesselOrder(0), 800.0), OverflowError);
  CHECK(std::isfinite(bessel_i_scaled(BesselOrder(3), 800.0)));
  CHECK(std::isfinite(log_bessel_i_scaled(BesselOrder(40), 1e5)));
}

TEST_CASE("negative orders are rejected unless folded") {
  CHECK_THROWS_AS(BesselOrder(-1), InvalidArgument);
  CHECK(BesselOrder::folded(-3).value() == 3);
}

TEST_CASE("recurrence residual") {
  for (double x = 0.05; x <= 50.0; x += 0.35) {
    for (int m = 1; m <= 20; ++m) {
      const auto seq = scaled_bessel_sequence<double>(m + 1, x);
      const double lo = seq.scaled(m - 1), mid = seq.scaled(m), hi = seq.scaled(m + 1);
      CAPTURE(x);
      CAPTURE(m);
      CHECK(std::fabs(lo - hi - 2 * m / x * mid) <= 1e-10 * lo);
    }
  }
}

TEST_CASE("ordering I_m > I_{m+1} > 0") {
  for (double x : {1e-3, 0.3, 1.0, 4.0, 20.0, 100.0, 600.0}) {
    const auto seq = scaled_bessel_sequence<double>(30, x);
    for (int m = 1; m < 30; ++m) {
      if (seq.scaled(m + 1) == 0) break;
      CHECK(seq.scaled(m) > seq.scaled(m + 1));
      CHECK(seq.scaled(m + 1) > 0);
    }
  }
}

TEST_CASE("scaling consistency") {
  for (double x : {0.5, 3.0, 30.0, 300.0}) {
    for (int m : {0, 2, 9}) {
      CHECK(rel(bessel_i(BesselOrder(m), x), bessel_i_scaled(BesselOrder(m), x) * std::exp(x)) <
            1e-12);
    }
  }
}

TEST_CASE("bessel_i_over_power") {
  CHECK(bessel_i_over_power(BesselOrder(0), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_i_over_power(BesselOrder(1), 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bessel_i_over_power(BesselOrder(2), 0.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(bessel_i_over_power(BesselOrder(5), 0.0) ==
        doctest::Approx(1.0 / (32 * 120)).epsilon(1e-14));
  // Continuity across the tiny-argument switch.
  CHECK(rel(bessel_i_over_power(BesselOrder(3), 2e-8), 1.0 / 48) < 1e-12);
  for (double x : {1e-4, 0.2, 1.0, 7.0, 50.0}) {
    for (int m : {0, 1, 6, 12}) {
      CHECK(rel(bessel_i_over_power(BesselOrder(m), x) * std::pow(x, m),
                bessel_i(BesselOrder(m), x)) < 1e-12);
    }
  }
}

TEST_CASE("bessel_ratio") {
  CHECK(bessel_ratio(0.0) == 0.0);
  const double r10 = bessel_ratio(10.0);
  CHECK(r10 > 0.9);
  CHECK(r10 < 1.0);
  const double r1 = static_cast<double>(oracle::bessel_i_series(1, 1.0L) /
                                        oracle::bessel_i_series(0, 1.0L));
  CHECK(rel(bessel_ratio(1.0), r1) < 1e-13);
  CHECK_THROWS_AS(bessel_ratio(-1.0), InvalidArgument);
}

TEST_CASE("long double instantiation") {
  const long double v = bessel_i_scaled(BesselOrder(2), 3.0L) * std::exp(3.0L);
  CHECK(std::fabs(v / oracle::bessel_i_series(2, 3.0L) - 1) < 1e-16L);
}
