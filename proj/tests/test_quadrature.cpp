#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vmcorr/normalizing_series.hpp"
#include "vmcorr/quadrature.hpp"
#include "vmcorr/tables.hpp"

using namespace vmcorr;
using namespace vmcorr::quadrature;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("torus integral identities") {
  CHECK(integrate_torus([](double, double) { return 1.0; }, GridSpec(8)) ==
        doctest::Approx(4 * pi * pi).epsilon(1e-15));
  const double same = integrate_torus(
      [](double t, double p) { return std::cos(3 * t) * std::cos(3 * p) * std::cos(3 * (t - p)); },
      GridSpec(16));
  CHECK(same == doctest::Approx(pi * pi).epsilon(1e-14));
  const double mixed = integrate_torus(
      [](double t, double p) { return std::cos(2 * t) * std::cos(3 * p) * std::cos(2 * (t - p)); },
      GridSpec(16));
  CHECK(std::fabs(mixed) < 1e-12);
}

TEST_CASE("grid validation and the resolution cap") {
  CHECK_THROWS_AS(GridSpec(4), InvalidArgument);
  // A kinked integrand converges only algebraically.
  CHECK_THROWS_AS(
      integrate_torus([](double t, double) { return std::fabs(std::sin(t - 0.3)); }, GridSpec(8)),
      ResolutionCapExceeded);
}

TEST_CASE("oracle constant") {
  CHECK(oracle_constant(ModelParams::sine(0, 0, 0)) == doctest::Approx(4 * pi * pi).epsilon(1e-15));
  for (const ModelParams& p : {ModelParams::cosine(2, 3, 1.5), ModelParams::cosine(1, 1, -2)}) {
    CHECK(std::fabs(oracle_constant(p) / std::exp(log_normalizer(p)) - 1) < 1e-8);
  }
}

TEST_CASE("resolution doubling from 256 to 512") {
  for (const ModelParams& p : {ModelParams::sine(20, 20, -20), ModelParams::cosine(20, 5, 20),
                               ModelParams::cosine(10, 10, -20)}) {
    const auto body = [&](double a, double b) {
      using V = Eigen::Array<double, 3, 1>;
      const double e = p.family == Family::Sine
                           ? p.kappa1 * std::cos(a) + p.kappa2 * std::cos(b) +
                                 p.assoc * std::sin(a) * std::sin(b)
                           : p.kappa1 * std::cos(a) + p.kappa2 * std::cos(b) +
                                 p.assoc * std::cos(a - b);
      const double w = std::exp(e - (p.kappa1 + p.kappa2 + std::fabs(p.assoc)));
      return V(w, w * std::cos(a), w * std::sin(a) * std::sin(b));
    };
    const auto lo = trapezoid<3>(body, 256);
    const auto hi = trapezoid<3>(body, 512);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::fabs(lo(k) - hi(k)) <= 1e-10 * std::fabs(hi(k)));
    }
  }
}

TEST_CASE("oracle moments are self-consistent") {
  for (const ModelParams& p : {ModelParams::sine(1, 2, -3), ModelParams::cosine(1, 1, 2),
                               ModelParams::cosine(0.1, 5, -4)}) {
    const OracleMoments m = oracle_moments(p);
    CHECK(m.trig.e_cos2_t > 0);
    CHECK(m.trig.e_cos2_t <= 1);
    CHECK(std::fabs(m.trig.e_ss) <= 1);
    CHECK(std::fabs(m.e_sin_p_cos_t) <= 1e-10);
    CHECK(std::fabs(m.e_sin_t_cos_p) <= 1e-10);
  }
}

TEST_CASE("comparison report") {
  const auto rows = compare_with_oracle(ModelParams::cosine(1, 1, -2));
  CHECK(rows.size() == 18);
  for (const auto& row : rows) {
    CAPTURE(row.quantity);
    CHECK(row.discrepancy < 1e-8);
  }
}

TEST_CASE("conditional slice is a density") {
  const Eigen::ArrayXd s = conditional_slice(ModelParams::cosine(1, 2, -1.5), 0.8, 128);
  CHECK(s.sum() * 2 * pi / 128 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((s > 0).all());
}

TEST_CASE("density grid") {
  const Eigen::MatrixXd u = density_grid(ModelParams::sine(0, 0, 0), 16);
  CHECK((u.array() - 1 / (4 * pi * pi)).abs().maxCoeff() < 1e-15);
  CHECK(count_local_maxima(u) == 1);
  for (const ModelParams& p : {ModelParams::sine(1, 1, 2), ModelParams::cosine(3, 1, -2, 1, -2)}) {
    const Eigen::MatrixXd g = density_grid(p, 64);
    const double cell = std::pow(2 * pi / 64, 2);
    CHECK(std::fabs(g.sum() * cell - 1) <= 1e-6);
  }
  CHECK_THROWS_AS(density_grid(ModelParams::sine(1, 1, 1), 4), InvalidArgument);
}

TEST_CASE("local maxima counting") {
  CHECK(count_local_maxima(density_grid(ModelParams::sine(1, 1, 2), 256)) == 2);
  CHECK(count_local_maxima(density_grid(ModelParams::cosine(1, 1, -2), 256)) == 2);
  CHECK(count_local_maxima(density_grid(ModelParams::sine(1, 1, 0.5), 256)) == 1);
  CHECK(count_local_maxima(density_grid(ModelParams::cosine(1, 1, 2), 256)) == 1);
  // A peak straddling the wrap-around edge is counted once.
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(10, 10);
  g(0, 0) = g(9, 0) = g(0, 9) = g(9, 9) = 1;
  CHECK(count_local_maxima(g) == 1);
  g(5, 5) = 0.5;
  CHECK(count_local_maxima(g) == 2);
}
