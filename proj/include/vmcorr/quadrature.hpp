#pragma once

// Periodic trapezoid integration over the torus [-pi, pi)^2.
//
// For smooth 2pi-periodic integrands the uniform grid converges
// geometrically, so this is used as an independent oracle for the series
// module: it shares no code with it.  Not part of the stable library API.

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "vmcorr/errors.hpp"
#include "vmcorr/moments.hpp"
#include "vmcorr/normalizing_series.hpp"
#include "vmcorr/params.hpp"

namespace vmcorr::quadrature {

inline constexpr int kMaxResolution = 4096;
inline constexpr double kConvergenceTol = 1e-10;

struct GridSpec {
  int resolution = 64;  // points per axis, >= 8

  explicit GridSpec(int points = 64) : resolution(points) {
    if (points < 8) throw InvalidArgument("grid resolution must be at least 8");
  }
};

// Neumaier-compensated running sum; summation order is fixed by the caller.
template <typename Vector>
class CompensatedSum {
 public:
  explicit CompensatedSum(const Vector& zero) : sum_(zero), comp_(zero) {}
  void add(const Vector& x) {
    const Vector t = sum_ + x;
    comp_ += (sum_.abs() >= x.abs()).select((sum_ - t) + x, (x - t) + sum_);
    sum_ = t;
  }
  Vector value() const { return sum_ + comp_; }

 private:
  Vector sum_;
  Vector comp_;
};

// Trapezoid rule for a vector-valued integrand at a fixed resolution.
// Returns the integrals in the first K entries and the integrals of |f| in
// the last K.
template <int K, typename F>
Eigen::Array<double, 2 * K, 1> trapezoid(const F& f, int n) {
  using Out = Eigen::Array<double, K, 1>;
  using Both = Eigen::Array<double, 2 * K, 1>;
  const double h = 2 * std::numbers::pi / n;
  CompensatedSum<Both> total(Both::Zero());
  for (int i = 0; i < n; ++i) {
    const double theta = -std::numbers::pi + h * i;
    CompensatedSum<Both> row(Both::Zero());
    for (int j = 0; j < n; ++j) {
      const double phi = -std::numbers::pi + h * j;
      const Out v = f(theta, phi);
      Both both;
      both << v, v.abs();
      row.add(both);
    }
    total.add(row.value());
  }
  return total.value() * (h * h);
}

// Doubles the resolution from grid.resolution until successive values of
// every component agree to kConvergenceTol relative to the integral of |f|.
// Throws ResolutionCapExceeded past kMaxResolution points per axis.
template <int K, typename F>
Eigen::Array<double, K, 1> integrate_torus_vec(const F& f, GridSpec grid,
                                               int* resolution_used = nullptr) {
  int n = grid.resolution;
  Eigen::Array<double, 2 * K, 1> prev = trapezoid<K>(f, n);
  while (true) {
    if (2 * n > kMaxResolution) {
      throw ResolutionCapExceeded("torus quadrature did not converge within the resolution cap");
    }
    n *= 2;
    const Eigen::Array<double, 2 * K, 1> next = trapezoid<K>(f, n);
    const Eigen::Array<double, K, 1> diff =
        (next.template head<K>() - prev.template head<K>()).abs();
    const bool converged = (diff <= kConvergenceTol * next.template tail<K>()).all();
    prev = next;
    if (converged) break;
  }
  if (resolution_used) *resolution_used = n;
  return prev.template head<K>();
}

// Scalar integral of f over the torus.
double integrate_torus(const std::function<double(double, double)>& f, GridSpec grid);

// Torus integral of the unnormalized density exp(E(theta, phi)).
double oracle_constant(const ModelParams& params, GridSpec grid = GridSpec(64));

// Every SeriesBundle field as a weighted torus integral of the density
// exponential, split by the same e^{kappa1 + kappa2 + |assoc|} factor so
// results are comparable with the series to full precision.
SeriesBundle oracle_bundle(const ModelParams& params, GridSpec grid = GridSpec(64));

struct OracleMoments {
  TrigMoments trig;
  double e_sin_p_cos_t = 0.0;  // E sin(Phi - mu2) cos(Theta - mu1)
  double e_sin_t_cos_p = 0.0;  // E sin(Theta - mu1) cos(Phi - mu2)
};

OracleMoments oracle_moments(const ModelParams& params, GridSpec grid = GridSpec(64));

// Normalized conditional density of Phi given Theta = theta on a uniform
// phi grid of `points` nodes (the slice of the joint density).
Eigen::ArrayXd conditional_slice(const ModelParams& params, double theta, int points);

// Series-versus-quadrature comparison of one quantity.  The discrepancy is
// |series - oracle| / max(|oracle|, kDiscrepancyFloor).
inline constexpr double kDiscrepancyFloor = 1e-6;

struct OracleComparison {
  std::string quantity;
  double series = 0.0;
  double oracle = 0.0;
  double discrepancy = 0.0;
};

// log C, every bundle ratio d_x / C, the trigonometric moments and the
// derived correlations and variances.
std::vector<OracleComparison> compare_with_oracle(const ModelParams& params,
                                                  const SeriesControl& control = {},
                                                  GridSpec grid = GridSpec(64));

}  // namespace vmcorr::quadrature
