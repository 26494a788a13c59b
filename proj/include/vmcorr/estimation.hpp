#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string_view>
#include <vector>

#include "vmcorr/params.hpp"
#include "vmcorr/sampling.hpp"

namespace vmcorr {

// Denominators at or below this make a sample statistic undefined.
inline constexpr double kDegenerateDataThreshold = 1e-12;

using AngleArray = Eigen::Ref<const Eigen::ArrayXd>;

// atan2(mean sin, mean cos).  Throws UndefinedMean when the mean resultant
// length is <= 1e-12.
double circular_mean(AngleArray angles);

// 1 - mean resultant length, in [0, 1].
double sample_circular_variance(AngleArray angles);

// Jammalamadaka-Sarma coefficient with the means replaced by the sample
// circular means.  A zero-resultant coordinate uses atan2(0, 0) = 0 as its
// mean direction instead of raising UndefinedMean.
double sample_rho_js(AngleArray theta, AngleArray phi);
double sample_rho_js(const AngleSampleMatrix& data);

// Fisher-Lee coefficient: the all-pairs U-statistic, evaluated in one pass
// through the identity
//   sum_{i,j} sin(t_i - t_j) sin(p_i - p_j) = 2 [S(st sp) S(ct cp) - S(st cp) S(ct sp)]
//   sum_{i,j} sin^2(t_i - t_j)             = 2 [S(st^2) S(ct^2) - S(st ct)^2]
double sample_rho_fl(AngleArray theta, AngleArray phi);
double sample_rho_fl(const AngleSampleMatrix& data);

enum class Quantity { RhoJS, RhoFL, VarTheta };
std::string_view to_string(Quantity quantity);

struct McValidation {
  Quantity quantity = Quantity::RhoJS;
  double analytic = 0.0;
  double estimate_mean = 0.0;
  // Standard deviation of the per-replicate estimates, i.e. the standard
  // error of a single sample_size estimate (not of the replicate mean).
  double estimate_se = 0.0;
  int replicates = 0;
  long sample_size = 0;
  double z_score = 0.0;  // (estimate_mean - analytic) / estimate_se
};

struct McOptions {
  int burn_in = 1000;
  int thin = 1;
  SamplingMethod method = SamplingMethod::Gibbs;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Replicate r draws from Gibbs stream derive_seed(seed, r).  Results do not
// depend on the number of threads.
std::vector<McValidation> mc_validate(const ModelParams& params, long sample_size, int replicates,
                                      std::uint64_t seed, const McOptions& options = {},
                                      const SeriesControl& control = {});

}  // namespace vmcorr
