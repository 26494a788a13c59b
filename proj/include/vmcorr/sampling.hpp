#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string_view>

#include "vmcorr/params.hpp"

namespace vmcorr {

// Random source used by every sampler: std::mt19937_64 seeded from
// splitmix64(seed, stream).  Uniform variates are built from the top 53 bits
// so outputs are bit-identical across standard library implementations.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Seed of replicate / stream `index` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

enum class SamplingMethod { Gibbs, Rejection };
std::string_view to_string(SamplingMethod method);
SamplingMethod parse_sampling_method(std::string_view name);

struct SamplerConfig {
  std::uint64_t seed = 0;
  SamplingMethod method = SamplingMethod::Gibbs;
  int burn_in = 1000;  // Gibbs only
  int thin = 1;        // Gibbs only

  void validate() const;
};

// n pairs (theta_i, phi_i) in [-pi, pi) with generation provenance.
struct AngleSampleMatrix {
  Eigen::ArrayXd theta;
  Eigen::ArrayXd phi;
  ModelParams params;
  SamplerConfig config;
  long proposals = 0;  // rejection sampler only
  long accepted = 0;

  Eigen::Index size() const { return theta.size(); }
  double acceptance_rate() const {
    return proposals > 0 ? static_cast<double>(accepted) / static_cast<double>(proposals) : 1.0;
  }
};

// Univariate von Mises conditional: Phi | Theta or Theta | Phi.
struct ConditionalSpec {
  double kappa_cond = 0.0;
  double mu_cond = 0.0;
};

// One von Mises(mu, kappa) draw by the Best-Fisher wrapped-Cauchy rejection
// scheme; uniform for kappa < 1e-10.
double draw_von_mises(Rng& rng, double mu, double kappa);

Eigen::ArrayXd sample_univariate_vm(double mu, double kappa, Eigen::Index n, std::uint64_t seed);

// Phi | Theta = theta.
ConditionalSpec sine_conditional(const ModelParams& params, double theta);
ConditionalSpec cosine_conditional(const ModelParams& params, double theta);
// Theta | Phi = phi (same construction with the roles swapped).
ConditionalSpec sine_conditional_theta(const ModelParams& params, double phi);
ConditionalSpec cosine_conditional_theta(const ModelParams& params, double phi);

// Gibbs sampler, or the rejection sampler when config.method is Rejection.
AngleSampleMatrix sample_bivariate(const ModelParams& params, Eigen::Index n,
                                   const SamplerConfig& config);

// Largest kappa1 + kappa2 + |assoc| accepted by the rejection sampler.
inline constexpr double kRejectionEnvelopeLimit = 12.0;

// Exact i.i.d. draws by rejection from the uniform torus under the envelope
// exp(kappa1 + kappa2 + |assoc|).  Throws EnvelopeTooTight past the limit.
AngleSampleMatrix sample_bivariate_rejection(const ModelParams& params, Eigen::Index n,
                                             std::uint64_t seed);

// Density exponent E(theta, phi); the density is exp(E - log C).
double log_density_kernel(const ModelParams& params, double theta, double phi);
double log_density(const ModelParams& params, double theta, double phi,
                   const SeriesControl& control = {});
// Same, reusing a precomputed log C.
double log_density(const ModelParams& params, double theta, double phi, double log_c);

}  // namespace vmcorr
