#include "vmcorr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vmcorr/errors.hpp"
#include "vmcorr/normalizing_series.hpp"

namespace vmcorr {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kUniformKappa = 1e-10;

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) + index * 0x9e3779b97f4a7c15ULL);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

std::string_view to_string(SamplingMethod method) {
  return method == SamplingMethod::Gibbs ? "gibbs" : "rejection";
}

SamplingMethod parse_sampling_method(std::string_view name) {
  if (name == "gibbs") return SamplingMethod::Gibbs;
  if (name == "rejection") return SamplingMethod::Rejection;
  throw InvalidArgument("unknown sampling method '" + std::string(name) +
                        "' (expected gibbs or rejection)");
}

void SamplerConfig::validate() const {
  if (burn_in < 0) throw InvalidArgument("burn_in must be non-negative");
  if (thin < 1) throw InvalidArgument("thin must be at least 1");
}

double draw_von_mises(Rng& rng, double mu, double kappa) {
  constexpr double pi = std::numbers::pi;
  if (kappa < kUniformKappa) return wrap_angle(-pi + 2 * pi * rng.uniform());

  // Best & Fisher (1979).  rho = (tau - sqrt(2 tau)) / (2 kappa) rewritten
  // without the cancellation that hits small kappa.
  const double root = std::sqrt(1 + 4 * kappa * kappa);
  const double tau = 1 + root;
  const double rho = 2 * kappa * tau / ((root + 1) * (tau + std::sqrt(2 * tau)));
  const double r = (1 + rho * rho) / (2 * rho);

  while (true) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double u3 = rng.uniform();
    const double z = std::cos(pi * u1);
    const double f = (1 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2 - c) - u2 > 0 || std::log(c / u2) + 1 - c >= 0) {
      const double angle = std::acos(std::clamp(f, -1.0, 1.0));
      return wrap_angle(mu + (u3 > 0.5 ? angle : -angle));
    }
  }
}

Eigen::ArrayXd sample_univariate_vm(double mu, double kappa, Eigen::Index n, std::uint64_t seed) {
  if (!(kappa >= 0)) throw InvalidArgument("kappa must be non-negative");
  if (n < 0) throw InvalidArgument("sample size must be non-negative");
  Rng rng(seed);
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = draw_von_mises(rng, mu, kappa);
  return out;
}

// Completing the cosine:
//   kappa2 cos(u) + lambda sin(a) sin(u)          = R cos(u - beta)  (sine)
//   kappa2 cos(u) + kappa3 cos(a - u)             = R cos(u - beta)  (cosine)
// with u = phi - mu2 and a = theta - mu1.

ConditionalSpec sine_conditional(const ModelParams& p, double theta) {
  const double s = p.assoc * std::sin(theta - p.mu1);
  return {std::hypot(p.kappa2, s), wrap_angle(p.mu2 + std::atan2(s, p.kappa2))};
}

ConditionalSpec sine_conditional_theta(const ModelParams& p, double phi) {
  const double s = p.assoc * std::sin(phi - p.mu2);
  return {std::hypot(p.kappa1, s), wrap_angle(p.mu1 + std::atan2(s, p.kappa1))};
}

ConditionalSpec cosine_conditional(const ModelParams& p, double theta) {
  const double a = theta - p.mu1;
  const double x = p.kappa2 + p.assoc * std::cos(a);
  const double y = p.assoc * std::sin(a);
  return {std::hypot(x, y), wrap_angle(p.mu2 + std::atan2(y, x))};
}

ConditionalSpec cosine_conditional_theta(const ModelParams& p, double phi) {
  // kappa1 cos(a) + kappa3 cos(a - u) = (kappa1 + kappa3 cos u) cos a + kappa3 sin u sin a
  const double u = phi - p.mu2;
  const double x = p.kappa1 + p.assoc * std::cos(u);
  const double y = p.assoc * std::sin(u);
  return {std::hypot(x, y), wrap_angle(p.mu1 + std::atan2(y, x))};
}

AngleSampleMatrix sample_bivariate(const ModelParams& params, Eigen::Index n,
                                   const SamplerConfig& config) {
  config.validate();
  if (n < 1) throw InvalidArgument("sample size must be at least 1");
  if (config.method == SamplingMethod::Rejection) {
    AngleSampleMatrix out = sample_bivariate_rejection(params, n, config.seed);
    out.config = config;
    return out;
  }

  const bool sine = params.family == Family::Sine;
  Rng rng(config.seed);
  double theta = params.mu1;
  double phi = params.mu2;
  auto sweep = [&] {
    const ConditionalSpec ct =
        sine ? sine_conditional_theta(params, phi) : cosine_conditional_theta(params, phi);
    theta = draw_von_mises(rng, ct.mu_cond, ct.kappa_cond);
    const ConditionalSpec cp =
        sine ? sine_conditional(params, theta) : cosine_conditional(params, theta);
    phi = draw_von_mises(rng, cp.mu_cond, cp.kappa_cond);
  };

  for (int i = 0; i < config.burn_in; ++i) sweep();

  AngleSampleMatrix out;
  out.theta.resize(n);
  out.phi.resize(n);
  out.params = params;
  out.config = config;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int t = 0; t < config.thin; ++t) sweep();
    out.theta(i) = theta;
    out.phi(i) = phi;
  }
  return out;
}

AngleSampleMatrix sample_bivariate_rejection(const ModelParams& params, Eigen::Index n,
                                             std::uint64_t seed) {
  constexpr double pi = std::numbers::pi;
  if (n < 1) throw InvalidArgument("sample size must be at least 1");
  const double bound = params.kappa1 + params.kappa2 + std::fabs(params.assoc);
  if (bound > kRejectionEnvelopeLimit) {
    throw EnvelopeTooTight("rejection sampler requires kappa1 + kappa2 + |assoc| <= 12 (got " +
                           std::to_string(bound) + ")");
  }

  Rng rng(seed);
  AngleSampleMatrix out;
  out.theta.resize(n);
  out.phi.resize(n);
  out.params = params;
  out.config = SamplerConfig{seed, SamplingMethod::Rejection, 0, 1};
  Eigen::Index filled = 0;
  while (filled < n) {
    const double theta = wrap_angle(-pi + 2 * pi * rng.uniform());
    const double phi = wrap_angle(-pi + 2 * pi * rng.uniform());
    const double u = rng.uniform();
    ++out.proposals;
    if (u < std::exp(log_density_kernel(params, theta, phi) - bound)) {
      out.theta(filled) = theta;
      out.phi(filled) = phi;
      ++filled;
    }
  }
  out.accepted = filled;
  return out;
}

double log_density_kernel(const ModelParams& p, double theta, double phi) {
  const double a = theta - p.mu1;
  const double b = phi - p.mu2;
  if (p.family == Family::Sine) {
    return p.kappa1 * std::cos(a) + p.kappa2 * std::cos(b) + p.assoc * std::sin(a) * std::sin(b);
  }
  return p.kappa1 * std::cos(a) + p.kappa2 * std::cos(b) + p.assoc * std::cos(a - b);
}

double log_density(const ModelParams& params, double theta, double phi, double log_c) {
  return log_density_kernel(params, theta, phi) - log_c;
}

double log_density(const ModelParams& params, double theta, double phi,
                   const SeriesControl& control) {
  return log_density(params, theta, phi, log_normalizer(params, control));
}

}  // namespace vmcorr
