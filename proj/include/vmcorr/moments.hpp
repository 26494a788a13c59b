#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vmcorr/normalizing_series.hpp"
#include "vmcorr/params.hpp"

namespace vmcorr {

// Trigonometric moments about the means (mu1, mu2).
struct TrigMoments {
  double e_cos_t = 0.0;   // E cos(Theta - mu1)
  double e_cos_p = 0.0;   // E cos(Phi - mu2)
  double e_cos2_t = 0.0;  // E cos^2(Theta - mu1)
  double e_cos2_p = 0.0;  // E cos^2(Phi - mu2)
  double e_ss = 0.0;      // E sin(Theta - mu1) sin(Phi - mu2)
  double e_cc = 0.0;      // E cos(Theta - mu1) cos(Phi - mu2)
};

struct NormalApprox {
  double value = 0.0;
  // True when the large-concentration normal approximation applies:
  // lambda^2 < kappa1 kappa2 (sine), kappa3 >= -kappa1 kappa2 / (kappa1 + kappa2) (cosine).
  bool valid = false;
};

struct CorrelationReport {
  ModelParams params;
  TrigMoments moments;
  double rho_js = 0.0;
  double rho_fl = 0.0;
  double var_t = 0.0;
  double var_p = 0.0;
  // delta = e_cc / sqrt(e_cos2_t e_cos2_p); rho_fl = delta * rho_js.
  double delta = 0.0;
  std::optional<NormalApprox> normal_approx;
  long terms_used = 0;
  bool converged = false;
  double log_scale_exponent = 0.0;
};

// Below this, a correlation denominator is treated as zero.
inline constexpr double kDegenerateThreshold = 1e-14;

TrigMoments trig_moments(const ModelParams& params, const SeriesControl& control = {});
// Moments from an already evaluated bundle of the same model.
TrigMoments trig_moments(Family family, const SeriesBundle& bundle);

double rho_js(const ModelParams& params, const SeriesControl& control = {});
double rho_js(const TrigMoments& moments);
double rho_fl(const ModelParams& params, const SeriesControl& control = {});
double rho_fl(const TrigMoments& moments);

// (var Theta, var Phi) = (1 - E cos(Theta - mu1), 1 - E cos(Phi - mu2)).
std::pair<double, double> circular_variance(const ModelParams& params,
                                            const SeriesControl& control = {});

std::optional<NormalApprox> normal_approx_rho(const ModelParams& params);

CorrelationReport correlation_report(const ModelParams& params, const SeriesControl& control = {});

// Ordered key/value view of a report; values are formatted with 17
// significant digits, absent values as "null".  The CLI's JSON emitter and
// the text format below are both built from it.
std::vector<std::pair<std::string, std::string>> report_fields(const CorrelationReport& report);
// One "key=value" per line.
std::string format_key_values(const CorrelationReport& report);

}  // namespace vmcorr
