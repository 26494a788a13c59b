#include "vmcorr/moments.hpp"

#include <cmath>
#include <cstdio>

#include "vmcorr/errors.hpp"

namespace vmcorr {

TrigMoments trig_moments(Family family, const SeriesBundle& b) {
  TrigMoments m;
  m.e_cos_t = b.d_k1 / b.c;
  m.e_cos_p = b.d_k2 / b.c;
  m.e_cos2_t = b.d_k1k1 / b.c;
  m.e_cos2_p = b.d_k2k2 / b.c;
  m.e_cc = b.d_k1k2 / b.c;
  m.e_ss = family == Family::Sine ? b.d_assoc / b.c : b.d_assoc_minus_k1k2 / b.c;
  return m;
}

TrigMoments trig_moments(const ModelParams& params, const SeriesControl& control) {
  return trig_moments(params.family, normalizing_bundle(params, control));
}

double rho_js(const TrigMoments& m) {
  const double denom = (1 - m.e_cos2_t) * (1 - m.e_cos2_p);
  if (!(std::fabs(denom) > kDegenerateThreshold)) {
    throw DegenerateDistribution("rho_JS undefined: a sine second moment vanishes");
  }
  return m.e_ss / std::sqrt(denom);
}

double rho_fl(const TrigMoments& m) {
  const double denom =
      m.e_cos2_t * (1 - m.e_cos2_t) * m.e_cos2_p * (1 - m.e_cos2_p);
  if (!(std::fabs(denom) > kDegenerateThreshold)) {
    throw DegenerateDistribution("rho_FL undefined: a second moment factor vanishes");
  }
  return m.e_ss * m.e_cc / std::sqrt(denom);
}

double rho_js(const ModelParams& params, const SeriesControl& control) {
  return rho_js(trig_moments(params, control));
}

double rho_fl(const ModelParams& params, const SeriesControl& control) {
  return rho_fl(trig_moments(params, control));
}

std::pair<double, double> circular_variance(const ModelParams& params,
                                            const SeriesControl& control) {
  const TrigMoments m = trig_moments(params, control);
  return {1 - m.e_cos_t, 1 - m.e_cos_p};
}

std::optional<NormalApprox> normal_approx_rho(const ModelParams& p) {
  const double k1 = p.kappa1, k2 = p.kappa2, a = p.assoc;
  if (p.family == Family::Sine) {
    if (!(k1 * k2 > 0)) return std::nullopt;
    return NormalApprox{a / std::sqrt(k1 * k2), a * a < k1 * k2};
  }
  if (!(k1 + a > 0) || !(k2 + a > 0)) return std::nullopt;
  const bool valid = (k1 + k2 > 0) ? a >= -k1 * k2 / (k1 + k2) : a >= 0;
  return NormalApprox{a / std::sqrt((k1 + a) * (k2 + a)), valid};
}

CorrelationReport correlation_report(const ModelParams& params, const SeriesControl& control) {
  const SeriesBundle bundle = normalizing_bundle(params, control);
  CorrelationReport r;
  r.params = params;
  r.moments = trig_moments(params.family, bundle);
  const TrigMoments& m = r.moments;
  r.rho_js = rho_js(m);
  r.rho_fl = rho_fl(m);
  r.var_t = 1 - m.e_cos_t;
  r.var_p = 1 - m.e_cos_p;
  r.delta = m.e_cc / std::sqrt(m.e_cos2_t * m.e_cos2_p);
  r.normal_approx = normal_approx_rho(params);
  r.terms_used = bundle.terms_used;
  r.converged = bundle.converged;
  r.log_scale_exponent = bundle.log_scale_exponent;
  return r;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> report_fields(const CorrelationReport& r) {
  std::vector<std::pair<std::string, std::string>> out = {
      {"family", std::string(to_string(r.params.family))},
      {"mu1", fmt17(r.params.mu1)},
      {"mu2", fmt17(r.params.mu2)},
      {"kappa1", fmt17(r.params.kappa1)},
      {"kappa2", fmt17(r.params.kappa2)},
      {"assoc", fmt17(r.params.assoc)},
      {"rho_js", fmt17(r.rho_js)},
      {"rho_fl", fmt17(r.rho_fl)},
      {"var_theta", fmt17(r.var_t)},
      {"var_phi", fmt17(r.var_p)},
      {"delta", fmt17(r.delta)},
      {"normal_approx", r.normal_approx ? fmt17(r.normal_approx->value) : "null"},
      {"normal_approx_valid",
       r.normal_approx ? (r.normal_approx->valid ? "true" : "false") : "null"},
      {"e_cos_theta", fmt17(r.moments.e_cos_t)},
      {"e_cos_phi", fmt17(r.moments.e_cos_p)},
      {"e_cos2_theta", fmt17(r.moments.e_cos2_t)},
      {"e_cos2_phi", fmt17(r.moments.e_cos2_p)},
      {"e_sin_sin", fmt17(r.moments.e_ss)},
      {"e_cos_cos", fmt17(r.moments.e_cc)},
      {"series_terms_used", std::to_string(r.terms_used)},
      {"series_converged", r.converged ? "true" : "false"},
      {"series_log_scale_exponent", fmt17(r.log_scale_exponent)},
  };
  return out;
}

std::string format_key_values(const CorrelationReport& report) {
  std::string text;
  for (const auto& [key, value] : report_fields(report)) {
    text += key;
    text += '=';
    text += value;
    text += '\n';
  }
  return text;
}

}  // namespace vmcorr
