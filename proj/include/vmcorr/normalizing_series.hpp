#pragma once

#include "vmcorr/params.hpp"

namespace vmcorr {

// Normalizing constant C of the sine or cosine density together with its
// partial derivatives in (kappa1, kappa2, assoc).  All fields share one
// factor e^{log_scale_exponent} that has been divided out, so that ratios
// such as d_k1 / c are exact while the stored values stay finite.
struct SeriesBundle {
  double c = 0.0;
  double d_k1 = 0.0;
  double d_k2 = 0.0;
  double d_assoc = 0.0;  // dC/dlambda (sine) or dC/dkappa3 (cosine)
  double d_k1k1 = 0.0;
  double d_k2k2 = 0.0;
  double d_k1k2 = 0.0;
  // d_assoc - d_k1k2.  For the cosine model this is summed as its own series
  // (sum_m a_m I_m(kappa3)) rather than formed by subtraction.
  double d_assoc_minus_k1k2 = 0.0;
  long terms_used = 0;
  bool converged = false;
  double log_scale_exponent = 0.0;

  // log C including the split-out exponent.
  double log_c() const;
};

// Evaluate the series without throwing on non-convergence; `converged`
// reports whether the truncation rule was met within control.max_terms.
SeriesBundle evaluate_sine_series(const ModelParams& params, const SeriesControl& control);
SeriesBundle evaluate_cosine_series(const ModelParams& params, const SeriesControl& control);

// Throw SeriesNotConverged when max_terms is reached.
SeriesBundle sine_bundle(const ModelParams& params, const SeriesControl& control = {});
SeriesBundle cosine_bundle(const ModelParams& params, const SeriesControl& control = {});
// Dispatches on params.family.
SeriesBundle normalizing_bundle(const ModelParams& params, const SeriesControl& control = {});

// log C for the model (log of the reciprocal normalizing constant).
double log_normalizer(const ModelParams& params, const SeriesControl& control = {});

}  // namespace vmcorr
