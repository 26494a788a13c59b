#include "vmcorr/normalizing_series.hpp"

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vmcorr/errors.hpp"
#include "vmcorr/special_functions.hpp"

namespace vmcorr {

namespace {

using Wide = long double;
// c, d_k1, d_k2, d_assoc, d_k1k1, d_k2k2, d_k1k2, d_assoc_minus_k1k2
using Fields = Eigen::Array<Wide, 8, 1>;

constexpr Wide kFourPiSq = 4 * std::numbers::pi_v<Wide> * std::numbers::pi_v<Wide>;
constexpr Wide kNegInf = -std::numeric_limits<Wide>::infinity();

// Bessel sequence for a fixed argument that grows on demand.
class BesselTable {
 public:
  BesselTable(Wide x, long cap) : x_(x), cap_(cap) { rebuild(64); }

  void ensure(long order) {
    if (order <= seq_.max_order()) return;
    long target = seq_.max_order();
    while (target < order) target *= 2;
    rebuild(std::min(target, cap_));
  }
  Wide log_scaled(int n) const { return seq_.log_scaled[n < 0 ? -n : n]; }
  Wide scaled(int n) const { return std::exp(log_scaled(n)); }
  Wide ratio(int n) const { return seq_.ratio[n]; }

  // log(I_n(x) / x^n)
  Wide log_over_power(int n) const {
    if (x_ < Wide(detail::kTinyArgument)) return log_bessel_i_over_power_limit<Wide>(n);
    return log_scaled(n) + x_ - Wide(n) * std::log(x_);
  }

 private:
  void rebuild(long order) { seq_ = scaled_bessel_sequence<Wide>(static_cast<int>(order), x_); }

  Wide x_;
  long cap_;
  ScaledBesselSequence<Wide> seq_;
};

// Applies the truncation rule: `consecutive_small` successive iterations in
// which every field's term is below rel_tol times its running sum.
class TruncationRule {
 public:
  explicit TruncationRule(const SeriesControl& control) : control_(control) {}

  bool done(const Fields& term, const Fields& sum) {
    const bool small =
        ((term.abs() <= Wide(control_.rel_tol) * sum.abs()) || term == Wide(0)).all();
    streak_ = small ? streak_ + 1 : 0;
    return streak_ >= control_.consecutive_small;
  }

 private:
  const SeriesControl& control_;
  int streak_ = 0;
};

SeriesBundle finish(const Fields& sum, Wide scale, long terms_used, bool converged) {
  // Split a further integer exponent out so the stored c lies in [1, e).
  const Wide shift = std::floor(std::log(sum(0)));
  const Fields stored = sum * std::exp(-shift);
  SeriesBundle b;
  b.c = static_cast<double>(stored(0));
  b.d_k1 = static_cast<double>(stored(1));
  b.d_k2 = static_cast<double>(stored(2));
  b.d_assoc = static_cast<double>(stored(3));
  b.d_k1k1 = static_cast<double>(stored(4));
  b.d_k2k2 = static_cast<double>(stored(5));
  b.d_k1k2 = static_cast<double>(stored(6));
  b.d_assoc_minus_k1k2 = static_cast<double>(stored(7));
  b.terms_used = terms_used;
  b.converged = converged;
  b.log_scale_exponent = static_cast<double>(scale + shift);
  return b;
}

void require_family(const ModelParams& params, Family family) {
  if (params.family != family) {
    throw InvalidArgument(std::string("expected ") + std::string(to_string(family)) +
                          " model parameters");
  }
}

}  // namespace

double SeriesBundle::log_c() const { return std::log(c) + log_scale_exponent; }

SeriesBundle evaluate_sine_series(const ModelParams& params, const SeriesControl& control) {
  require_family(params, Family::Sine);
  control.validate();

  const Wide k1 = params.kappa1;
  const Wide k2 = params.kappa2;
  const Wide lambda = params.assoc;
  const Wide abs_lambda = std::fabs(lambda);
  // The exponent never exceeds kappa1 + kappa2 + |lambda|, so every scaled
  // term is bounded by 4 pi^2.
  const Wide scale = k1 + k2 + abs_lambda;
  const Wide log_k1 = k1 > 0 ? std::log(k1) : kNegInf;
  const Wide log_k2 = k2 > 0 ? std::log(k2) : kNegInf;
  const Wide log_lambda = abs_lambda > 0 ? std::log(abs_lambda) : kNegInf;
  const Wide lambda_sign = lambda < 0 ? -1 : 1;

  BesselTable t1(k1, control.max_terms + 3);
  BesselTable t2(k2, control.max_terms + 3);
  TruncationRule rule(control);

  Fields sum = Fields::Zero();
  Wide binom = 1;  // binom(2m, m) / 4^m
  long m = 0;
  bool converged = false;
  for (; m < control.max_terms; ++m) {
    if (m > 0) binom *= Wide(2 * m - 1) / Wide(2 * m);
    t1.ensure(m + 2);
    t2.ensure(m + 2);
    const int n = static_cast<int>(m);

    // log of binom(2m,m) (lambda^2/4)^m, divided through by the scale.
    Wide base;
    if (m == 0) {
      base = -scale;
    } else if (abs_lambda > 0) {
      base = std::log(binom) + Wide(2 * m) * log_lambda - scale;
    } else {
      base = kNegInf;
    }

    const Wide a1 = t1.log_over_power(n);
    const Wide a1p = t1.log_over_power(n + 1);
    const Wide a1pp = t1.log_over_power(n + 2);
    const Wide a2 = t2.log_over_power(n);
    const Wide a2p = t2.log_over_power(n + 1);
    const Wide a2pp = t2.log_over_power(n + 2);

    Fields term;
    term(0) = std::exp(base + a1 + a2);
    term(1) = k1 > 0 ? std::exp(base + log_k1 + a1p + a2) : 0;
    term(2) = k2 > 0 ? std::exp(base + log_k2 + a1 + a2p) : 0;
    term(3) = (m > 0 && abs_lambda > 0)
                  ? lambda_sign * std::exp(std::log(Wide(2 * m)) + base - log_lambda + a1 + a2)
                  : 0;
    term(4) = std::exp(base + a1p + a2) + (k1 > 0 ? std::exp(base + 2 * log_k1 + a1pp + a2) : 0);
    term(5) = std::exp(base + a1 + a2p) + (k2 > 0 ? std::exp(base + 2 * log_k2 + a1 + a2pp) : 0);
    term(6) = (k1 > 0 && k2 > 0) ? std::exp(base + log_k1 + log_k2 + a1p + a2p) : 0;
    term(7) = term(3) - term(6);
    term *= kFourPiSq;

    sum += term;
    if (rule.done(term, sum)) {
      converged = true;
      ++m;
      break;
    }
  }
  return finish(sum, scale, m, converged);
}

SeriesBundle evaluate_cosine_series(const ModelParams& params, const SeriesControl& control) {
  require_family(params, Family::Cosine);
  control.validate();

  const Wide k1 = params.kappa1;
  const Wide k2 = params.kappa2;
  const Wide k3 = params.assoc;
  // I_m(k3) = s^m I_m(|k3|)
  const Wide s = k3 < 0 ? -1 : 1;
  const Wide scale = k1 + k2 + std::fabs(k3);

  BesselTable a(k1, control.max_terms + 3);
  BesselTable b(k2, control.max_terms + 3);
  BesselTable c(std::fabs(k3), control.max_terms + 3);
  TruncationRule rule(control);

  // I_{m-1} - I_{m+1} = I_{m-1} (1 - r_m r_{m+1}), free of cancellation.
  auto lower_minus_upper = [](const BesselTable& t, int m) {
    return t.scaled(m - 1) * (1 - t.ratio(m) * t.ratio(m + 1));
  };

  Fields sum = Fields::Zero();
  long m = 0;
  bool converged = false;
  Wide sm = 1;  // s^m
  for (; m < control.max_terms; ++m) {
    if (m > 0) sm *= s;
    a.ensure(m + 2);
    b.ensure(m + 2);
    c.ensure(m + 2);
    const int n = static_cast<int>(m);

    Fields term;
    if (m == 0) {
      const Wide a0 = a.scaled(0), b0 = b.scaled(0), c0 = c.scaled(0);
      const Wide a1 = a.scaled(1), b1 = b.scaled(1), c1 = c.scaled(1);
      term(0) = a0 * b0 * c0;
      term(1) = a1 * b0 * c0;
      term(2) = a0 * b1 * c0;
      term(3) = a0 * b0 * s * c1;
      term(4) = Wide(0.5) * b0 * c0 * (a0 + a.scaled(2));
      term(5) = Wide(0.5) * a0 * c0 * (b0 + b.scaled(2));
      term(6) = a1 * b1 * c0;
      term(7) = 0;
    } else {
      const Wide am = a.scaled(n), bm = b.scaled(n), cm = sm * c.scaled(n);
      const Wide a_sum = a.scaled(n + 1) + a.scaled(n - 1);
      const Wide b_sum = b.scaled(n + 1) + b.scaled(n - 1);
      const Wide c_sum = sm * s * (c.scaled(n + 1) + c.scaled(n - 1));
      term(0) = 2 * am * bm * cm;
      term(1) = bm * cm * a_sum;
      term(2) = am * cm * b_sum;
      term(3) = am * bm * c_sum;
      term(4) = Wide(0.5) * bm * cm * (a.scaled(n - 2) + 2 * am + a.scaled(n + 2));
      term(5) = Wide(0.5) * am * cm * (b.scaled(n - 2) + 2 * bm + b.scaled(n + 2));
      term(6) = Wide(0.5) * cm * a_sum * b_sum;
      term(7) = Wide(0.5) * cm * lower_minus_upper(a, n) * lower_minus_upper(b, n);
    }
    term *= kFourPiSq;

    sum += term;
    if (rule.done(term, sum)) {
      converged = true;
      ++m;
      break;
    }
  }
  return finish(sum, scale, m, converged);
}

namespace {

SeriesBundle require_converged(SeriesBundle bundle, const char* which) {
  if (!bundle.converged) {
    throw SeriesNotConverged(std::string(which) + " series did not converge within " +
                                 std::to_string(bundle.terms_used) + " terms",
                             bundle.terms_used);
  }
  return bundle;
}

}  // namespace

SeriesBundle sine_bundle(const ModelParams& params, const SeriesControl& control) {
  return require_converged(evaluate_sine_series(params, control), "sine");
}

SeriesBundle cosine_bundle(const ModelParams& params, const SeriesControl& control) {
  return require_converged(evaluate_cosine_series(params, control), "cosine");
}

SeriesBundle normalizing_bundle(const ModelParams& params, const SeriesControl& control) {
  return params.family == Family::Sine ? sine_bundle(params, control)
                                       : cosine_bundle(params, control);
}

double log_normalizer(const ModelParams& params, const SeriesControl& control) {
  return normalizing_bundle(params, control).log_c();
}

}  // namespace vmcorr
