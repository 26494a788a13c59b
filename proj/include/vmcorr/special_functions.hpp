#pragma once

// Modified Bessel functions of the first kind, integer order, real argument.
//
// Everything is built on one primitive, scaled_bessel_sequence(), which
// returns log(e^{-x} I_m(x)) and the ratios I_m/I_{m-1} for m = 0..max_order.
// Ratios come from a backward (Miller) recurrence, which is stable in the
// direction of decreasing order; the sequence is normalized by
//   small x  : the ascending power series of I_0,
//   moderate : the generating identity e^x = I_0 + 2 sum_{m>=1} I_m,
//   large x  : the asymptotic expansion of e^{-x} I_0(x).
// Working in log space keeps every order representable for arguments well
// beyond the double overflow point of I_m itself.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "vmcorr/errors.hpp"

namespace vmcorr {

// Non-negative Bessel order.  Negative orders must be folded first
// (I_{-m} = I_m for integer m), see folded().
class BesselOrder {
 public:
  explicit BesselOrder(int order) : order_(order) {
    if (order < 0) throw InvalidArgument("Bessel order must be non-negative");
  }
  static BesselOrder folded(int order) { return BesselOrder(order < 0 ? -order : order); }
  int value() const noexcept { return order_; }

 private:
  int order_;
};

template <typename Scalar>
struct ScaledBesselSequence {
  // log(e^{-x} I_m(x)); -inf where I_m(x) == 0 (x == 0, m >= 1).
  std::vector<Scalar> log_scaled;
  // ratio[m] = I_m(x) / I_{m-1}(x) for m >= 1; ratio[0] is 1 by convention.
  std::vector<Scalar> ratio;

  int max_order() const { return static_cast<int>(log_scaled.size()) - 1; }
  Scalar scaled(int m) const { return std::exp(log_scaled[m]); }
};

namespace detail {

template <typename Scalar>
Scalar scaled_i0_power_series(Scalar x) {
  const Scalar q = x * x / 4;
  Scalar term = 1;
  Scalar sum = 1;
  for (int k = 1; k < 200; ++k) {
    term *= q / (Scalar(k) * Scalar(k));
    sum += term;
    if (term < sum * std::numeric_limits<Scalar>::epsilon()) break;
  }
  return std::exp(-x) * sum;
}

template <typename Scalar>
Scalar scaled_i0_asymptotic(Scalar x) {
  // e^{-x} I_0(x) ~ (2 pi x)^{-1/2} sum_k prod_{j<=k} (2j-1)^2 / (8 x j)
  const Scalar pi = Scalar(3.141592653589793238462643383279502884L);
  Scalar term = 1;
  Scalar sum = 1;
  for (int k = 1; k < 60; ++k) {
    const Scalar next = term * Scalar((2 * k - 1) * (2 * k - 1)) / (8 * x * k);
    if (next > term) break;  // asymptotic series starts diverging
    term = next;
    sum += term;
    if (term < sum * std::numeric_limits<Scalar>::epsilon()) break;
  }
  return sum / std::sqrt(2 * pi * x);
}

inline constexpr double kPowerSeriesLimit = 2.0;
inline constexpr double kAsymptoticLimit = 500.0;
inline constexpr double kTinyArgument = 1e-8;

}  // namespace detail

template <typename Scalar>
ScaledBesselSequence<Scalar> scaled_bessel_sequence(int max_order, Scalar x) {
  if (max_order < 0) throw InvalidArgument("max_order must be non-negative");
  if (!(x >= 0)) throw InvalidArgument("Bessel argument must be non-negative");

  ScaledBesselSequence<Scalar> seq;
  seq.log_scaled.assign(max_order + 1, -std::numeric_limits<Scalar>::infinity());
  seq.ratio.assign(max_order + 1, Scalar(0));
  seq.ratio[0] = 1;
  if (x == 0) {
    seq.log_scaled[0] = 0;
    return seq;
  }

  // Start order for the backward recurrence.  The start error decays like
  // (I_N / I_m)^2 and I_N/I_0 ~ exp(-N^2 / 2x) for N << x, so N must exceed
  // max_order by a few multiples of sqrt(x).
  const double xd = static_cast<double>(x);
  const int start =
      max_order + static_cast<int>(std::ceil(std::sqrt(100.0 * std::max(xd, 1.0)))) + 60;

  std::vector<Scalar> ratio(start + 1, Scalar(0));
  Scalar r = 0;
  Scalar tail = 0;  // sum_{m>=1} prod_{k<=m} r_k, built by Horner from the top
  for (int m = start; m >= 1; --m) {
    r = 1 / (2 * Scalar(m) / x + r);
    ratio[m] = r;
    tail = r * (1 + tail);
  }

  Scalar scaled_i0;
  if (xd < detail::kPowerSeriesLimit) {
    scaled_i0 = detail::scaled_i0_power_series(x);
  } else if (xd >= detail::kAsymptoticLimit) {
    scaled_i0 = detail::scaled_i0_asymptotic(x);
  } else {
    scaled_i0 = 1 / (1 + 2 * tail);
  }

  Scalar log_value = std::log(scaled_i0);
  seq.log_scaled[0] = log_value;
  for (int m = 1; m <= max_order; ++m) {
    seq.ratio[m] = ratio[m];
    log_value += std::log(ratio[m]);
    seq.log_scaled[m] = log_value;
  }
  return seq;
}

// log(e^{-x} I_m(x)).
template <typename Scalar>
Scalar log_bessel_i_scaled(BesselOrder order, Scalar x) {
  return scaled_bessel_sequence<Scalar>(order.value(), x).log_scaled[order.value()];
}

// e^{-x} I_m(x); finite for every representable x >= 0.
template <typename Scalar>
Scalar bessel_i_scaled(BesselOrder order, Scalar x) {
  return std::exp(log_bessel_i_scaled(order, x));
}

// I_m(x).  Throws OverflowError when the value exceeds the Scalar range.
template <typename Scalar>
Scalar bessel_i(BesselOrder order, Scalar x) {
  const Scalar log_value = log_bessel_i_scaled(order, x) + x;
  if (log_value > std::log(std::numeric_limits<Scalar>::max())) {
    throw OverflowError("I_m(x) overflows; use bessel_i_scaled");
  }
  return std::exp(log_value);
}

// log(1 / (2^m m!)), the x -> 0 limit of log(I_m(x) / x^m).
template <typename Scalar>
Scalar log_bessel_i_over_power_limit(int m) {
  return -Scalar(m) * std::log(Scalar(2)) - std::lgamma(Scalar(m) + 1);
}

// log(I_m(x) / x^m), continuous at x = 0.
template <typename Scalar>
Scalar log_bessel_i_over_power(BesselOrder order, Scalar x) {
  const int m = order.value();
  if (x < Scalar(detail::kTinyArgument)) return log_bessel_i_over_power_limit<Scalar>(m);
  return log_bessel_i_scaled(order, x) + x - Scalar(m) * std::log(x);
}

// I_m(x) / x^m with value 1/(2^m m!) at x = 0.
template <typename Scalar>
Scalar bessel_i_over_power(BesselOrder order, Scalar x) {
  return std::exp(log_bessel_i_over_power(order, x));
}

// A(x) = I_1(x) / I_0(x), the mean resultant length of a von Mises(kappa = x).
template <typename Scalar>
Scalar bessel_ratio(Scalar x) {
  if (!(x >= 0)) throw InvalidArgument("Bessel argument must be non-negative");
  if (x == 0) return 0;
  return scaled_bessel_sequence<Scalar>(1, x).ratio[1];
}

}  // namespace vmcorr
