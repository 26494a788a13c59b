#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

namespace vmcorr {

enum class Family { Sine, Cosine };

std::string_view to_string(Family family);
// Accepts "sine" / "cosine" (case-sensitive).  Throws InvalidArgument otherwise.
Family parse_family(std::string_view name);

// Wraps an angle into [-pi, pi).
template <typename Scalar>
Scalar wrap_angle(Scalar angle) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  constexpr Scalar two_pi = 2 * pi;
  Scalar wrapped = std::fmod(angle + pi, two_pi);
  if (wrapped < 0) wrapped += two_pi;
  wrapped -= pi;
  // fmod can round up to exactly pi for inputs just below an odd multiple.
  if (wrapped >= pi) wrapped -= two_pi;
  return wrapped;
}

// Parameters of the bivariate von Mises sine or cosine model.  `assoc` is
// lambda for the sine model and kappa3 for the cosine model.
struct ModelParams {
  Family family = Family::Sine;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double assoc = 0.0;

  // Validates the concentrations and wraps the means.  Throws InvalidArgument.
  static ModelParams make(Family family, double kappa1, double kappa2, double assoc,
                          double mu1 = 0.0, double mu2 = 0.0);
  static ModelParams sine(double kappa1, double kappa2, double lambda, double mu1 = 0.0,
                          double mu2 = 0.0) {
    return make(Family::Sine, kappa1, kappa2, lambda, mu1, mu2);
  }
  static ModelParams cosine(double kappa1, double kappa2, double kappa3, double mu1 = 0.0,
                            double mu2 = 0.0) {
    return make(Family::Cosine, kappa1, kappa2, kappa3, mu1, mu2);
  }
};

// Truncation policy for the normalizing-constant series.
struct SeriesControl {
  double rel_tol = 1e-14;
  int consecutive_small = 3;
  long max_terms = 20000;

  void validate() const;
};

}  // namespace vmcorr
