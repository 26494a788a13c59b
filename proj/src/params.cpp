#include "vmcorr/params.hpp"

#include "vmcorr/errors.hpp"

namespace vmcorr {

std::string_view to_string(Family family) {
  return family == Family::Sine ? "sine" : "cosine";
}

Family parse_family(std::string_view name) {
  if (name == "sine") return Family::Sine;
  if (name == "cosine") return Family::Cosine;
  throw InvalidArgument("unknown family '" + std::string(name) + "' (expected sine or cosine)");
}

ModelParams ModelParams::make(Family family, double kappa1, double kappa2, double assoc,
                              double mu1, double mu2) {
  if (!(kappa1 >= 0) || !(kappa2 >= 0) || !std::isfinite(kappa1) || !std::isfinite(kappa2)) {
    throw InvalidArgument("kappa1 and kappa2 must be finite and non-negative");
  }
  if (!std::isfinite(assoc) || !std::isfinite(mu1) || !std::isfinite(mu2)) {
    throw InvalidArgument("association parameter and means must be finite");
  }
  return ModelParams{family, wrap_angle(mu1), wrap_angle(mu2), kappa1, kappa2, assoc};
}

void SeriesControl::validate() const {
  if (!(rel_tol > 0)) throw InvalidArgument("rel_tol must be positive");
  if (consecutive_small < 1) throw InvalidArgument("consecutive_small must be at least 1");
  if (max_terms < 1) throw InvalidArgument("max_terms must be at least 1");
}

}  // namespace vmcorr
