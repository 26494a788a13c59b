#include "vmcorr/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vmcorr/errors.hpp"
#include "vmcorr/moments.hpp"

namespace vmcorr {

double circular_mean(AngleArray angles) {
  if (angles.size() == 0) throw InvalidArgument("circular mean of an empty sample");
  const double s = angles.sin().mean();
  const double c = angles.cos().mean();
  if (std::hypot(s, c) <= 1e-12) throw UndefinedMean("circular mean undefined: zero resultant");
  return wrap_angle(std::atan2(s, c));
}

double sample_circular_variance(AngleArray angles) {
  if (angles.size() == 0) throw InvalidArgument("circular variance of an empty sample");
  const double resultant = std::hypot(angles.sin().mean(), angles.cos().mean());
  return std::clamp(1 - resultant, 0.0, 1.0);
}

namespace {

void check_pair(AngleArray theta, AngleArray phi) {
  if (theta.size() != phi.size()) throw InvalidArgument("theta and phi differ in length");
  if (theta.size() < 2) throw InvalidArgument("at least two pairs are required");
}

// atan2(mean sin, mean cos) without the resultant check: rho_JS stays
// defined for samples whose circular mean is not.
double mean_direction(AngleArray angles) {
  return std::atan2(angles.sin().mean(), angles.cos().mean());
}

}  // namespace

double sample_rho_js(AngleArray theta, AngleArray phi) {
  check_pair(theta, phi);
  const Eigen::ArrayXd st = (theta - mean_direction(theta)).sin();
  const Eigen::ArrayXd sp = (phi - mean_direction(phi)).sin();
  const double denom = st.square().sum() * sp.square().sum();
  if (denom <= kDegenerateDataThreshold) throw DegenerateData("rho_JS: zero sine dispersion");
  return std::clamp((st * sp).sum() / std::sqrt(denom), -1.0, 1.0);
}

double sample_rho_js(const AngleSampleMatrix& data) { return sample_rho_js(data.theta, data.phi); }

double sample_rho_fl(AngleArray theta, AngleArray phi) {
  check_pair(theta, phi);
  const Eigen::ArrayXd st = theta.sin(), ct = theta.cos();
  const Eigen::ArrayXd sp = phi.sin(), cp = phi.cos();
  const double numer = (st * sp).sum() * (ct * cp).sum() - (st * cp).sum() * (ct * sp).sum();
  const double dt = st.square().sum() * ct.square().sum() - std::pow((st * ct).sum(), 2);
  const double dp = sp.square().sum() * cp.square().sum() - std::pow((sp * cp).sum(), 2);
  if (dt <= kDegenerateDataThreshold || dp <= kDegenerateDataThreshold) {
    throw DegenerateData("rho_FL: degenerate pairwise sine dispersion");
  }
  return std::clamp(numer / std::sqrt(dt * dp), -1.0, 1.0);
}

double sample_rho_fl(const AngleSampleMatrix& data) { return sample_rho_fl(data.theta, data.phi); }

std::string_view to_string(Quantity quantity) {
  switch (quantity) {
    case Quantity::RhoJS: return "rho_js";
    case Quantity::RhoFL: return "rho_fl";
    case Quantity::VarTheta: return "var_theta";
  }
  return "unknown";
}

std::vector<McValidation> mc_validate(const ModelParams& params, long sample_size, int replicates,
                                      std::uint64_t seed, const McOptions& options,
                                      const SeriesControl& control) {
  if (replicates < 2) throw InvalidArgument("mc_validate needs at least 2 replicates");
  if (sample_size < 2) throw InvalidArgument("mc_validate needs sample_size >= 2");

  const CorrelationReport report = correlation_report(params, control);

  // estimates(r, q) for replicate r and quantity q
  Eigen::ArrayXXd estimates(replicates, 3);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < replicates; r = next++) {
      try {
        const SamplerConfig config{derive_seed(seed, static_cast<std::uint64_t>(r)), options.method,
                                   options.burn_in, options.thin};
        const AngleSampleMatrix data = sample_bivariate(params, sample_size, config);
        estimates(r, 0) = sample_rho_js(data);
        estimates(r, 1) = sample_rho_fl(data);
        estimates(r, 2) = sample_circular_variance(data.theta);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(replicates));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  const double analytic[3] = {report.rho_js, report.rho_fl, report.var_t};
  const Quantity quantities[3] = {Quantity::RhoJS, Quantity::RhoFL, Quantity::VarTheta};
  std::vector<McValidation> rows;
  for (int q = 0; q < 3; ++q) {
    const auto col = estimates.col(q);
    const double mean = col.mean();
    const double sd = std::sqrt((col - mean).square().sum() / (replicates - 1));
    McValidation row;
    row.quantity = quantities[q];
    row.analytic = analytic[q];
    row.estimate_mean = mean;
    row.estimate_se = sd;
    row.replicates = replicates;
    row.sample_size = sample_size;
    row.z_score = sd > 0 ? (mean - analytic[q]) / sd : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vmcorr
