#pragma once

#include <Eigen/Core>
#include <cmath>

namespace stats {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Mean and batch-means standard error, which stays honest for the
// autocorrelated output of a Gibbs chain.  Independent draws give the
// usual sd/sqrt(n) up to sampling noise.
inline MeanSe batch_mean_se(const Eigen::ArrayXd& x, int batches = 50) {
  const Eigen::Index size = x.size() / batches;
  Eigen::ArrayXd means(batches);
  for (int b = 0; b < batches; ++b) means(b) = x.segment(b * size, size).mean();
  const double mean = means.mean();
  const double var = (means - mean).square().sum() / (batches - 1);
  return {mean, std::sqrt(var / batches)};
}

inline MeanSe iid_mean_se(const Eigen::ArrayXd& x) {
  const double mean = x.mean();
  const double var = (x - mean).square().sum() / static_cast<double>(x.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(x.size()))};
}

}  // namespace stats
