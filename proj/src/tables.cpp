#include "vmcorr/tables.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "vmcorr/errors.hpp"
#include "vmcorr/normalizing_series.hpp"
#include "vmcorr/sampling.hpp"

namespace vmcorr {

std::vector<ModelParams> table_grid(Family family) {
  std::vector<ModelParams> rows;
  for (double kappa : {1.0, 0.1, 10.0}) {
    for (double factor : {0.5, -0.5, 2.0, -2.0}) {
      rows.push_back(ModelParams::make(family, kappa, kappa, factor * kappa));
    }
  }
  return rows;
}

Eigen::MatrixXd density_grid(const ModelParams& params, int resolution,
                             const SeriesControl& control) {
  if (resolution < 8) throw InvalidArgument("density grid resolution must be at least 8");
  const double log_c = log_normalizer(params, control);
  const double h = 2 * std::numbers::pi / resolution;
  Eigen::MatrixXd grid(resolution, resolution);
  for (int i = 0; i < resolution; ++i) {
    const double theta = -std::numbers::pi + h * i;
    for (int j = 0; j < resolution; ++j) {
      const double phi = -std::numbers::pi + h * j;
      grid(i, j) = std::exp(log_density(params, theta, phi, log_c));
    }
  }
  return grid;
}

int count_local_maxima(const Eigen::MatrixXd& grid) {
  const Eigen::Index rows = grid.rows();
  const Eigen::Index cols = grid.cols();
  auto wrap = [](Eigen::Index i, Eigen::Index n) { return ((i % n) + n) % n; };

  // Each plateau (8-connected cells of equal value) is visited once; it is a
  // maximum when none of its cells has a strictly larger neighbour.
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
      Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(rows, cols, false);
  int count = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (seen(i, j)) continue;
      const double level = grid(i, j);
      bool is_max = true;
      stack.push_back({i, j});
      seen(i, j) = true;
      while (!stack.empty()) {
        const auto [ci, cj] = stack.back();
        stack.pop_back();
        for (int di = -1; di <= 1; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            const Eigen::Index ni = wrap(ci + di, rows), nj = wrap(cj + dj, cols);
            const double v = grid(ni, nj);
            if (v > level) {
              is_max = false;
            } else if (v == level && !seen(ni, nj)) {
              seen(ni, nj) = true;
              stack.push_back({ni, nj});
            }
          }
        }
      }
      if (is_max) ++count;
    }
  }
  return count;
}

}  // namespace vmcorr
