#pragma once

#include <Eigen/Core>
#include <vector>

#include "vmcorr/params.hpp"

namespace vmcorr {

// The 12 illustration settings: kappa1 = kappa2 = kappa for kappa in
// {1, 0.1, 10}, assoc in {kappa/2, -kappa/2, 2 kappa, -2 kappa}, means zero.
std::vector<ModelParams> table_grid(Family family);

// Normalized density on the uniform grid theta_i = -pi + 2 pi i / n (rows)
// by phi_j = -pi + 2 pi j / n (columns).
Eigen::MatrixXd density_grid(const ModelParams& params, int resolution,
                             const SeriesControl& control = {});

// Number of local maxima of a periodic grid: plateaus of equal value
// (8-neighbour, wrapping at the edges) with no strictly larger neighbour.
int count_local_maxima(const Eigen::MatrixXd& grid);

}  // namespace vmcorr
