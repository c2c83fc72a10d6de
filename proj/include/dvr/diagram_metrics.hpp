#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dvr/persistence.hpp"
#include "dvr/point_cloud.hpp"

namespace dvr {

/// Bottleneck distance between the dimension-`dim` parts of two diagrams.
/// Essential points are matched among themselves by sorted birth; differing
/// essential counts give infinity. The finite part is exact over the set of
/// candidate costs, so `tol` only bounds floating-point error in those costs.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim, double tol = 1e-9);

/// Same, on raw (birth, death) lists with finite deaths only.
double bottleneck_finite(const std::vector<std::pair<double, double>>& a,
                         const std::vector<std::pair<double, double>>& b);

/// min over bijections of max |x_i - y_sigma(i)|. Requires equal sizes and dimensions.
double wasserstein_inf_pointcloud(const PointCloud& x, const PointCloud& y);

namespace detail {

/// Maximum cardinality bipartite matching (Hopcroft-Karp). adjacency[u] lists
/// right vertices in [0, num_right).
std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adjacency, std::size_t num_right);

}  // namespace detail

}  // namespace dvr
