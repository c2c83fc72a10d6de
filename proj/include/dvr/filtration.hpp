#pragma once

#include <cstdint>
#include <span>
#include <optional>
#include <string_view>
#include <vector>

#include "dvr/density.hpp"
#include "dvr/point_cloud.hpp"
#include "dvr/scaled_metric.hpp"

namespace dvr {

using Vertex = std::uint32_t;

struct Simplex {
    std::vector<Vertex> vertices;  // strictly ascending
    double value = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Explicit filtered simplicial complex. Simplices are kept in canonical
/// order (dimension, then vertex tuple) but no filtration order is implied.
struct FilteredComplex {
    std::size_t num_vertices = 0;
    int max_dim = 0;  // homology dimension the complex was built for
    std::vector<Simplex> simplices;
};

enum class FiltrationFamily { vr, dvr, wvr, knn, cech };

std::string_view to_string(FiltrationFamily family);
FiltrationFamily parse_filtration_family(std::string_view name);

/// Clique filtration determined by its 1-skeleton: a simplex enters at the
/// maximum of its vertex and edge values. Edges with value > cap (or infinite)
/// are absent.
struct FlagFiltration {
    std::vector<double> vertex_values;
    DistanceMatrix edge_values;
    double cap = kInfinity;

    std::size_t size() const { return vertex_values.size(); }
    bool has_edge(std::size_t i, std::size_t j) const { return admits(edge_values(i, j)); }
    bool admits(double value) const { return value <= cap && value < kInfinity; }
    double largest_edge() const;  // largest retained edge value, 0 if none
};

/// 1.05 x the largest finite edge value, or infinity if there are no edges.
double default_cap(const DistanceMatrix& edge_values);

/// Resolve an optional cap against the given edge values.
double resolve_cap(const DistanceMatrix& edge_values, std::optional<double> cap);

// --- 1-skeleton constructors ------------------------------------------------

/// Edge (i,j) enters at d(i,j)/2.
FlagFiltration vr_flag(const DistanceMatrix& distances, std::optional<double> cap = std::nullopt);

struct DvrOptions {
    int intrinsic_dim = 1;
    int k = 10;
    KernelFamily kernel = KernelFamily::biweight;
    std::optional<double> alpha;       // overrides alpha(N) when set
    bool use_oracle_density = true;    // prefer densities carried by the cloud over the estimate
};

/// Density values used by the DVR construction: oracle densities when present
/// (and allowed), otherwise the kernel estimate.
std::vector<double> dvr_densities(const PointCloud& cloud, const DvrOptions& options);

/// Shortest-path distances in the density-scaled kNN graph.
DistanceMatrix dvr_distances(const PointCloud& cloud, const DvrOptions& options);

FlagFiltration dvr_flag(const PointCloud& cloud, const DvrOptions& options, std::optional<double> cap = std::nullopt);

/// Edge (i,j) enters at |x_i - x_j| / (s_i + s_j) with slope s_x = (alpha(N) f(x))^{-1/n}.
FlagFiltration weighted_vr_flag(const PointCloud& cloud, std::span<const double> density, int intrinsic_dim,
                                std::optional<double> cap = std::nullopt,
                                std::optional<double> alpha_override = std::nullopt);

/// Integer filtration: edge (i,j) enters at the smallest k with |x_i - x_j| no
/// larger than the k-th neighbour radius of x_i or of x_j. Vertices enter at 1.
/// Edges with k > k_cap are omitted.
FlagFiltration knn_flag(const PointCloud& cloud, std::optional<int> k_cap = std::nullopt);

/// Enumerate all cliques up to dimension max_dim + 1.
FilteredComplex expand(const FlagFiltration& flag, int max_dim);

// --- explicit complexes -----------------------------------------------------

FilteredComplex vr_filtration(const DistanceMatrix& distances, int max_dim, std::optional<double> cap = std::nullopt);
FilteredComplex dvr_filtration(const PointCloud& cloud, const DvrOptions& options, int max_dim,
                               std::optional<double> cap = std::nullopt);
FilteredComplex weighted_vr_filtration(const PointCloud& cloud, std::span<const double> density, int intrinsic_dim,
                                       int max_dim, std::optional<double> cap = std::nullopt,
                                       std::optional<double> alpha_override = std::nullopt);
FilteredComplex knn_filtration(const PointCloud& cloud, int max_dim, std::optional<int> k_cap = std::nullopt);

/// Euclidean Cech filtration: a simplex enters at the radius of the minimum
/// enclosing ball of its vertices. Ambient dimension must be at most 3. The
/// default cap is sqrt(2) times the VR default so that no simplex whose edges
/// are all retained is lost.
FilteredComplex cech_filtration_euclidean(const PointCloud& cloud, int max_dim, std::optional<double> cap = std::nullopt);

/// Radius of the smallest ball containing the given points (row-major, dim m).
double minimum_enclosing_radius(std::span<const double> coords, std::size_t ambient_dim);

/// Face-closed, monotone, duplicate-free, vertices in range.
bool validate_filtration(const FilteredComplex& complex);

}  // namespace dvr
