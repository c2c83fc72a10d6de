#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dvr/point_cloud.hpp"

namespace dvr {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Lower clamp on log N + (n-1) log log N so that alpha stays strictly positive.
inline constexpr double kAlphaInnerFloor = 1e-3;

/// Scaling factor N / (log N (log N + (n-1) log log N)); 1 for N = 1.
double alpha(std::size_t num_points, double dim);

/// Coverage-transition radius (alpha(N) L / (N v_n))^{1/n} with L = log N + (n-1) log log N.
double threshold_radius(std::size_t num_points, int dim);

struct WeightedEdge {
    std::size_t u;
    std::size_t v;
    double weight;
};

/// Undirected weighted graph on point indices. Edges are stored once with
/// u < v, sorted lexicographically.
class ScaledGraph {
public:
    ScaledGraph(std::size_t num_vertices, int k, std::vector<WeightedEdge> edges);

    std::size_t num_vertices() const { return n_; }
    int k() const { return k_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    struct Neighbor {
        std::size_t vertex;
        double weight;
    };
    std::span<const Neighbor> neighbors(std::size_t v) const {
        return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

private:
    std::size_t n_;
    int k_;
    std::vector<WeightedEdge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adj_;
};

/// Dense symmetric matrix of extended nonnegative reals with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n, double fill = kInfinity);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double value) {
        data_[i * n_ + j] = value;
        data_[j * n_ + i] = value;
    }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    static DistanceMatrix euclidean(const PointCloud& cloud);

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// For each point, indices of its k nearest neighbours by Euclidean distance,
/// closest first; ties broken by smaller index.
std::vector<std::vector<std::size_t>> nearest_neighbors(const PointCloud& cloud, std::size_t k);

/// Unweighted kNN edge set (i in kNN(j) or j in kNN(i)), u < v, sorted.
std::vector<std::pair<std::size_t, std::size_t>> knn_edges(const PointCloud& cloud, std::size_t k);

/// Weighted kNN graph with w(i,j) = (alpha(N) max{f_i, f_j})^{1/n} |x_i - x_j|.
/// With per-point intrinsic dimensions on the cloud, n is the mean of the two
/// endpoint dimensions. `alpha_override` replaces alpha(N) when given.
ScaledGraph build_knn_graph(const PointCloud& cloud, int k, std::span<const double> density, int dim,
                            std::optional<double> alpha_override = std::nullopt);

/// All-pairs shortest weighted path lengths; infinity across components.
DistanceMatrix estimated_distances(const ScaledGraph& graph);

/// Vertices of one shortest path from source to target (inclusive), empty if unreachable.
std::vector<std::size_t> shortest_path(const ScaledGraph& graph, std::size_t source, std::size_t target);

/// Connected components of the unweighted kNN graph for k = 1..k_max.
std::vector<std::pair<int, std::size_t>> component_counts(const PointCloud& cloud, int k_max);

/// Smallest k whose component count equals that of every k' in {k-ell, ..., k}.
/// Throws NumericError if no such k <= k_max exists.
int select_k(const PointCloud& cloud, int ell, int k_max);

/// Same rule applied to precomputed counts (index 0 holds k = 1).
int select_k_from_counts(std::span<const std::pair<int, std::size_t>> counts, int ell);

}  // namespace dvr
