#include "dvr/scaled_metric.hpp"

#include <algorithm>
#include <tuple>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "dvr/density.hpp"
#include "dvr/detail/union_find.hpp"
#include "dvr/errors.hpp"

namespace dvr {

double alpha(std::size_t num_points, double dim) {
    if (num_points < 1) throw std::invalid_argument("alpha: N must be >= 1");
    if (num_points == 1) return 1.0;
    const double log_n = std::log(static_cast<double>(num_points));
    const double inner = std::max(log_n + (dim - 1.0) * std::log(log_n), kAlphaInnerFloor);
    return static_cast<double>(num_points) / (log_n * inner);
}

double threshold_radius(std::size_t num_points, int dim) {
    if (num_points < 3) throw std::invalid_argument("threshold_radius: N must be >= 3");
    if (dim < 1) throw std::invalid_argument("threshold_radius: dimension must be >= 1");
    const double log_n = std::log(static_cast<double>(num_points));
    const double filling = log_n + (dim - 1) * std::log(log_n);
    const double base = alpha(num_points, dim) * filling / (static_cast<double>(num_points) * unit_ball_volume(dim));
    return std::pow(base, 1.0 / dim);
}

ScaledGraph::ScaledGraph(std::size_t num_vertices, int k, std::vector<WeightedEdge> edges)
    : n_(num_vertices), k_(k), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        if (e.u == e.v) throw std::invalid_argument("ScaledGraph: self-loop");
        if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("ScaledGraph: vertex out of range");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("ScaledGraph: weights must be finite and nonnegative");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    auto dup = std::adjacent_find(edges_.begin(), edges_.end(),
                                  [](const WeightedEdge& a, const WeightedEdge& b) { return a.u == b.u && a.v == b.v; });
    if (dup != edges_.end()) throw std::invalid_argument("ScaledGraph: duplicate edge");

    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adj_[fill[e.u]++] = {e.v, e.weight};
        adj_[fill[e.v]++] = {e.u, e.weight};
    }
}

DistanceMatrix::DistanceMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {
    for (std::size_t i = 0; i < n; ++i) data_[i * n + i] = 0.0;
}

DistanceMatrix DistanceMatrix::euclidean(const PointCloud& cloud) {
    DistanceMatrix d(cloud.size(), 0.0);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j) d.set(i, j, cloud.distance(i, j));
    return d;
}

std::vector<std::vector<std::size_t>> nearest_neighbors(const PointCloud& cloud, std::size_t k) {
    const std::size_t n = cloud.size();
    if (k < 1 || k >= n) throw std::invalid_argument("nearest_neighbors: need 1 <= k < N");
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::pair<double, std::size_t>> buf;
    buf.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        buf.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) buf.emplace_back(cloud.distance(i, j), j);
        std::partial_sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
        out[i].reserve(k);
        for (std::size_t r = 0; r < k; ++r) out[i].push_back(buf[r].second);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> knn_edges(const PointCloud& cloud, std::size_t k) {
    const auto nn = nearest_neighbors(cloud, k);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < nn.size(); ++i)
        for (std::size_t j : nn[i]) edges.emplace_back(std::min(i, j), std::max(i, j));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

namespace {

void reject_coincident(const PointCloud& cloud) {
    // Sorting rows makes duplicates adjacent.
    std::vector<std::size_t> order(cloud.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto row_less = [&](std::size_t a, std::size_t b) {
        const auto pa = cloud.point(a);
        const auto pb = cloud.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), row_less);
    for (std::size_t r = 1; r < order.size(); ++r) {
        if (!row_less(order[r - 1], order[r]))
            throw DegenerateInput("coincident points " + std::to_string(order[r - 1]) + " and " +
                                  std::to_string(order[r]) + " make the kNN graph ambiguous");
    }
}

}  // namespace

ScaledGraph build_knn_graph(const PointCloud& cloud, int k, std::span<const double> density, int dim,
                            std::optional<double> alpha_override) {
    const std::size_t n = cloud.size();
    if (k < 1 || static_cast<std::size_t>(k) >= n) throw std::invalid_argument("build_knn_graph: need 1 <= k < N");
    if (dim < 1) throw std::invalid_argument("build_knn_graph: dimension must be >= 1");
    if (density.size() != n) throw std::invalid_argument("build_knn_graph: one density value per point required");
    if (alpha_override && !(*alpha_override > 0.0)) throw std::invalid_argument("build_knn_graph: alpha must be positive");
    reject_coincident(cloud);

    constexpr double kTiny = std::numeric_limits<double>::min();
    const auto& dims = cloud.intrinsic_dims();
    std::vector<WeightedEdge> edges;
    for (const auto& [u, v] : knn_edges(cloud, static_cast<std::size_t>(k))) {
        const double f = std::max({density[u], density[v], kTiny});
        const double local_dim = dims ? 0.5 * ((*dims)[u] + (*dims)[v]) : static_cast<double>(dim);
        const double a = alpha_override ? *alpha_override : alpha(n, local_dim);
        edges.push_back({u, v, std::pow(a * f, 1.0 / local_dim) * cloud.distance(u, v)});
    }
    return ScaledGraph(n, k, std::move(edges));
}

namespace {

// Dijkstra from one source; fills dist and (optionally) predecessor arrays.
void dijkstra(const ScaledGraph& g, std::size_t source, std::vector<double>& dist, std::vector<std::size_t>* pred) {
    const std::size_t n = g.num_vertices();
    dist.assign(n, kInfinity);
    if (pred) pred->assign(n, n);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (const auto& nb : g.neighbors(v)) {
            const double cand = d + nb.weight;
            if (cand < dist[nb.vertex]) {
                dist[nb.vertex] = cand;
                if (pred) (*pred)[nb.vertex] = v;
                heap.emplace(cand, nb.vertex);
            }
        }
    }
}

}  // namespace

DistanceMatrix estimated_distances(const ScaledGraph& graph) {
    const std::size_t n = graph.num_vertices();
    DistanceMatrix out(n);
    std::vector<double> dist;
    for (std::size_t s = 0; s < n; ++s) {
        dijkstra(graph, s, dist, nullptr);
        // Keep the matrix exactly symmetric: take the value from the smaller source index.
        for (std::size_t t = s + 1; t < n; ++t) out.set(s, t, dist[t]);
    }
    return out;
}

std::vector<std::size_t> shortest_path(const ScaledGraph& graph, std::size_t source, std::size_t target) {
    const std::size_t n = graph.num_vertices();
    if (source >= n || target >= n) throw std::out_of_range("shortest_path: vertex out of range");
    std::vector<double> dist;
    std::vector<std::size_t> pred;
    dijkstra(graph, source, dist, &pred);
    if (!std::isfinite(dist[target])) return {};
    std::vector<std::size_t> path{target};
    while (path.back() != source) path.push_back(pred[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::pair<int, std::size_t>> component_counts(const PointCloud& cloud, int k_max) {
    if (k_max < 1 || static_cast<std::size_t>(k_max) >= cloud.size())
        throw std::invalid_argument("component_counts: need 1 <= k_max < N");
    const auto nn = nearest_neighbors(cloud, static_cast<std::size_t>(k_max));
    detail::UnionFind uf(cloud.size());
    std::vector<std::pair<int, std::size_t>> out;
    for (int k = 1; k <= k_max; ++k) {
        for (std::size_t i = 0; i < nn.size(); ++i) uf.unite(i, nn[i][static_cast<std::size_t>(k - 1)]);
        out.emplace_back(k, uf.components());
    }
    return out;
}

int select_k_from_counts(std::span<const std::pair<int, std::size_t>> counts, int ell) {
    if (ell < 1) throw std::invalid_argument("select_k: ell must be >= 1");
    const auto span = static_cast<std::size_t>(ell);
    for (std::size_t end = span; end < counts.size(); ++end) {
        bool flat = true;
        for (std::size_t i = end - span; i < end && flat; ++i) flat = counts[i].second == counts[end].second;
        if (flat) return counts[end].first;
    }
    throw NumericError("select_k: component count has no plateau of length ell below k_max");
}

int select_k(const PointCloud& cloud, int ell, int k_max) {
    if (ell < 1) throw std::invalid_argument("select_k: ell must be >= 1");
    const auto counts = component_counts(cloud, k_max);
    return select_k_from_counts(counts, ell);
}

}  // namespace dvr
