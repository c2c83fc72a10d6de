#include "dvr/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace dvr {

namespace detail {

std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adjacency, std::size_t num_right) {
    constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
    constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
    const std::size_t num_left = adjacency.size();
    std::vector<std::size_t> match_left(num_left, kFree), match_right(num_right, kFree), layer(num_left);

    auto bfs = [&] {
        std::queue<std::size_t> q;
        bool found = false;
        for (std::size_t u = 0; u < num_left; ++u) {
            if (match_left[u] == kFree) {
                layer[u] = 0;
                q.push(u);
            } else {
                layer[u] = kUnreached;
            }
        }
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t v : adjacency[u]) {
                const std::size_t w = match_right[v];
                if (w == kFree) {
                    found = true;
                } else if (layer[w] == kUnreached) {
                    layer[w] = layer[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };

    // Iterative DFS along layered edges.
    std::vector<std::size_t> next_edge(num_left);
    std::vector<std::size_t> stack;
    auto augment = [&](std::size_t root) {
        stack.assign(1, root);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            if (next_edge[u] == adjacency[u].size()) {
                layer[u] = kUnreached;  // dead end
                stack.pop_back();
                continue;
            }
            const std::size_t v = adjacency[u][next_edge[u]++];
            const std::size_t w = match_right[v];
            if (w == kFree) {
                // Flip the path recorded on the stack.
                std::size_t right = v;
                for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                    const std::size_t left = *it;
                    const std::size_t prev = match_left[left];
                    match_left[left] = right;
                    match_right[right] = left;
                    right = prev;
                }
                return true;
            }
            if (layer[w] != kUnreached && layer[w] == layer[u] + 1) stack.push_back(w);
        }
        return false;
    };

    std::size_t size = 0;
    while (bfs()) {
        std::fill(next_edge.begin(), next_edge.end(), 0);
        for (std::size_t u = 0; u < num_left; ++u)
            if (match_left[u] == kFree && augment(u)) ++size;
    }
    return size;
}

}  // namespace detail

namespace {

using Point = std::pair<double, double>;

double linf(const Point& a, const Point& b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double half_persistence(const Point& p) { return 0.5 * (p.second - p.first); }

// Smallest candidate threshold for which the threshold graph has a perfect
// matching. `feasible` must be monotone in the threshold.
template <class Feasible>
double smallest_feasible(std::vector<double> candidates, Feasible feasible) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::size_t lo = 0, hi = candidates.size() - 1;  // candidates[hi] is always feasible
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(candidates[mid])) hi = mid;
        else lo = mid + 1;
    }
    return candidates[lo];
}

}  // namespace

double bottleneck_finite(const std::vector<Point>& a, const std::vector<Point>& b) {
    const std::size_t na = a.size(), nb = b.size();
    if (na + nb == 0) return 0.0;

    std::vector<double> candidates{0.0};
    candidates.reserve(na * nb + na + nb + 1);
    for (const auto& p : a) candidates.push_back(half_persistence(p));
    for (const auto& q : b) candidates.push_back(half_persistence(q));
    for (const auto& p : a)
        for (const auto& q : b) candidates.push_back(linf(p, q));

    // Left: a_0..a_{na-1}, then diagonal copies of b. Right: b_0..b_{nb-1}, then diagonal copies of a.
    std::vector<std::vector<std::size_t>> adjacency(na + nb);
    auto feasible = [&](double t) {
        for (std::size_t i = 0; i < na; ++i) {
            auto& row = adjacency[i];
            row.clear();
            for (std::size_t j = 0; j < nb; ++j)
                if (linf(a[i], b[j]) <= t) row.push_back(j);
            if (half_persistence(a[i]) <= t) row.push_back(nb + i);
        }
        for (std::size_t j = 0; j < nb; ++j) {
            auto& row = adjacency[na + j];
            row.clear();
            if (half_persistence(b[j]) <= t) row.push_back(j);
            for (std::size_t i = 0; i < na; ++i) row.push_back(nb + i);
        }
        return detail::max_bipartite_matching(adjacency, na + nb) == na + nb;
    };
    return smallest_feasible(std::move(candidates), feasible);
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("bottleneck: tolerance must be positive");
    std::vector<Point> fa, fb;
    std::vector<double> ea, eb;
    auto split = [dim](const PersistenceDiagram& d, std::vector<Point>& finite, std::vector<double>& essential) {
        for (const auto& p : d.points) {
            if (p.dim != dim) continue;
            if (p.essential()) essential.push_back(p.birth);
            else finite.emplace_back(p.birth, p.death);
        }
    };
    split(a, fa, ea);
    split(b, fb, eb);
    if (ea.size() != eb.size()) return kInfinity;

    // On a line, sorted order is an optimal bottleneck assignment.
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    double essential = 0.0;
    for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));
    return std::max(essential, bottleneck_finite(fa, fb));
}

double wasserstein_inf_pointcloud(const PointCloud& x, const PointCloud& y) {
    if (x.size() != y.size()) throw std::invalid_argument("wasserstein_inf_pointcloud: clouds differ in size");
    const std::size_t n = x.size();
    if (n == 0) return 0.0;
    if (x.ambient_dim() != y.ambient_dim())
        throw std::invalid_argument("wasserstein_inf_pointcloud: clouds differ in dimension");

    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = x.point(i);
        for (std::size_t j = 0; j < n; ++j) {
            const auto q = y.point(j);
            double s = 0.0;
            for (std::size_t c = 0; c < p.size(); ++c) s += (p[c] - q[c]) * (p[c] - q[c]);
            cost[i * n + j] = std::sqrt(s);
        }
    }
    std::vector<std::vector<std::size_t>> adjacency(n);
    auto feasible = [&](double t) {
        for (std::size_t i = 0; i < n; ++i) {
            adjacency[i].clear();
            for (std::size_t j = 0; j < n; ++j)
                if (cost[i * n + j] <= t) adjacency[i].push_back(j);
        }
        return detail::max_bipartite_matching(adjacency, n) == n;
    };
    return smallest_feasible(cost, feasible);
}

}  // namespace dvr
