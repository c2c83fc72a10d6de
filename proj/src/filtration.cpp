#include "dvr/filtration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace dvr {

std::string_view to_string(FiltrationFamily family) {
    switch (family) {
        case FiltrationFamily::vr: return "vr";
        case FiltrationFamily::dvr: return "dvr";
        case FiltrationFamily::wvr: return "wvr";
        case FiltrationFamily::knn: return "knn";
        case FiltrationFamily::cech: return "cech";
    }
    return "unknown";
}

FiltrationFamily parse_filtration_family(std::string_view name) {
    if (name == "vr") return FiltrationFamily::vr;
    if (name == "dvr") return FiltrationFamily::dvr;
    if (name == "wvr") return FiltrationFamily::wvr;
    if (name == "knn") return FiltrationFamily::knn;
    if (name == "cech") return FiltrationFamily::cech;
    throw std::invalid_argument("unknown filtration family: " + std::string(name));
}

double FlagFiltration::largest_edge() const {
    double best = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (has_edge(i, j)) best = std::max(best, edge_values(i, j));
    return best;
}

double default_cap(const DistanceMatrix& edge_values) {
    double best = -1.0;
    for (std::size_t i = 0; i < edge_values.size(); ++i)
        for (std::size_t j = i + 1; j < edge_values.size(); ++j)
            if (std::isfinite(edge_values(i, j))) best = std::max(best, edge_values(i, j));
    if (best < 0.0) return kInfinity;
    if (best == 0.0) return 1.0;
    return 1.05 * best;
}

double resolve_cap(const DistanceMatrix& edge_values, std::optional<double> cap) {
    if (!cap) return default_cap(edge_values);
    if (!(*cap > 0.0)) throw std::invalid_argument("filtration cap must be positive");
    return *cap;
}

namespace {

FlagFiltration make_flag(DistanceMatrix edges, double vertex_value, std::optional<double> cap) {
    FlagFiltration flag;
    flag.vertex_values.assign(edges.size(), vertex_value);
    flag.cap = resolve_cap(edges, cap);
    flag.edge_values = std::move(edges);
    return flag;
}

}  // namespace

FlagFiltration vr_flag(const DistanceMatrix& distances, std::optional<double> cap) {
    DistanceMatrix half(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i)
        for (std::size_t j = i + 1; j < distances.size(); ++j) {
            const double d = distances(i, j);
            if (d < 0.0 || std::isnan(d)) throw std::invalid_argument("vr_flag: distances must be nonnegative");
            half.set(i, j, d / 2.0);
        }
    return make_flag(std::move(half), 0.0, cap);
}

std::vector<double> dvr_densities(const PointCloud& cloud, const DvrOptions& options) {
    if (options.use_oracle_density && cloud.oracle_density()) return *cloud.oracle_density();
    return estimate_density_all(cloud, Kernel(options.kernel, options.intrinsic_dim)).values;
}

DistanceMatrix dvr_distances(const PointCloud& cloud, const DvrOptions& options) {
    const auto density = dvr_densities(cloud, options);
    const auto graph = build_knn_graph(cloud, options.k, density, options.intrinsic_dim, options.alpha);
    return estimated_distances(graph);
}

FlagFiltration dvr_flag(const PointCloud& cloud, const DvrOptions& options, std::optional<double> cap) {
    return vr_flag(dvr_distances(cloud, options), cap);
}

FlagFiltration weighted_vr_flag(const PointCloud& cloud, std::span<const double> density, int intrinsic_dim,
                                std::optional<double> cap, std::optional<double> alpha_override) {
    const std::size_t n = cloud.size();
    if (density.size() != n) throw std::invalid_argument("weighted_vr_flag: one density value per point required");
    if (intrinsic_dim < 1) throw std::invalid_argument("weighted_vr_flag: dimension must be >= 1");
    const double a = alpha_override ? *alpha_override : alpha(n, intrinsic_dim);
    std::vector<double> slope(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(density[i] > 0.0)) throw std::invalid_argument("weighted_vr_flag: densities must be positive");
        slope[i] = std::pow(a * density[i], -1.0 / intrinsic_dim);
    }
    DistanceMatrix entry(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) entry.set(i, j, cloud.distance(i, j) / (slope[i] + slope[j]));
    return make_flag(std::move(entry), 0.0, cap);
}

FlagFiltration knn_flag(const PointCloud& cloud, std::optional<int> k_cap) {
    const std::size_t n = cloud.size();
    if (k_cap && (*k_cap < 1 || static_cast<std::size_t>(*k_cap) >= n))
        throw std::invalid_argument("knn_flag: need 1 <= k_cap < N");
    const auto dist = DistanceMatrix::euclidean(cloud);
    // rank[i][j]: number of points other than i strictly closer to i than j is, plus one.
    std::vector<std::vector<double>> sorted(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sorted[i].push_back(dist(i, j));
        std::sort(sorted[i].begin(), sorted[i].end());
    }
    auto rank = [&](std::size_t i, std::size_t j) {
        const auto it = std::lower_bound(sorted[i].begin(), sorted[i].end(), dist(i, j));
        return static_cast<double>(it - sorted[i].begin()) + 1.0;
    };
    DistanceMatrix entry(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) entry.set(i, j, std::min(rank(i, j), rank(j, i)));
    FlagFiltration flag;
    flag.vertex_values.assign(n, 1.0);
    flag.cap = k_cap ? static_cast<double>(*k_cap) : kInfinity;
    flag.edge_values = std::move(entry);
    return flag;
}

namespace {

void expand_from(const FlagFiltration& flag, std::vector<Vertex>& current, double value,
                 const std::vector<Vertex>& candidates, int max_vertices, std::vector<Simplex>& out) {
    out.push_back({current, value});
    if (static_cast<int>(current.size()) >= max_vertices) return;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const Vertex v = candidates[c];
        double next_value = std::max(value, flag.vertex_values[v]);
        for (Vertex u : current) next_value = std::max(next_value, flag.edge_values(u, v));
        if (next_value > flag.cap) continue;
        std::vector<Vertex> next_candidates;
        for (std::size_t d = c + 1; d < candidates.size(); ++d)
            if (flag.has_edge(v, candidates[d])) next_candidates.push_back(candidates[d]);
        current.push_back(v);
        expand_from(flag, current, next_value, next_candidates, max_vertices, out);
        current.pop_back();
    }
}

bool canonical_less(const Simplex& a, const Simplex& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

}  // namespace

FilteredComplex expand(const FlagFiltration& flag, int max_dim) {
    if (max_dim < 0) throw std::invalid_argument("expand: max_dim must be >= 0");
    const std::size_t n = flag.size();
    FilteredComplex out;
    out.num_vertices = n;
    out.max_dim = max_dim;
    std::vector<Vertex> current;
    for (std::size_t v = 0; v < n; ++v) {
        if (flag.vertex_values[v] > flag.cap) continue;
        std::vector<Vertex> upper;
        for (std::size_t u = v + 1; u < n; ++u)
            if (flag.has_edge(v, u) && flag.vertex_values[u] <= flag.cap) upper.push_back(static_cast<Vertex>(u));
        current.assign(1, static_cast<Vertex>(v));
        expand_from(flag, current, flag.vertex_values[v], upper, max_dim + 2, out.simplices);
    }
    std::sort(out.simplices.begin(), out.simplices.end(), canonical_less);
    return out;
}

FilteredComplex vr_filtration(const DistanceMatrix& distances, int max_dim, std::optional<double> cap) {
    return expand(vr_flag(distances, cap), max_dim);
}

FilteredComplex dvr_filtration(const PointCloud& cloud, const DvrOptions& options, int max_dim,
                               std::optional<double> cap) {
    return expand(dvr_flag(cloud, options, cap), max_dim);
}

FilteredComplex weighted_vr_filtration(const PointCloud& cloud, std::span<const double> density, int intrinsic_dim,
                                       int max_dim, std::optional<double> cap, std::optional<double> alpha_override) {
    return expand(weighted_vr_flag(cloud, density, intrinsic_dim, cap, alpha_override), max_dim);
}

FilteredComplex knn_filtration(const PointCloud& cloud, int max_dim, std::optional<int> k_cap) {
    return expand(knn_flag(cloud, k_cap), max_dim);
}

namespace {

// Center of the smallest sphere through the given points, lying in their
// affine hull. Returns false when the points are affinely dependent.
bool circumcenter(const std::vector<const double*>& pts, std::size_t m, std::vector<double>& center) {
    const std::size_t s = pts.size() - 1;
    center.assign(pts[0], pts[0] + m);
    if (s == 0) return true;
    // Gram system G lambda = b with G_ij = (p_i - p_0).(p_j - p_0), b_i = |p_i - p_0|^2 / 2.
    std::vector<double> g(s * (s + 1), 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < m; ++c) dot += (pts[i + 1][c] - pts[0][c]) * (pts[j + 1][c] - pts[0][c]);
            g[i * (s + 1) + j] = dot;
        }
        g[i * (s + 1) + s] = 0.5 * g[i * (s + 1) + i];
        scale = std::max(scale, g[i * (s + 1) + i]);
    }
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < s; ++r)
            if (std::abs(g[r * (s + 1) + col]) > std::abs(g[piv * (s + 1) + col])) piv = r;
        if (std::abs(g[piv * (s + 1) + col]) <= 1e-12 * scale) return false;
        if (piv != col)
            for (std::size_t c = 0; c <= s; ++c) std::swap(g[piv * (s + 1) + c], g[col * (s + 1) + c]);
        for (std::size_t r = 0; r < s; ++r) {
            if (r == col) continue;
            const double f = g[r * (s + 1) + col] / g[col * (s + 1) + col];
            for (std::size_t c = col; c <= s; ++c) g[r * (s + 1) + c] -= f * g[col * (s + 1) + c];
        }
    }
    for (std::size_t i = 0; i < s; ++i) {
        const double lambda = g[i * (s + 1) + s] / g[i * (s + 1) + i];
        for (std::size_t c = 0; c < m; ++c) center[c] += lambda * (pts[i + 1][c] - pts[0][c]);
    }
    return true;
}

}  // namespace

double minimum_enclosing_radius(std::span<const double> coords, std::size_t ambient_dim) {
    if (ambient_dim == 0 || coords.size() % ambient_dim != 0)
        throw std::invalid_argument("minimum_enclosing_radius: bad coordinate layout");
    const std::size_t count = coords.size() / ambient_dim;
    if (count == 0) throw std::invalid_argument("minimum_enclosing_radius: no points");
    if (count > 16) throw std::invalid_argument("minimum_enclosing_radius: too many points for the exact solver");
    const std::size_t max_support = std::min(count, ambient_dim + 1);
    auto dist = [&](const double* a, const double* b) {
        double s = 0.0;
        for (std::size_t c = 0; c < ambient_dim; ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
        return std::sqrt(s);
    };
    double best = kInfinity;
    std::vector<const double*> support;
    std::vector<double> center;
    // The optimal ball is the circumball of some affinely independent support
    // set of at most m+1 points that contains every point.
    for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
        const auto bits = static_cast<std::size_t>(std::popcount(mask));
        if (bits > max_support) continue;
        support.clear();
        for (std::size_t i = 0; i < count; ++i)
            if (mask & (1u << i)) support.push_back(coords.data() + i * ambient_dim);
        if (!circumcenter(support, ambient_dim, center)) continue;
        double radius = 0.0;
        for (const double* p : support) radius = std::max(radius, dist(center.data(), p));
        if (radius >= best) continue;
        bool contains = true;
        for (std::size_t i = 0; i < count && contains; ++i)
            contains = dist(center.data(), coords.data() + i * ambient_dim) <= radius * (1.0 + 1e-12) + 1e-300;
        if (contains) best = radius;
    }
    return best;
}

FilteredComplex cech_filtration_euclidean(const PointCloud& cloud, int max_dim, std::optional<double> cap) {
    const std::size_t m = cloud.ambient_dim();
    if (m > 3) throw std::invalid_argument("cech_filtration_euclidean: ambient dimension must be <= 3");
    if (max_dim < 0 || static_cast<std::size_t>(max_dim) > m)
        throw std::invalid_argument("cech_filtration_euclidean: need 0 <= max_dim <= ambient dimension");
    const auto euclid = DistanceMatrix::euclidean(cloud);
    // Every Cech simplex is a clique of the VR 1-skeleton. A ball around k
    // points can be wider than half their diameter (by at most sqrt 2, from
    // the Vietoris-Rips lemma), so the default cap is widened accordingly.
    auto flag = vr_flag(euclid, cap);
    if (!cap) flag.cap *= std::sqrt(2.0);
    auto candidates = expand(flag, max_dim);

    std::map<std::vector<Vertex>, double> value_of;
    std::vector<double> coords;
    FilteredComplex out;
    out.num_vertices = cloud.size();
    out.max_dim = max_dim;
    for (auto& s : candidates.simplices) {  // sorted by dimension
        if (s.vertices.size() >= 3) {
            coords.clear();
            for (Vertex v : s.vertices) {
                const auto p = cloud.point(v);
                coords.insert(coords.end(), p.begin(), p.end());
            }
            double value = minimum_enclosing_radius(coords, m);
            std::vector<Vertex> face;
            for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
                face = s.vertices;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                value = std::max(value, value_of.at(face));
            }
            s.value = value;
        }
        value_of[s.vertices] = s.value;
        if (s.value <= flag.cap) out.simplices.push_back(s);
    }
    return out;
}

bool validate_filtration(const FilteredComplex& complex) {
    std::map<std::vector<Vertex>, double> value_of;
    for (const auto& s : complex.simplices) {
        if (s.vertices.empty() || std::isnan(s.value) || s.value < 0.0) return false;
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            if (s.vertices[i] >= complex.num_vertices) return false;
            if (i > 0 && s.vertices[i - 1] >= s.vertices[i]) return false;
        }
        if (!value_of.emplace(s.vertices, s.value).second) return false;
    }
    std::vector<Vertex> face;
    for (const auto& s : complex.simplices) {
        if (s.vertices.size() < 2) continue;
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
            face = s.vertices;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            const auto it = value_of.find(face);
            if (it == value_of.end() || it->second > s.value) return false;
        }
    }
    return true;
}

}  // namespace dvr
