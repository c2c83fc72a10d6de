#pragma once

#include <cmath>
#include <vector>

#include "dvr/persistence.hpp"
#include "dvr/point_cloud.hpp"
#include "dvr/rng.hpp"

namespace testing {

inline dvr::PointCloud random_cloud(dvr::Rng& rng, std::size_t n, std::size_t dim, double lo = 0.0, double hi = 1.0) {
    std::vector<double> coords(n * dim);
    for (auto& c : coords) c = rng.uniform(lo, hi);
    return dvr::PointCloud(dim, std::move(coords));
}

inline dvr::PointCloud cloud_of(std::size_t dim, std::vector<double> coords) {
    return dvr::PointCloud(dim, std::move(coords));
}

// Number of diagram points in `dim` alive at level r (birth <= r < death).
inline std::size_t alive_at(const dvr::PersistenceDiagram& dgm, int dim, double r) {
    std::size_t count = 0;
    for (const auto& p : dgm.points)
        if (p.dim == dim && p.birth <= r && r < p.death) ++count;
    return count;
}

inline bool same_diagram(const dvr::PersistenceDiagram& a, const dvr::PersistenceDiagram& b, double tol = 1e-12) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const auto& p = a.points[i];
        const auto& q = b.points[i];
        if (p.dim != q.dim || std::abs(p.birth - q.birth) > tol) return false;
        if (p.essential() != q.essential()) return false;
        if (!p.essential() && std::abs(p.death - q.death) > tol) return false;
    }
    return true;
}

}  // namespace testing
