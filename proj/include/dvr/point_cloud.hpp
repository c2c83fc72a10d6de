#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dvr {

/// Ordered points in R^m stored row-major, with optional per-point oracle
/// density and optional per-point intrinsic dimension.
class PointCloud {
public:
    PointCloud() = default;

    PointCloud(std::size_t ambient_dim, std::vector<double> coords)
        : dim_(ambient_dim), coords_(std::move(coords)) {
        if (dim_ == 0) throw std::invalid_argument("PointCloud: ambient dimension must be positive");
        if (coords_.size() % dim_ != 0)
            throw std::invalid_argument("PointCloud: coordinate count is not a multiple of the dimension");
        for (double c : coords_)
            if (!std::isfinite(c)) throw std::invalid_argument("PointCloud: non-finite coordinate");
    }

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t ambient_dim() const { return dim_; }
    bool empty() const { return size() == 0; }

    std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    const std::vector<double>& coords() const { return coords_; }

    double distance(std::size_t i, std::size_t j) const {
        double s = 0.0;
        const double* a = coords_.data() + i * dim_;
        const double* b = coords_.data() + j * dim_;
        for (std::size_t c = 0; c < dim_; ++c) {
            const double t = a[c] - b[c];
            s += t * t;
        }
        return std::sqrt(s);
    }

    void push_back(std::span<const double> p) {
        if (dim_ == 0) dim_ = p.size();
        if (p.size() != dim_) throw std::invalid_argument("PointCloud: point has the wrong dimension");
        for (double c : p)
            if (!std::isfinite(c)) throw std::invalid_argument("PointCloud: non-finite coordinate");
        coords_.insert(coords_.end(), p.begin(), p.end());
    }

    const std::optional<std::vector<double>>& oracle_density() const { return density_; }
    void set_oracle_density(std::vector<double> values) {
        if (values.size() != size()) throw std::invalid_argument("PointCloud: one density value per point required");
        for (double v : values)
            if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("PointCloud: oracle density must be positive");
        density_ = std::move(values);
    }
    void clear_oracle_density() { density_.reset(); }

    // Varying-dimension hook: when set, density estimation and edge weights
    // use the local dimension instead of the global one.
    const std::optional<std::vector<int>>& intrinsic_dims() const { return dims_; }
    void set_intrinsic_dims(std::vector<int> dims) {
        if (dims.size() != size()) throw std::invalid_argument("PointCloud: one intrinsic dimension per point required");
        for (int d : dims)
            if (d < 1) throw std::invalid_argument("PointCloud: intrinsic dimension must be positive");
        dims_ = std::move(dims);
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::optional<std::vector<double>> density_;
    std::optional<std::vector<int>> dims_;
};

}  // namespace dvr
