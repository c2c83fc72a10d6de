#include "dvr/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dvr {

std::string_view to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::biweight: return "biweight";
        case KernelFamily::epanechnikov: return "epanechnikov";
        case KernelFamily::triweight: return "triweight";
    }
    return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
    if (name == "biweight") return KernelFamily::biweight;
    if (name == "epanechnikov") return KernelFamily::epanechnikov;
    if (name == "triweight") return KernelFamily::triweight;
    throw std::invalid_argument("unknown kernel family: " + std::string(name));
}

double unit_sphere_area(int n) {
    const double half = 0.5 * n;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double unit_ball_volume(int n) {
    const double half = 0.5 * n;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

namespace {

// int_0^1 (1 - r^2)^p r^{n-1} dr expanded binomially.
double radial_moment(KernelFamily family, int n) {
    const double d = n;
    switch (family) {
        case KernelFamily::epanechnikov: return 1.0 / d - 1.0 / (d + 2.0);
        case KernelFamily::biweight: return 1.0 / d - 2.0 / (d + 2.0) + 1.0 / (d + 4.0);
        case KernelFamily::triweight: return 1.0 / d - 3.0 / (d + 2.0) + 3.0 / (d + 4.0) - 1.0 / (d + 6.0);
    }
    throw std::logic_error("radial_moment: bad family");
}

}  // namespace

Kernel::Kernel(KernelFamily family, int dimension) : family_(family), dimension_(dimension) {
    if (dimension < 1) throw std::invalid_argument("Kernel: dimension must be >= 1");
    normalizer_ = 1.0 / (unit_sphere_area(dimension) * radial_moment(family, dimension));
}

double Kernel::profile(double x) const {
    if (!(std::abs(x) < 1.0)) return 0.0;
    const double u = 1.0 - x * x;
    switch (family_) {
        case KernelFamily::epanechnikov: return u;
        case KernelFamily::biweight: return u * u;
        case KernelFamily::triweight: return u * u * u;
    }
    return 0.0;
}

double kernel_eval(const Kernel& kernel, double x) { return kernel(x); }

double scotts_bandwidth(std::size_t num_points, int dim) {
    if (num_points < 1) throw std::invalid_argument("scotts_bandwidth: N must be >= 1");
    if (dim < 1) throw std::invalid_argument("scotts_bandwidth: dimension must be >= 1");
    return std::pow(static_cast<double>(num_points), -1.0 / (dim + 4.0));
}

double estimate_density(const PointCloud& cloud, const Kernel& kernel, double bandwidth,
                        std::span<const double> query) {
    if (cloud.empty()) throw std::invalid_argument("estimate_density: empty cloud");
    if (query.size() != cloud.ambient_dim()) throw std::invalid_argument("estimate_density: query dimension mismatch");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("estimate_density: bandwidth must be positive");
    const std::size_t m = cloud.ambient_dim();
    double sum = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        double s = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
            const double t = query[c] - p[c];
            s += t * t;
        }
        sum += kernel(std::sqrt(s) / bandwidth);
    }
    return sum / (static_cast<double>(cloud.size()) * std::pow(bandwidth, kernel.dimension()));
}

DensityEstimate estimate_density_all(const PointCloud& cloud, const Kernel& kernel) {
    if (cloud.empty()) throw std::invalid_argument("estimate_density_all: empty cloud");
    DensityEstimate out;
    out.family = kernel.family();
    out.dimension = kernel.dimension();
    out.bandwidth = scotts_bandwidth(cloud.size(), kernel.dimension());
    out.values.resize(cloud.size());
    const auto& dims = cloud.intrinsic_dims();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (dims && (*dims)[i] != kernel.dimension()) {
            const Kernel local(kernel.family(), (*dims)[i]);
            out.values[i] = estimate_density(cloud, local, scotts_bandwidth(cloud.size(), (*dims)[i]), cloud.point(i));
        } else {
            out.values[i] = estimate_density(cloud, kernel, out.bandwidth, cloud.point(i));
        }
    }
    return out;
}

}  // namespace dvr
