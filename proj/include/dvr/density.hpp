#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dvr/point_cloud.hpp"

namespace dvr {

enum class KernelFamily { biweight, epanechnikov, triweight };

std::string_view to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

/// Compactly supported radial kernel K_n(x) = K(x) / (s_{n-1} * int_0^1 K(r) r^{n-1} dr),
/// where K is the one-dimensional profile of the family (without its 1-d constant).
class Kernel {
public:
    Kernel(KernelFamily family, int dimension);

    KernelFamily family() const { return family_; }
    int dimension() const { return dimension_; }
    double normalizer() const { return normalizer_; }

    /// Profile value without normalization: (1-x^2)^p on (-1, 1), else 0.
    double profile(double x) const;
    double operator()(double x) const { return normalizer_ * profile(x); }

private:
    KernelFamily family_;
    int dimension_;
    double normalizer_;
};

/// Surface area of the unit (n-1)-sphere in R^n.
double unit_sphere_area(int n);
/// Volume of the unit n-ball.
double unit_ball_volume(int n);

double kernel_eval(const Kernel& kernel, double x);

/// Scott's rule h_N = N^{-1/(n+4)}.
double scotts_bandwidth(std::size_t num_points, int dim);

struct DensityEstimate {
    std::vector<double> values;
    double bandwidth = 0.0;
    KernelFamily family = KernelFamily::biweight;
    int dimension = 1;
};

/// (1/N) sum_x h^{-n} K(|query - x| / h), ambient Euclidean distance, query's own term included.
double estimate_density(const PointCloud& cloud, const Kernel& kernel, double bandwidth,
                        std::span<const double> query);

/// Density at every cloud point with Scott's bandwidth. When the cloud carries
/// per-point intrinsic dimensions, each point uses its own kernel and bandwidth.
DensityEstimate estimate_density_all(const PointCloud& cloud, const Kernel& kernel);

}  // namespace dvr
