#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dvr/point_cloud.hpp"
#include "dvr/rng.hpp"

namespace dvr {

// Planar samplers. Coordinates come from `rng` in a fixed order so that a
// seed determines the cloud bit for bit (see docs/rng.md).

/// Fair coin picks a circle (radius r1 centred at the origin, or r2 centred
/// at (8, 0)); angle uniform. Oracle density 1/(4 pi R).
PointCloud sample_two_circles(Rng& rng, std::size_t n = 500, double r1 = 1.0, double r2 = 5.0);

/// Cassini oval r^4 - 2 r^2 cos(2 theta) = e^4 - 1 with theta uniform. e > 1.
PointCloud sample_cassini(Rng& rng, std::size_t n = 200, double e = 1.01);

/// Polar radius of the Cassini oval at angle theta.
double cassini_radius(double theta, double e);

/// n_circle uniform points on the unit circle followed by n_outliers uniform in [-1, 1]^2.
PointCloud sample_noisy_circle(Rng& rng, std::size_t n_circle = 200, std::size_t n_outliers = 10);

/// [0,1]^2 with probability 1/6, [1.5,2.5]x[0,1] with probability 5/6; uniform within.
PointCloud sample_two_squares(Rng& rng, std::size_t n = 200);

struct LorenzParams {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 8.0 / 3.0;
};

using State3 = std::array<double, 3>;

State3 lorenz_vector_field(const State3& s, const LorenzParams& params = {});

/// One classical Runge-Kutta step of size h.
State3 rk4_step(const State3& s, double h, const LorenzParams& params = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<State3> states;
};

/// Fixed-step RK4 with 20 substeps per sample; states at t_i = i * dt_sample
/// for i = 0..floor(t_end / dt_sample).
Trajectory integrate_lorenz(const LorenzParams& params = {}, State3 x0 = {1.0, 1.0, 1.0}, double t_end = 50.0,
                            double dt_sample = 0.05);

/// Point i = (s[i], s[i+lag], ..., s[i+(dim-1) lag]).
PointCloud delay_embedding(std::span<const double> series, std::size_t dim = 2, std::size_t lag_steps = 1);

/// The Lorenz experiment cloud: 2-d delay embedding of x(t), first `n` points.
PointCloud lorenz_delay_cloud(std::size_t n = 1000);

/// Names accepted by sample_named: two-circles, cassini, noisy-circle, two-squares, lorenz-delay.
std::vector<std::string_view> dataset_names();

/// Dispatch by name. `n` = 0 selects the dataset's default size; for
/// noisy-circle it sets the circle count. lorenz-delay ignores the seed.
PointCloud sample_named(std::string_view name, std::uint64_t seed, std::size_t n = 0);

}  // namespace dvr
